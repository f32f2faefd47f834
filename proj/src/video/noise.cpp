#include "recur/video/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "recur/error.hpp"

namespace recur::video {

namespace {

// Kernel support built from a random walk on the pixel grid: the walk visits
// `extent` cells (with multiplicity) in unit axis-aligned steps; each visit
// deposits equal mass, so the kernel integrates to 1. Extent 1 is a delta.
std::vector<std::pair<std::pair<int, int>, float>> walk_kernel(int extent,
                                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dir(0, 3);
    std::map<std::pair<int, int>, int> visits;
    int x = 0, y = 0;
    visits[{0, 0}] = 1;
    for (int step = 1; step < extent; ++step) {
        switch (dir(rng)) {
            case 0: ++x; break;
            case 1: --x; break;
            case 2: ++y; break;
            case 3: --y; break;
        }
        ++visits[{x, y}];
    }
    std::vector<std::pair<std::pair<int, int>, float>> taps;
    taps.reserve(visits.size());
    const float norm = 1.0f / float(extent);
    for (const auto& [cell, count] : visits)
        taps.push_back({cell, float(count) * norm});
    return taps;
}

VideoTensor blur(const VideoTensor& v, double level, std::uint64_t seed) {
    int extent = int(std::llround(level));
    if (extent <= 1) return v;
    auto taps = walk_kernel(extent, seed);
    VideoTensor out = v;
    const int w = int(v.width), h = int(v.height);
    std::vector<double> acc(v.pixels_per_frame());
    for (std::uint32_t t = 0; t < v.frames; ++t) {
        std::fill(acc.begin(), acc.end(), 0.0);
        const float* src = v.frame(t);
        for (const auto& [off, weight] : taps) {
            for (int y = 0; y < h; ++y) {
                int sy = y + off.second;
                if (sy < 0 || sy >= h) continue;  // zero padding outside the frame
                for (int x = 0; x < w; ++x) {
                    int sx = x + off.first;
                    if (sx < 0 || sx >= w) continue;
                    acc[std::size_t(y) * w + x] += double(weight) * src[std::size_t(sy) * w + sx];
                }
            }
        }
        float* dst = out.frame(t);
        for (std::size_t i = 0; i < acc.size(); ++i) dst[i] = float(acc[i]);
    }
    return out;
}

VideoTensor awgn(const VideoTensor& v, double sigma, std::uint64_t seed) {
    if (sigma == 0.0) return v;
    VideoTensor out = v;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (auto& px : out.data) px = float(double(px) + gauss(rng));
    return out;
}

VideoTensor frame_corrupt(const VideoTensor& v, double fraction, std::uint64_t seed) {
    if (fraction > 1.0)
        throw InvalidInput("frame_corrupt: fraction must be at most 1");
    std::size_t count = std::size_t(std::llround(fraction * double(v.frames)));
    if (count == 0) return v;

    std::mt19937_64 rng(seed);
    // Sample `count` distinct frame indices.
    std::vector<std::uint32_t> idx(v.frames);
    for (std::uint32_t i = 0; i < v.frames; ++i) idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());

    VideoTensor out = v;
    const std::size_t ppf = v.pixels_per_frame();
    std::uniform_real_distribution<float> uni(0.0f, 1.0f);
    std::uniform_int_distribution<int> mode(0, 2);
    for (std::uint32_t f : idx) {
        int m = mode(rng);
        if (m == 0 || f == 0) {
            // replace with a noise frame
            float* dst = out.frame(f);
            for (std::size_t i = 0; i < ppf; ++i) dst[i] = uni(rng);
        } else {
            // freeze, or drop with the previous frame held in its place;
            // either way the frame count stays unchanged
            std::copy_n(out.frame(f - 1), ppf, out.frame(f));
        }
    }
    return out;
}

}  // namespace

NoiseModel parse_noise_model(const std::string& name) {
    if (name == "blur") return NoiseModel::blur;
    if (name == "awgn") return NoiseModel::awgn;
    if (name == "frame_corrupt") return NoiseModel::frame_corrupt;
    throw InvalidInput("unknown noise model: " + name);
}

std::string to_string(NoiseModel model) {
    switch (model) {
        case NoiseModel::blur: return "blur";
        case NoiseModel::awgn: return "awgn";
        case NoiseModel::frame_corrupt: return "frame_corrupt";
    }
    throw InvalidInput("unknown noise model value");
}

VideoTensor apply_noise(const VideoTensor& v, const NoiseSpec& spec) {
    validate(v);
    if (spec.level < 0.0) throw InvalidInput("noise level must be nonnegative");
    switch (spec.model) {
        case NoiseModel::blur: return blur(v, spec.level, spec.seed);
        case NoiseModel::awgn: return awgn(v, spec.level, spec.seed);
        case NoiseModel::frame_corrupt: return frame_corrupt(v, spec.level, spec.seed);
    }
    throw InvalidInput("unknown noise model value");
}

}  // namespace recur::video
