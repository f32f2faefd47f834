#include "recur/video/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "recur/error.hpp"

namespace recur::video {

namespace {

constexpr double kPi = std::numbers::pi;

float clamp01(double v) { return float(std::clamp(v, 0.0, 1.0)); }

// Soft-edged disk: 1 inside, ~1.5 px linear falloff at the rim.
double disk(double px, double py, double cx, double cy, double r) {
    double d = std::hypot(px - cx, py - cy);
    return std::clamp((r - d) / 1.5 + 0.5, 0.0, 1.0);
}

// Distance from point p to segment a-b.
double seg_dist(double px, double py, double ax, double ay, double bx, double by) {
    double vx = bx - ax, vy = by - ay;
    double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

VideoTensor render_pendulum(const SynthSpec& s, std::uint32_t w, std::uint32_t h) {
    if (s.period < 2.0) throw InvalidInput("pendulum: period must be at least 2 frames");
    VideoTensor v = make_tensor(w, h, s.frames, s.fps_num, s.fps_den);
    // disk large relative to the swept arc so transit pixels see one pass
    // per period, keeping the fundamental dominant over its harmonics
    const double px = 0.5 * w, py = 0.10 * h;        // pivot
    const double rod = 0.55 * h;
    const double radius = 0.20 * std::min(w, h);
    const double theta_max = 0.4;
    for (std::uint32_t t = 0; t < s.frames; ++t) {
        double theta = theta_max * std::cos(2.0 * kPi * t / s.period);
        double cx = px + rod * std::sin(theta);
        double cy = py + rod * std::cos(theta);
        for (std::uint32_t y = 0; y < h; ++y)
            for (std::uint32_t x = 0; x < w; ++x) {
                double ball = disk(x, y, cx, cy, radius);
                double rd = seg_dist(x, y, px, py, cx, cy);
                double line = 0.6 * std::clamp((1.2 - rd) / 1.5 + 0.5, 0.0, 1.0);
                v.at(t, y, x) = clamp01(std::max(ball, line));
            }
    }
    return v;
}

VideoTensor render_quasi_disks(const SynthSpec& s, std::uint32_t w, std::uint32_t h,
                               double w1, double w2) {
    VideoTensor v = make_tensor(w, h, s.frames, s.fps_num, s.fps_den);
    const double amp = 0.22 * w;
    const double r = 0.14 * std::min(w, h);
    const double inv_r2 = 4.0 / (r * r);
    for (std::uint32_t t = 0; t < s.frames; ++t) {
        double c1x = 0.5 * w + amp * std::cos(w1 * t), c1y = 0.30 * h;
        double c2x = 0.5 * w + amp * std::cos(w2 * t), c2y = 0.70 * h;
        for (std::uint32_t y = 0; y < h; ++y)
            for (std::uint32_t x = 0; x < w; ++x) {
                double d1 = (x - c1x) * (x - c1x) + (y - c1y) * (y - c1y);
                double d2 = (x - c2x) * (x - c2x) + (y - c2y) * (y - c2y);
                v.at(t, y, x) = clamp01(std::exp(-d1 * inv_r2) + std::exp(-d2 * inv_r2));
            }
    }
    return v;
}

VideoTensor render_modulated_pulses(const SynthSpec& s, std::uint32_t w, std::uint32_t h,
                                    double w1, double w2) {
    VideoTensor v = make_tensor(w, h, s.frames, s.fps_num, s.fps_den);
    const double sigma = 0.10 * w;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    const double c1x = 0.28 * w, c2x = 0.72 * w, cy = 0.5 * h;
    for (std::uint32_t t = 0; t < s.frames; ++t) {
        double a1 = std::cos(w1 * t), a2 = std::cos(w2 * t);
        for (std::uint32_t y = 0; y < h; ++y)
            for (std::uint32_t x = 0; x < w; ++x) {
                double b1 = std::exp(-((x - c1x) * (x - c1x) + (y - cy) * (y - cy)) * inv);
                double b2 = std::exp(-((x - c2x) * (x - c2x) + (y - cy) * (y - cy)) * inv);
                v.at(t, y, x) = clamp01(0.5 + 0.45 * (a1 * b1 + a2 * b2));
            }
    }
    return v;
}

VideoTensor render_signal_1d(const SynthSpec& s, std::uint32_t w, std::uint32_t h,
                             double (*f)(double)) {
    VideoTensor v = make_tensor(w, h, s.frames, s.fps_num, s.fps_den);
    const std::size_t ppf = v.pixels_per_frame();
    for (std::uint32_t t = 0; t < s.frames; ++t) {
        float val = float(f(double(t)));
        std::fill_n(v.frame(t), ppf, val);
    }
    return v;
}

double f_harmonic(double t) { return std::cos(kPi * t / 5.0) + std::cos(kPi * t / 15.0); }
double f_quasi(double t) { return std::cos(kPi * t / 5.0) + std::cos(t / 5.0); }

VideoTensor render_white_noise(const SynthSpec& s, std::uint32_t w, std::uint32_t h) {
    VideoTensor v = make_tensor(w, h, s.frames, s.fps_num, s.fps_den);
    std::mt19937_64 rng(s.seed);
    std::uniform_real_distribution<float> uni(0.0f, 1.0f);
    for (auto& px : v.data) px = uni(rng);
    return v;
}

}  // namespace

SynthKind parse_synth_kind(const std::string& name) {
    if (name == "pendulum") return SynthKind::pendulum;
    if (name == "quasi_disks") return SynthKind::quasi_disks;
    if (name == "modulated_pulses") return SynthKind::modulated_pulses;
    if (name == "harmonic_1d") return SynthKind::harmonic_1d;
    if (name == "quasi_1d") return SynthKind::quasi_1d;
    if (name == "white_noise") return SynthKind::white_noise;
    throw InvalidInput("unknown synth kind: " + name);
}

std::string to_string(SynthKind kind) {
    switch (kind) {
        case SynthKind::pendulum: return "pendulum";
        case SynthKind::quasi_disks: return "quasi_disks";
        case SynthKind::modulated_pulses: return "modulated_pulses";
        case SynthKind::harmonic_1d: return "harmonic_1d";
        case SynthKind::quasi_1d: return "quasi_1d";
        case SynthKind::white_noise: return "white_noise";
    }
    throw InvalidInput("unknown synth kind value");
}

VideoTensor synthesize(const SynthSpec& spec) {
    if (spec.frames == 0) throw InvalidInput("synthesize: need at least one frame");
    const bool is_1d =
        spec.kind == SynthKind::harmonic_1d || spec.kind == SynthKind::quasi_1d;
    std::uint32_t w = spec.width ? spec.width : (is_1d ? 1 : 64);
    std::uint32_t h = spec.height ? spec.height : (is_1d ? 1 : 64);
    double w1 = spec.omega1 > 0 ? spec.omega1 : 2.0 * kPi / 25.0;
    double w2 = spec.omega2 > 0 ? spec.omega2 : w1 * kPi;

    switch (spec.kind) {
        case SynthKind::pendulum: return render_pendulum(spec, w, h);
        case SynthKind::quasi_disks: return render_quasi_disks(spec, w, h, w1, w2);
        case SynthKind::modulated_pulses:
            return render_modulated_pulses(spec, w, h, w1, w2);
        case SynthKind::harmonic_1d: return render_signal_1d(spec, w, h, f_harmonic);
        case SynthKind::quasi_1d: return render_signal_1d(spec, w, h, f_quasi);
        case SynthKind::white_noise: return render_white_noise(spec, w, h);
    }
    throw InvalidInput("unknown synth kind value");
}

}  // namespace recur::video
