#include "recur/video/tensor.hpp"

#include <limits>

#include "recur/error.hpp"

namespace recur {

void validate(const VideoTensor& v) {
    if (v.width == 0 || v.height == 0)
        throw InvalidInput("video tensor: width and height must be at least 1");
    if (v.frames == 0)
        throw InvalidInput("video tensor: at least one frame required");
    if (v.fps_num == 0 || v.fps_den == 0)
        throw InvalidInput("video tensor: frame rate must be positive");
    const std::uint64_t total =
        std::uint64_t(v.width) * std::uint64_t(v.height) * std::uint64_t(v.frames);
    if (total > std::uint64_t(1) << 31)
        throw InvalidInput("video tensor: dimensions overflow supported size");
    if (v.data.size() != total)
        throw InvalidInput("video tensor: data size does not match dimensions");
}

VideoTensor make_tensor(std::uint32_t width, std::uint32_t height, std::uint32_t frames,
                        std::uint32_t fps_num, std::uint32_t fps_den) {
    VideoTensor v;
    v.width = width;
    v.height = height;
    v.frames = frames;
    v.fps_num = fps_num;
    v.fps_den = fps_den;
    const std::uint64_t total =
        std::uint64_t(width) * std::uint64_t(height) * std::uint64_t(frames);
    if (width && height && frames && total <= (std::uint64_t(1) << 31))
        v.data.assign(std::size_t(total), 0.0f);
    validate(v);
    return v;
}

}  // namespace recur
