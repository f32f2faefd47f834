#pragma once

#include <cstdint>
#include <vector>

namespace recur {

// A video as a stack of grayscale frames. Pixels are stored frame-major,
// each frame row-major, so frame n occupies data[n*W*H .. (n+1)*W*H).
// Frame rate is kept as an exact rational to survive save/load round trips.
struct VideoTensor {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t frames = 0;
    std::uint32_t fps_num = 30;
    std::uint32_t fps_den = 1;
    std::vector<float> data;

    std::size_t pixels_per_frame() const {
        return std::size_t(width) * std::size_t(height);
    }
    const float* frame(std::size_t n) const { return data.data() + n * pixels_per_frame(); }
    float* frame(std::size_t n) { return data.data() + n * pixels_per_frame(); }

    float& at(std::size_t n, std::size_t y, std::size_t x) {
        return data[n * pixels_per_frame() + y * width + x];
    }
    float at(std::size_t n, std::size_t y, std::size_t x) const {
        return data[n * pixels_per_frame() + y * width + x];
    }

    double fps() const { return double(fps_num) / double(fps_den); }
};

// Throws InvalidInput unless dimensions are positive, the frame rate is a
// valid rational and data matches frames*width*height.
void validate(const VideoTensor& v);

// Convenience constructor with validation.
VideoTensor make_tensor(std::uint32_t width, std::uint32_t height, std::uint32_t frames,
                        std::uint32_t fps_num = 30, std::uint32_t fps_den = 1);

}  // namespace recur
