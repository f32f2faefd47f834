#pragma once

#include <cstdint>
#include <string>

#include "recur/video/tensor.hpp"

namespace recur::video {

enum class NoiseModel {
    blur,           // motion blur via a seeded random-walk kernel; level = walk extent in cells
    awgn,           // additive white Gaussian noise; level = standard deviation
    frame_corrupt,  // level = fraction of frames replaced, frozen or dropped-as-held
};

NoiseModel parse_noise_model(const std::string& name);
std::string to_string(NoiseModel model);

struct NoiseSpec {
    NoiseModel model = NoiseModel::awgn;
    double level = 0.0;
    std::uint64_t seed = 0;
};

// Returns a corrupted copy; level 0 is the identity for every model.
// Frame count, dimensions and frame rate are always preserved.
VideoTensor apply_noise(const VideoTensor& v, const NoiseSpec& spec);

}  // namespace recur::video
