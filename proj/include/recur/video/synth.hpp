#pragma once

#include <cstdint>
#include <string>

#include "recur/video/tensor.hpp"

namespace recur::video {

enum class SynthKind {
    pendulum,          // disk on a rod swinging left-right
    quasi_disks,       // two disks oscillating horizontally at incommensurate rates
    modulated_pulses,  // two stationary bumps with incommensurate amplitude modulation
    harmonic_1d,       // cos(pi t/5) + cos(pi t/15), single pixel
    quasi_1d,          // cos(pi t/5) + cos(t/5), single pixel
    white_noise,       // seeded uniform noise per pixel
};

SynthKind parse_synth_kind(const std::string& name);
std::string to_string(SynthKind kind);

struct SynthSpec {
    SynthKind kind = SynthKind::pendulum;
    std::uint32_t frames = 400;
    // 0 means "kind default": 64x64 for the video kinds, 1x1 for the 1d kinds.
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t fps_num = 30;
    std::uint32_t fps_den = 1;
    double period = 25.0;      // pendulum swing period in frames
    double omega1 = 0.0;       // first angular frequency (rad/frame); 0 = 2*pi/25
    double omega2 = 0.0;       // second angular frequency; 0 = omega1 * pi
    std::uint64_t seed = 0;    // white_noise
};

// Deterministic: equal specs produce identical tensors.
VideoTensor synthesize(const SynthSpec& spec);

}  // namespace recur::video
