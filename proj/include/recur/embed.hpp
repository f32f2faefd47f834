#pragma once

#include <cstddef>
#include <vector>

#include "recur/video/tensor.hpp"

namespace recur {

// Frames projected onto an orthogonal basis: row i holds the coordinates of
// frame i. Euclidean distances between rows equal distances between the
// original frames up to the discarded energy.
struct FrameCoords {
    std::size_t count = 0;  // number of frames
    std::size_t dim = 0;    // retained rank
    std::vector<double> data;
    double basis_energy = 1.0;  // fraction of total energy retained
    bool degenerate = false;    // input had no energy at all

    const double* row(std::size_t i) const { return data.data() + i * dim; }
    double* row(std::size_t i) { return data.data() + i * dim; }
};

// Delay-embedded point cloud. Point i stacks d+1 frame-coordinate vectors
// sampled at times[i] + j*tau for j = 0..d (linear interpolation in time).
struct PointCloud {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<double> data;
    std::vector<double> times;
    bool normalized = false;

    const double* row(std::size_t i) const { return data.data() + i * dim; }
    double* row(std::size_t i) { return data.data() + i * dim; }
};

struct WindowPlan {
    double tau = 0.0;           // inter-sample delay
    double window = 0.0;        // total window extent d*tau
    int harmonics = 1;          // embedding tuned for the fundamental only
    double angular_freq = 0.0;  // pi / period, recorded for provenance
};

namespace embed {

// Temporal derivative-of-Gaussian filter along the frame axis, 'same' length,
// edges handled by repeating the first/last frame. Taps are -a*k*exp(-k^2 /
// (2 sigma^2)) for k in [-half_width, half_width], scaled so sum |tap| = 1;
// any constant video is mapped to zero.
VideoTensor dog_filter(const VideoTensor& v, double sigma, int half_width);

// Projects frames onto the smallest set of principal directions holding at
// least `energy` of the total squared-pixel energy (energy in (0,1]; 1 keeps
// full numerical rank). An all-zero video yields a single zero coordinate
// with the degenerate flag set.
FrameCoords svd_frame_reduce(const VideoTensor& v, double energy);

// Evenly spaces n_points window start times over [0, N-1-d*tau].
PointCloud sliding_window(const FrameCoords& fc, int d, double tau,
                          std::size_t n_points);

// Centers each point to mean zero and scales it to unit norm, in place.
// A zero-norm point (constant window) raises NumericalError naming its time.
void normalize_cloud(PointCloud& cloud);

// Window parameters for a fundamental period of `period_len` frames with d+1
// samples per window.
WindowPlan plan_window(double period_len, int d);

}  // namespace embed
}  // namespace recur
