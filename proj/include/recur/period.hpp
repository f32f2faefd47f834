#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "recur/video/tensor.hpp"

namespace recur {

// One-dimensional surrogate signal summarizing frame-to-frame motion.
struct Surrogate1D {
    std::vector<double> samples;
    double bandwidth = 0.0;   // Gaussian kernel bandwidth actually used
    std::size_t k_used = 0;   // nearest-neighbor count actually used
    bool degenerate = false;  // video had no frame-to-frame variation
};

struct PeriodEstimate {
    bool has_period = false;
    double period = 0.0;   // integer lag, in frames
    double clarity = 0.0;  // autocorrelation value at the chosen lag
    std::vector<double> nacf;
};

namespace period {

// Diffusion-map surrogate: frames are filtered by a temporal derivative of
// Gaussian (sigma = deriv_width/2), connected into a symmetrized kNN graph
// with Gaussian weights (bandwidth = the median, over frames, of the distance
// to the k-th neighbor), and the first
// nontrivial eigenvector of the normalized random walk is returned,
// sign-fixed so its first nonzero entry is positive. A disconnected graph is
// retried once with doubled k. Requires at least 8 frames.
Surrogate1D diffusion_1d(const VideoTensor& v, double knn_frac = 0.1,
                         int deriv_width = 10);

// McLeod-style normalized autocorrelation n(t) = 2 r(t) / m(t) for lags
// 0..N-2, where r is the raw autocorrelation of the overlap and m is the
// summed energy of both overlap segments; n(0) is exactly 1 and the curve is
// truncated at the first lag whose overlap has no energy. Requires length 4.
std::vector<double> normalized_autocorr(const std::vector<double>& x);

// Picks the largest local maximum (after a linear 1 -> 0.9 envelope) to the
// right of the first zero crossing. No crossing or no peak yields the
// no-period sentinel with clarity 0. The reported period is always >= 2.
PeriodEstimate estimate_period(const std::vector<double>& nacf);

// "index,value" rows, one per sample.
void save_series_csv(const std::vector<double>& series, const std::string& path);

}  // namespace period
}  // namespace recur
