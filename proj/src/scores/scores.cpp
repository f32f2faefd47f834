#include "recur/scores.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "recur/error.hpp"

namespace recur::scores {

namespace {

const double kSqrt3 = std::sqrt(3.0);

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

double periodicity(const PersistenceDiagrams& dgms) {
    if (dgms.max_dim < 1) throw InvalidInput("periodicity score requires H1 diagrams");
    return clamp01(ph::max_persistence(dgms, 1, 1) / kSqrt3);
}

double modified_periodicity(const PersistenceDiagrams& dgms) {
    if (dgms.max_dim < 1)
        throw InvalidInput("modified periodicity score requires H1 diagrams");
    double mp1 = ph::max_persistence(dgms, 1, 1);
    double mp2 = ph::max_persistence(dgms, 1, 2);
    return clamp01((mp1 - mp2) / kSqrt3);
}

double quasiperiodicity(const PersistenceDiagrams& dgms) {
    if (dgms.max_dim < 2)
        throw InvalidInput(
            "quasiperiodicity score requires H2 diagrams: recompute with max_dim >= 2");
    double h1_second = ph::max_persistence(dgms, 1, 2);
    double h2_first = ph::max_persistence(dgms, 2, 1);
    return clamp01(std::sqrt(h1_second * h2_first / 3.0));
}

double frequency_score(const DistanceMatrix& ssm) {
    const std::size_t n = ssm.n;
    if (n < 2) throw InvalidInput("frequency_score: need at least a 2x2 matrix");

    const std::size_t bins = n / 2;  // positive-frequency bins 1..n/2
    if (bins == 0) return 0.0;

    // twiddle tables for the direct transform
    std::vector<double> cos_tab(n), sin_tab(n);
    for (std::size_t i = 0; i < n; ++i) {
        double ang = -2.0 * std::numbers::pi * double(i) / double(n);
        cos_tab[i] = std::cos(ang);
        sin_tab[i] = std::sin(ang);
    }
    std::vector<double> hann(n);
    for (std::size_t t = 0; t < n; ++t)
        hann[t] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * double(t) / double(n - 1)));

    std::vector<double> spectrum(bins, 0.0);
    std::vector<double> y(n);
    for (std::size_t c = 0; c < n; ++c) {
        // linear detrend
        double sy = 0.0, sty = 0.0;
        const double st = double(n - 1) * double(n) / 2.0;
        const double stt = double(n - 1) * double(n) * double(2 * n - 1) / 6.0;
        for (std::size_t t = 0; t < n; ++t) {
            sy += ssm.at(t, c);
            sty += double(t) * ssm.at(t, c);
        }
        const double denom = double(n) * stt - st * st;
        const double slope = denom != 0.0 ? (double(n) * sty - st * sy) / denom : 0.0;
        const double icept = (sy - slope * st) / double(n);
        for (std::size_t t = 0; t < n; ++t)
            y[t] = (ssm.at(t, c) - icept - slope * double(t)) * hann[t];

        for (std::size_t k = 1; k <= bins; ++k) {
            double re = 0.0, im = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                std::size_t idx = (k * t) % n;
                re += y[t] * cos_tab[idx];
                im += y[t] * sin_tab[idx];
            }
            spectrum[k - 1] += re * re + im * im;
        }
    }
    for (double& s : spectrum) s /= double(n);

    double mean = 0.0, peak = 0.0;
    for (double s : spectrum) {
        mean += s;
        peak = std::max(peak, s);
    }
    mean /= double(bins);
    double var = 0.0;
    for (double s : spectrum) var += (s - mean) * (s - mean);
    var /= double(bins);
    if (var <= 0.0) return 0.0;
    return (peak - mean) / std::sqrt(var);
}

}  // namespace recur::scores
