#include "recur/embed.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "recur/error.hpp"
#include "recur/simd/kernels.hpp"

namespace recur::embed {

VideoTensor dog_filter(const VideoTensor& v, double sigma, int half_width) {
    validate(v);
    if (sigma <= 0.0) throw InvalidInput("dog_filter: sigma must be positive");
    if (half_width < 1) throw InvalidInput("dog_filter: half_width must be at least 1");

    const int hw = half_width;
    std::vector<double> taps(2 * hw + 1);
    double mass = 0.0;
    for (int k = -hw; k <= hw; ++k) {
        taps[k + hw] = -double(k) * std::exp(-double(k) * double(k) / (2.0 * sigma * sigma));
        mass += std::abs(taps[k + hw]);
    }
    for (double& t : taps) t /= mass;

    const auto& kern = simd::active();
    const std::size_t ppf = v.pixels_per_frame();
    const int n = int(v.frames);
    VideoTensor out = v;
    std::vector<double> acc(ppf);
    for (int t = 0; t < n; ++t) {
        std::fill(acc.begin(), acc.end(), 0.0);
        // the center tap is zero and the wings are antisymmetric, so the
        // filter reduces to weighted pairwise frame differences; taking the
        // difference first keeps constant videos at an exact zero
        for (int k = 1; k <= hw; ++k) {
            kern.diff_axpy_f32(acc.data(),
                               v.frame(std::size_t(std::clamp(t - k, 0, n - 1))),
                               v.frame(std::size_t(std::clamp(t + k, 0, n - 1))),
                               taps[std::size_t(k + hw)], ppf);
        }
        float* dst = out.frame(std::size_t(t));
        for (std::size_t i = 0; i < ppf; ++i) dst[i] = float(acc[i]);
    }
    return out;
}

FrameCoords svd_frame_reduce(const VideoTensor& v, double energy) {
    validate(v);
    if (!(energy > 0.0) || energy > 1.0)
        throw InvalidInput("svd_frame_reduce: energy must lie in (0,1]");

    const std::size_t n = v.frames;
    const std::size_t ppf = v.pixels_per_frame();
    const auto& kern = simd::active();

    Eigen::VectorXd sv;       // singular values, descending
    Eigen::MatrixXd basis;    // n x n, columns = right singular vectors
    if (ppf > n) {
        // Gram trick: eigenvectors of A^T A give the frame coordinates
        // without materializing the pixel-by-frame matrix factorization.
        Eigen::MatrixXd gram(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double g = kern.dot_f32(v.frame(i), v.frame(j), ppf);
                gram(Eigen::Index(i), Eigen::Index(j)) = g;
                gram(Eigen::Index(j), Eigen::Index(i)) = g;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        if (eig.info() != Eigen::Success)
            throw NumericalError("svd_frame_reduce: eigendecomposition failed");
        // ascending eigenvalues; flip to descending and clamp round-off negatives
        sv.resize(Eigen::Index(n));
        basis.resize(Eigen::Index(n), Eigen::Index(n));
        for (std::size_t k = 0; k < n; ++k) {
            double lam = std::max(0.0, eig.eigenvalues()(Eigen::Index(n - 1 - k)));
            sv(Eigen::Index(k)) = std::sqrt(lam);
            basis.col(Eigen::Index(k)) = eig.eigenvectors().col(Eigen::Index(n - 1 - k));
        }
    } else {
        Eigen::MatrixXd a(ppf, n);
        for (std::size_t j = 0; j < n; ++j) {
            const float* f = v.frame(j);
            for (std::size_t i = 0; i < ppf; ++i) a(Eigen::Index(i), Eigen::Index(j)) = f[i];
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
        sv = svd.singularValues();
        basis = svd.matrixV();
        if (std::size_t(sv.size()) < n) {
            // pad implicit zero singular values when ppf < n
            Eigen::VectorXd full = Eigen::VectorXd::Zero(Eigen::Index(n));
            full.head(sv.size()) = sv;
            Eigen::MatrixXd fullv = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
            fullv.leftCols(basis.cols()) = basis;
            sv = full;
            basis = fullv;
        }
    }

    double total = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) total += sv(k) * sv(k);

    FrameCoords fc;
    fc.count = n;
    if (total <= 0.0) {
        fc.dim = 1;
        fc.data.assign(n, 0.0);
        fc.basis_energy = 1.0;
        fc.degenerate = true;
        return fc;
    }

    const double floor = sv(0) * 1e-14;
    std::size_t rank = 0;
    double kept = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) <= floor) break;
        kept += sv(k) * sv(k);
        ++rank;
        if (kept >= energy * total - 1e-12 * total) break;
    }
    rank = std::max<std::size_t>(rank, 1);

    fc.dim = rank;
    fc.basis_energy = kept / total;
    fc.data.resize(n * rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < rank; ++k)
            fc.data[i * rank + k] =
                basis(Eigen::Index(i), Eigen::Index(k)) * sv(Eigen::Index(k));
    return fc;
}

PointCloud sliding_window(const FrameCoords& fc, int d, double tau,
                          std::size_t n_points) {
    if (fc.count == 0 || fc.dim == 0)
        throw InvalidInput("sliding_window: empty frame coordinates");
    if (d < 0) throw InvalidInput("sliding_window: d must be nonnegative");
    if (!(tau > 0.0)) throw InvalidInput("sliding_window: tau must be positive");
    if (n_points == 0) throw InvalidInput("sliding_window: need at least one point");

    const double span = double(fc.count - 1);
    const double window = double(d) * tau;
    if (window > span)
        throw InvalidInput("sliding_window: window d*tau exceeds video length");

    PointCloud cloud;
    cloud.count = n_points;
    cloud.dim = std::size_t(d + 1) * fc.dim;
    cloud.data.resize(cloud.count * cloud.dim);
    cloud.times.resize(n_points);

    const double step = n_points > 1 ? (span - window) / double(n_points - 1) : 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double t0 = step * double(i);
        cloud.times[i] = t0;
        double* dst = cloud.row(i);
        for (int j = 0; j <= d; ++j) {
            double s = t0 + double(j) * tau;
            std::size_t lo = std::min(std::size_t(s), fc.count >= 2 ? fc.count - 2 : 0);
            double frac = s - double(lo);
            const double* a = fc.row(lo);
            const double* b = fc.row(std::min(lo + 1, fc.count - 1));
            for (std::size_t k = 0; k < fc.dim; ++k)
                dst[std::size_t(j) * fc.dim + k] = (1.0 - frac) * a[k] + frac * b[k];
        }
    }
    return cloud;
}

void normalize_cloud(PointCloud& cloud) {
    const auto& kern = simd::active();
    for (std::size_t i = 0; i < cloud.count; ++i) {
        double* p = cloud.row(i);
        const double mean = kern.sum_f64(p, cloud.dim) / double(cloud.dim);
        kern.shift_scale_f64(p, cloud.dim, mean, 1.0);
        const double norm = std::sqrt(kern.dot_f64(p, p, cloud.dim));
        if (norm <= 0.0)
            throw NumericalError("normalize_cloud: zero-norm window at time " +
                                 std::to_string(cloud.times[i]));
        kern.shift_scale_f64(p, cloud.dim, 0.0, 1.0 / norm);
    }
    cloud.normalized = true;
}

WindowPlan plan_window(double period_len, int d) {
    if (!(period_len > 0.0)) throw InvalidInput("plan_window: period must be positive");
    if (d < 1) throw InvalidInput("plan_window: d must be at least 1");
    WindowPlan plan;
    plan.tau = period_len / double(d + 1);
    plan.window = period_len * double(d) / double(d + 1);
    plan.harmonics = 1;
    plan.angular_freq = std::numbers::pi / period_len;
    return plan;
}

}  // namespace recur::embed
