#include "recur/period.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "recur/embed.hpp"
#include "recur/error.hpp"
#include "recur/metric.hpp"

namespace recur::period {

namespace {

struct Graph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // weighted, symmetric
    double bandwidth = 0.0;
    bool connected = false;
};

Graph build_knn_graph(const DistanceMatrix& dm, std::size_t k) {
    const std::size_t n = dm.n;
    std::vector<std::vector<std::size_t>> knn(n);
    // per-frame distance to the k-th neighbor; the median of these sets the
    // kernel scale (robust to exact duplicate frames, which pull a median
    // over all k*n neighbor distances down to zero)
    std::vector<double> kth_dist(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t(0));
        order.erase(order.begin() + std::ptrdiff_t(i));
        std::partial_sort(order.begin(), order.begin() + std::ptrdiff_t(k), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              double da = dm.at(i, a), db = dm.at(i, b);
                              return da != db ? da < db : a < b;
                          });
        order.resize(k);
        knn[i] = order;
        kth_dist[i] = dm.at(i, order.back());
    }

    double bandwidth = 0.0;
    {
        std::vector<double> tmp = kth_dist;
        auto mid = tmp.begin() + std::ptrdiff_t(tmp.size() / 2);
        std::nth_element(tmp.begin(), mid, tmp.end());
        bandwidth = *mid;
    }
    if (bandwidth <= 0.0) {
        double smallest = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j : knn[i]) {
                double d = dm.at(i, j);
                if (d > 0.0 && (smallest == 0.0 || d < smallest)) smallest = d;
            }
        bandwidth = smallest > 0.0 ? smallest : 1.0;
    }

    Graph g;
    g.bandwidth = bandwidth;
    g.adj.assign(n, {});
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    auto add = [&](std::size_t a, std::size_t b) {
        if (seen[a][b]) return;
        seen[a][b] = seen[b][a] = true;
        double w = std::exp(-dm.at(a, b) * dm.at(a, b) / (2.0 * bandwidth * bandwidth));
        g.adj[a].push_back({b, w});
        g.adj[b].push_back({a, w});
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : knn[i])
            if (i != j) add(std::min(i, j), std::max(i, j));

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, w] : g.adj[i]) parent[find(i)] = find(j);
    std::size_t root = find(0);
    g.connected = true;
    for (std::size_t i = 1; i < n; ++i)
        if (find(i) != root) {
            g.connected = false;
            break;
        }
    return g;
}

}  // namespace

Surrogate1D diffusion_1d(const VideoTensor& v, double knn_frac, int deriv_width) {
    validate(v);
    if (v.frames < 8) throw InvalidInput("diffusion_1d: need at least 8 frames");
    if (!(knn_frac > 0.0) || knn_frac > 1.0)
        throw InvalidInput("diffusion_1d: knn_frac must lie in (0,1]");
    if (deriv_width < 1) throw InvalidInput("diffusion_1d: deriv_width must be positive");

    const std::size_t n = v.frames;
    VideoTensor filtered = embed::dog_filter(v, double(deriv_width) / 2.0, deriv_width);

    // frame-to-frame distances on the filtered video
    FrameCoords fc;
    fc.count = n;
    fc.dim = filtered.pixels_per_frame();
    fc.data.resize(n * fc.dim);
    for (std::size_t i = 0; i < n; ++i) {
        const float* f = filtered.frame(i);
        for (std::size_t p = 0; p < fc.dim; ++p) fc.data[i * fc.dim + p] = f[p];
    }
    DistanceMatrix dm = metric::pairwise_sq_dist(fc);
    double maxd = 0.0;
    for (double& val : dm.values) {
        val = std::sqrt(std::max(0.0, val));
        maxd = std::max(maxd, val);
    }

    Surrogate1D out;
    if (maxd == 0.0) {
        // no motion at all: constant surrogate
        out.samples.assign(n, 1.0 / std::sqrt(double(n)));
        out.degenerate = true;
        return out;
    }

    std::size_t k = std::size_t(std::ceil(knn_frac * double(n)));
    k = std::clamp<std::size_t>(k, 1, n - 1);
    Graph g = build_knn_graph(dm, k);
    if (!g.connected) {
        k = std::min(n - 1, 2 * k);
        g = build_knn_graph(dm, k);
        if (!g.connected)
            throw NumericalError("diffusion_1d: frame graph disconnected even after doubling k");
    }

    // symmetric normalization of the kernel, self-loops included
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t i = 0; i < n; ++i) {
        w(Eigen::Index(i), Eigen::Index(i)) = 1.0;
        for (const auto& [j, wij] : g.adj[i]) w(Eigen::Index(i), Eigen::Index(j)) = wij;
    }
    Eigen::VectorXd deg = w.rowwise().sum();
    Eigen::VectorXd dinv = deg.array().rsqrt();
    Eigen::MatrixXd s = dinv.asDiagonal() * w * dinv.asDiagonal();
    // symmetrize away round-off so the eigensolver sees an exact symmetric matrix
    s = 0.5 * (s + s.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    if (eig.info() != Eigen::Success)
        throw NumericalError("diffusion_1d: eigendecomposition failed");

    // second-largest eigenvalue's eigenvector, mapped back through D^{-1/2}
    Eigen::VectorXd phi = eig.eigenvectors().col(Eigen::Index(n - 2));
    Eigen::VectorXd psi = dinv.asDiagonal() * phi;
    psi.normalize();

    double maxabs = psi.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < n; ++i) {
        double val = psi(Eigen::Index(i));
        if (std::abs(val) > 1e-12 * maxabs) {
            if (val < 0.0) psi = -psi;
            break;
        }
    }

    out.samples.assign(psi.data(), psi.data() + n);
    out.bandwidth = g.bandwidth;
    out.k_used = k;
    return out;
}

std::vector<double> normalized_autocorr(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 4) throw InvalidInput("normalized_autocorr: need at least 4 samples");
    std::vector<double> out;
    out.reserve(n - 1);
    for (std::size_t lag = 0; lag + 1 < n; ++lag) {
        if (lag == 0) {
            out.push_back(1.0);
            continue;
        }
        double r = 0.0, m = 0.0;
        for (std::size_t j = 0; j + lag < n; ++j) {
            r += x[j] * x[j + lag];
            m += x[j] * x[j] + x[j + lag] * x[j + lag];
        }
        if (m == 0.0) break;  // no overlap energy left: truncate
        out.push_back(std::clamp(2.0 * r / m, -1.0, 1.0));
    }
    return out;
}

PeriodEstimate estimate_period(const std::vector<double>& nacf) {
    if (nacf.size() < 4) throw InvalidInput("estimate_period: curve too short");
    PeriodEstimate est;
    est.nacf = nacf;

    const std::size_t len = nacf.size();
    std::vector<double> env(len);
    for (std::size_t t = 0; t < len; ++t)
        env[t] = nacf[t] * (1.0 - 0.1 * double(t) / double(len - 1));

    std::size_t cross = 0;
    for (std::size_t t = 1; t < len; ++t)
        if (env[t] <= 0.0) {
            cross = t;
            break;
        }
    if (cross == 0) return est;  // never decorrelates: no period

    std::size_t best = 0;
    for (std::size_t t = cross + 1; t + 1 < len; ++t) {
        if (env[t] >= env[t - 1] && env[t] >= env[t + 1]) {
            if (best == 0 || env[t] > env[best]) best = t;
        }
    }
    if (best == 0) return est;  // monotone tail: no usable peak

    est.has_period = true;
    est.period = double(best);
    est.clarity = nacf[best];
    return est;
}

void save_series_csv(const std::vector<double>& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << "index,value\n";
    char buf[40];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", series[i]);
        out << i << ',' << buf << '\n';
    }
}

}  // namespace recur::period
