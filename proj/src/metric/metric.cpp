#include "recur/metric.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "recur/error.hpp"
#include "recur/simd/kernels.hpp"

namespace recur {

DistanceMatrix make_distance_matrix(std::size_t n) {
    DistanceMatrix dm;
    dm.n = n;
    dm.values.assign(n * n, 0.0);
    return dm;
}

namespace metric {

DistanceMatrix pairwise_sq_dist(const FrameCoords& fc) {
    if (fc.count == 0) throw InvalidInput("pairwise_sq_dist: empty input");
    const auto& kern = simd::active();
    DistanceMatrix dm = make_distance_matrix(fc.count);
    for (std::size_t i = 0; i < fc.count; ++i)
        for (std::size_t j = i + 1; j < fc.count; ++j) {
            double d = kern.sqdist_f64(fc.row(i), fc.row(j), fc.dim);
            dm.at(i, j) = d;
            dm.at(j, i) = d;
        }
    return dm;
}

DistanceMatrix delay_distance(const DistanceMatrix& dsq, int d, OpCount* ops) {
    const std::size_t n = dsq.n;
    if (d < 0) throw InvalidInput("delay_distance: d must be nonnegative");
    if (std::size_t(d) >= n)
        throw InvalidInput("delay_distance: window exceeds available frames");

    const std::size_t m = n - std::size_t(d);
    DistanceMatrix out = make_distance_matrix(m);
    std::uint64_t adds = 0;

    std::vector<double> prefix(n + 1);
    const std::size_t win = std::size_t(d) + 1;
    for (std::size_t g = 1; g < m; ++g) {
        // diagonal at offset g: values dsq(i, i+g) for i in [0, n-g)
        const std::size_t len = n - g;
        prefix[0] = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            prefix[i + 1] = prefix[i] + dsq.at(i, i + g);
            ++adds;
        }
        const std::size_t out_len = m - g;
        for (std::size_t i = 0; i < out_len; ++i) {
            double s = prefix[i + win] - prefix[i];
            ++adds;
            if (s < 0.0) {
                if (s < -1e-9) throw NumericalError("delay_distance: negative window sum");
                s = 0.0;
            }
            double dist = std::sqrt(s);
            out.at(i, i + g) = dist;
            out.at(i + g, i) = dist;
        }
    }
    if (ops) ops->adds = adds;
    return out;
}

DistanceMatrix cloud_distances(const PointCloud& cloud) {
    if (cloud.count == 0) throw InvalidInput("cloud_distances: empty cloud");
    const auto& kern = simd::active();
    DistanceMatrix dm = make_distance_matrix(cloud.count);
    for (std::size_t i = 0; i < cloud.count; ++i)
        for (std::size_t j = i + 1; j < cloud.count; ++j) {
            double d = std::sqrt(kern.sqdist_f64(cloud.row(i), cloud.row(j), cloud.dim));
            dm.at(i, j) = d;
            dm.at(j, i) = d;
        }
    return dm;
}

void write_csv(const DistanceMatrix& dm, std::ostream& out) {
    char buf[40];
    for (std::size_t i = 0; i < dm.n; ++i) {
        for (std::size_t j = 0; j < dm.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", dm.at(i, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

void save_csv(const DistanceMatrix& dm, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    write_csv(dm, out);
}

DistanceMatrix read_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t next = line.find(',', pos);
            std::string tok = line.substr(pos, next == std::string::npos ? next : next - pos);
            try {
                std::size_t used = 0;
                double v = std::stod(tok, &used);
                while (used < tok.size() && std::isspace(unsigned(tok[used]))) ++used;
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.push_back(v);
            } catch (const std::exception&) {
                throw FormatError("distance csv: bad number '" + tok + "'");
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("distance csv: empty file");
    const std::size_t n = rows.size();
    DistanceMatrix dm = make_distance_matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw FormatError("distance csv: matrix is not square");
        for (std::size_t j = 0; j < n; ++j) dm.at(i, j) = rows[i][j];
    }
    return dm;
}

DistanceMatrix load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open: " + path);
    return read_csv(in);
}

}  // namespace metric
}  // namespace recur
