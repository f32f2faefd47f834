#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "recur/embed.hpp"

namespace recur {

// Dense symmetric matrix with zero diagonal, stored row-major in full.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

DistanceMatrix make_distance_matrix(std::size_t n);

namespace metric {

struct OpCount {
    std::uint64_t adds = 0;
};

// Squared Euclidean distances between frame coordinate rows. Only one
// triangle is computed; the result is mirrored.
DistanceMatrix pairwise_sq_dist(const FrameCoords& fc);

// Distances between non-interpolated delay windows of length d+1 built from
// squared frame distances: running sums along each diagonal of dsq give
// every window distance with work independent of d. Entries that come out
// slightly negative from cancellation are clamped to zero before the root.
// Output size is (n-d) x (n-d).
DistanceMatrix delay_distance(const DistanceMatrix& dsq, int d, OpCount* ops = nullptr);

// Euclidean distances between cloud points.
DistanceMatrix cloud_distances(const PointCloud& cloud);

// Full row-major matrix, comma separated, one row per line, %.17g.
void write_csv(const DistanceMatrix& dm, std::ostream& out);
void save_csv(const DistanceMatrix& dm, const std::string& path);
DistanceMatrix read_csv(std::istream& in);
DistanceMatrix load_csv(const std::string& path);

}  // namespace metric
}  // namespace recur
