#pragma once

#include <utility>
#include <vector>

#include "recur/metric.hpp"

namespace recur::scores {

enum class LatticeType { square, diamond };

struct LatticeMatch {
    bool found = false;
    LatticeType type = LatticeType::square;
    int spacing = 0;
    double deviation = 0.0;      // mean squared peak offset, in units of spacing^2
    double lattice_hit = 0.0;    // fraction of lattice points matched by a peak
    double peak_hit = 0.0;       // fraction of peaks lying on the lattice
    double score = 0.0;          // (1 + deviation/lattice_hit) / (lattice_hit*peak_hit)^3
};

struct CdResult {
    bool no_lattice = true;  // sorted after every scored result
    double score = 0.0;
    LatticeMatch best;
    std::vector<std::pair<int, int>> peaks;  // autocorrelation peak offsets
};

// Fits square and diamond peak lattices to the peak set within max_offset of
// the origin (origin excluded) over integer spacings >= 2 and keeps the
// lowest score; 1 is a perfect fit, larger is worse. The diamond with
// spacing s is the index-2 sublattice {(a s, b s) : a+b even} of the square.
LatticeMatch best_lattice_match(const std::vector<std::pair<int, int>>& peaks,
                                int max_offset);

// Cutler-Davis style lattice score of a self-similarity matrix: mean-removed
// unbiased 2D autocorrelation over offsets up to n/2, Gaussian-smoothed
// (sigma 1), peaks = strict 5x5 local maxima, then best_lattice_match.
// Requires n >= 16. No detectable peaks or no fittable lattice set the
// no_lattice flag.
CdResult cd_lattice_score(const DistanceMatrix& ssm);

}  // namespace recur::scores
