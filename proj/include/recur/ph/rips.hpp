#pragma once

#include <optional>

#include "recur/metric.hpp"
#include "recur/ph/diagram.hpp"

namespace recur::ph {

struct RipsOptions {
    int max_dim = 1;                  // homology computed in dimensions 0..max_dim, at most 2
    int prime = 3;                    // coefficient field Z/p, p in {2,3,5,7}
    std::optional<double> threshold;  // nullopt: enclosing radius; +inf: full
                                      // filtration (capped at twice the
                                      // enclosing radius); finite: as given
};

// Smallest over points of the largest distance to any other point. Edges
// longer than this cannot change homology below the top dimension.
double enclosing_radius(const DistanceMatrix& dm);

// Vietoris-Rips persistent homology of a finite metric space. The input must
// be symmetric with zero diagonal and nonnegative entries. Zero-persistence
// intervals are omitted.
PersistenceDiagrams rips_persistence(const DistanceMatrix& dm, const RipsOptions& opt);

}  // namespace recur::ph
