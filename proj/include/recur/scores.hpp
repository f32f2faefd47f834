#pragma once

#include "recur/metric.hpp"
#include "recur/ph/diagram.hpp"

namespace recur::scores {

// Largest H1 lifetime scaled by the sqrt(3) bound for unit-norm clouds,
// clamped to [0,1]. Requires diagrams with max_dim >= 1.
double periodicity(const PersistenceDiagrams& dgms);

// Difference of the two largest H1 lifetimes, same scaling. A single
// dominant loop scores high; a torus's pair of loops cancels.
double modified_periodicity(const PersistenceDiagrams& dgms);

// Geometric mean of the second H1 lifetime and the largest H2 lifetime,
// scaled by 3. Requires diagrams computed with max_dim >= 2; calling this on
// H1-only diagrams is an error rather than a silent zero.
double quasiperiodicity(const PersistenceDiagrams& dgms);

// Spectral baseline: columns of the self-similarity matrix are detrended,
// Hann-windowed and Fourier-transformed; the averaged periodogram's peak
// height in standard deviations above its mean is returned. Requires n >= 2.
double frequency_score(const DistanceMatrix& ssm);

}  // namespace recur::scores
