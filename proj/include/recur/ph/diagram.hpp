#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace recur {

// One persistence interval. Essential classes carry death = +infinity.
struct PersistencePair {
    double birth = 0.0;
    double death = 0.0;
    bool finite() const;
};

struct PersistenceDiagrams {
    int max_dim = 1;
    int prime = 3;
    double threshold = 0.0;  // filtration cutoff actually used
    std::array<std::vector<PersistencePair>, 3> dims;

    const std::vector<PersistencePair>& dim(int d) const { return dims[std::size_t(d)]; }
};

namespace ph {

// i-th largest finite lifetime in dimension d (i starts at 1); 0 when the
// diagram has fewer than i finite intervals.
double max_persistence(const PersistenceDiagrams& dgms, int d, int i);

// CSV rows "dim,birth,death" with "inf" for essential deaths.
void write_csv(const PersistenceDiagrams& dgms, std::ostream& out);
void save_csv(const PersistenceDiagrams& dgms, const std::string& path);

}  // namespace ph
}  // namespace recur
