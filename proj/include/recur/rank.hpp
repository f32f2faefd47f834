#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace recur::rank {

// Signed pairwise judgment: positive margin means b is ranked above a, and
// the fitted potentials aim for score[b] - score[a] = margin.
struct Preference {
    std::size_t a = 0;
    std::size_t b = 0;
    double margin = 0.0;
};

struct HodgeResult {
    std::vector<double> scores;  // mean zero within each connected component
    double residual = 0.0;       // squared norm of the least-squares residual
    std::vector<int> component;  // component id per node
    int n_components = 1;
    bool disconnected = false;   // warning: scores only comparable within components
};

// Least-squares potential over the comparison graph (n nodes). Requires at
// least one preference; indices must be < n.
HodgeResult hodge_aggregate(const std::vector<Preference>& prefs, std::size_t n);

// Kendall correlation of two score vectors of equal length >= 2; ties are
// broken by index so the result is always in [-1, 1] with identical input
// giving exactly 1 and exactly opposite orders giving -1.
double kendall_tau(const std::vector<double>& a, const std::vector<double>& b);

// Probability that a random positive outscores a random negative, ties
// counting one half. Both sets must be nonempty.
double auroc(const std::vector<double>& positives, const std::vector<double>& negatives);

// Indices sorted by descending score, index ascending on ties.
std::vector<std::size_t> ranking_order(const std::vector<double>& scores);

// CSV rows "a,b,margin".
std::vector<Preference> load_preferences_csv(const std::string& path);
void save_preferences_csv(const std::vector<Preference>& prefs, const std::string& path);

// CSV rows "index,score" in rank order.
void save_ranking_csv(const std::vector<double>& scores, const std::string& path);
// Inverse of save_ranking_csv: every index 0..n-1 must appear exactly once.
std::vector<double> load_ranking_csv(const std::string& path);

}  // namespace recur::rank
