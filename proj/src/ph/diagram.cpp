#include "recur/ph/diagram.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "recur/error.hpp"

namespace recur {

bool PersistencePair::finite() const {
    return death != std::numeric_limits<double>::infinity();
}

namespace ph {

double max_persistence(const PersistenceDiagrams& dgms, int d, int i) {
    if (d < 0 || d > dgms.max_dim)
        throw InvalidInput("max_persistence: dimension not computed");
    if (i < 1) throw InvalidInput("max_persistence: order must be at least 1");
    std::vector<double> lifetimes;
    for (const auto& p : dgms.dim(d))
        if (p.finite()) lifetimes.push_back(p.death - p.birth);
    if (std::size_t(i) > lifetimes.size()) return 0.0;
    std::nth_element(lifetimes.begin(), lifetimes.begin() + (i - 1), lifetimes.end(),
                     std::greater<double>());
    return lifetimes[std::size_t(i) - 1];
}

void write_csv(const PersistenceDiagrams& dgms, std::ostream& out) {
    out << "dim,birth,death\n";
    char buf[40];
    for (int d = 0; d <= dgms.max_dim; ++d) {
        for (const auto& p : dgms.dim(d)) {
            std::snprintf(buf, sizeof buf, "%.17g", p.birth);
            out << d << ',' << buf << ',';
            if (p.finite()) {
                std::snprintf(buf, sizeof buf, "%.17g", p.death);
                out << buf;
            } else {
                out << "inf";
            }
            out << '\n';
        }
    }
}

void save_csv(const PersistenceDiagrams& dgms, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    write_csv(dgms, out);
}

}  // namespace ph
}  // namespace recur
