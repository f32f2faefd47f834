#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace testsupport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Simplex {
    std::vector<int> verts;  // ascending
    double diam = 0.0;
    int dim() const { return int(verts.size()) - 1; }
};

bool filtration_less(const Simplex& a, const Simplex& b) {
    if (a.diam != b.diam) return a.diam < b.diam;
    if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
    return a.verts < b.verts;
}

int mod_inverse(int a, int p) {
    for (int x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    return 0;
}

void enumerate(const recur::DistanceMatrix& dm, int max_card, double threshold,
               std::vector<Simplex>& out) {
    int n = int(dm.n);
    std::vector<int> cur;
    // depth-first over ascending vertex tuples, tracking the running diameter
    auto rec = [&](auto&& self, int next, double diam) -> void {
        if (!cur.empty()) out.push_back({cur, diam});
        if (int(cur.size()) == max_card) return;
        for (int v = next; v < n; ++v) {
            double d = diam;
            bool ok = true;
            for (int u : cur) {
                double e = dm.at(std::size_t(u), std::size_t(v));
                if (e > threshold) {
                    ok = false;
                    break;
                }
                d = std::max(d, e);
            }
            if (!ok) continue;
            cur.push_back(v);
            self(self, v + 1, d);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0.0);
}

}  // namespace

std::array<Diagram, 3> naive_rips(const recur::DistanceMatrix& dm, int max_dim,
                                  int prime, double threshold) {
    std::vector<Simplex> simplices;
    enumerate(dm, max_dim + 2, threshold, simplices);
    std::sort(simplices.begin(), simplices.end(), filtration_less);

    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < simplices.size(); ++i) index[simplices[i].verts] = int(i);

    std::size_t m = simplices.size();
    std::vector<std::vector<int>> cols(m);  // dense mod-p columns
    for (std::size_t j = 0; j < m; ++j) {
        const Simplex& s = simplices[j];
        if (s.dim() == 0) continue;
        cols[j].assign(m, 0);
        std::vector<int> face(s.verts.begin() + 1, s.verts.end());
        for (std::size_t i = 0; i <= face.size(); ++i) {
            int coeff = (i % 2 == 0) ? 1 : prime - 1;
            cols[j][std::size_t(index.at(face))] = coeff;
            if (i < face.size()) face[i] = s.verts[i];  // slide the omitted vertex
        }
    }

    auto pivot = [&](std::size_t j) -> int {
        const auto& c = cols[j];
        for (int r = int(c.size()) - 1; r >= 0; --r)
            if (c[std::size_t(r)] != 0) return r;
        return -1;
    };

    std::vector<int> low_owner(m, -1);  // pivot row -> column
    std::array<Diagram, 3> dgms;
    std::vector<bool> killed(m, false);

    for (std::size_t j = 0; j < m; ++j) {
        if (cols[j].empty()) continue;
        int piv = pivot(j);
        while (piv >= 0 && low_owner[std::size_t(piv)] >= 0) {
            std::size_t k = std::size_t(low_owner[std::size_t(piv)]);
            int factor = cols[j][std::size_t(piv)] *
                         mod_inverse(cols[k][std::size_t(piv)], prime) % prime;
            for (std::size_t r = 0; r < m; ++r)
                cols[j][r] = ((cols[j][r] - factor * cols[k][r]) % prime + prime) % prime;
            piv = pivot(j);
        }
        if (piv < 0) continue;
        low_owner[std::size_t(piv)] = int(j);
        const Simplex& birth = simplices[std::size_t(piv)];
        const Simplex& death = simplices[j];
        killed[std::size_t(piv)] = true;
        if (birth.dim() <= max_dim && death.diam > birth.diam)
            dgms[std::size_t(birth.dim())].push_back({birth.diam, death.diam});
    }

    for (std::size_t i = 0; i < m; ++i) {
        const Simplex& s = simplices[i];
        bool positive = cols[i].empty() || pivot(i) < 0;
        if (positive && !killed[i] && s.dim() <= max_dim)
            dgms[std::size_t(s.dim())].push_back({s.diam, kInf});
    }

    for (auto& d : dgms) d = sorted_diagram(std::move(d));
    return dgms;
}

Diagram sorted_diagram(Diagram d) {
    std::sort(d.begin(), d.end());
    return d;
}

Diagram sorted_diagram(const std::vector<recur::PersistencePair>& pairs) {
    Diagram d;
    d.reserve(pairs.size());
    for (const auto& p : pairs) d.push_back({p.birth, p.death});
    return sorted_diagram(std::move(d));
}

}  // namespace testsupport
