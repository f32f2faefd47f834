// Vietoris-Rips persistent homology over Z/p.
//
// Simplices are identified by their rank in the combinatorial number system
// over descending vertex tuples, so rank order within one diameter is
// colexicographic. The filtration refines (diameter, dimension) by
// decreasing rank; barcodes do not depend on that tie-break, it only fixes
// a total order the reduction can exploit.
//
// Dimension 0 is union-find over the sorted edges. Higher dimensions reduce
// the coboundary matrix youngest-column-first, which makes clearing and two
// shortcuts available: a column whose first equal-diameter cofacet is still
// unclaimed is finished the moment it is assembled (emergent pair), and
// columns in equal-diameter apparent pairs are never assembled at all. Both
// prune the vast majority of columns on realistic inputs. The reduction
// stores only the change-of-basis entries per column and re-derives
// coboundaries on demand.

#include "recur/ph/rips.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "recur/error.hpp"

namespace recur::ph {

namespace {

using index_t = std::int64_t;
using coeff_t = std::uint32_t;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr index_t kRankCap = index_t(1) << 62;

struct Entry {
    double diam;
    index_t rank;
    coeff_t coeff;
};

// True when a comes later in the filtration than b.
inline bool younger(const Entry& a, const Entry& b) {
    return a.diam > b.diam || (a.diam == b.diam && a.rank < b.rank);
}

struct YoungerFirst {
    bool operator()(const Entry& a, const Entry& b) const { return younger(a, b); }
};

class Binomials {
public:
    Binomials(index_t n, int kmax) : cols_(kmax + 1), tbl_(std::size_t(n + 1) * (kmax + 1), 0) {
        for (index_t r = 0; r <= n; ++r) {
            tbl_[std::size_t(r) * cols_] = 1;
            for (int c = 1; c <= kmax; ++c) {
                index_t below = r > 0 ? at(r - 1, c) : 0;
                index_t diag = (r > 0 && c > 0) ? at(r - 1, c - 1) : 0;
                index_t sum = (below >= kRankCap - diag) ? kRankCap : below + diag;
                tbl_[std::size_t(r) * cols_ + c] = sum;
            }
        }
    }
    index_t at(index_t n, int k) const { return tbl_[std::size_t(n) * cols_ + k]; }

private:
    std::size_t cols_;
    std::vector<index_t> tbl_;
};

struct UnionFind {
    std::vector<index_t> parent;
    explicit UnionFind(index_t n) : parent(std::size_t(n)) {
        for (index_t i = 0; i < n; ++i) parent[std::size_t(i)] = i;
    }
    index_t find(index_t x) {
        index_t root = x;
        while (parent[std::size_t(root)] != root) root = parent[std::size_t(root)];
        while (parent[std::size_t(x)] != root) {
            index_t next = parent[std::size_t(x)];
            parent[std::size_t(x)] = root;
            x = next;
        }
        return root;
    }
    void unite(index_t a, index_t b) { parent[std::size_t(a)] = b; }
};

class Reducer {
public:
    Reducer(const DistanceMatrix& dm, int max_dim, coeff_t prime, double threshold)
        : d_(dm.values.data()),
          n_(index_t(dm.n)),
          max_dim_(max_dim),
          prime_(prime),
          thr_(threshold),
          binom_(n_ + 1, max_dim + 2) {
        for (coeff_t a = 1; a < prime_; ++a)
            for (coeff_t x = 1; x < prime_; ++x)
                if (a * x % prime_ == 1) inv_[a] = x;
        if (max_dim_ >= 1 && binom_.at(n_, max_dim_ + 2) >= kRankCap)
            throw InvalidInput("rips_persistence: too many simplices for this dimension");
    }

    PersistenceDiagrams run() {
        PersistenceDiagrams dgms;
        dgms.max_dim = max_dim_;
        dgms.prime = int(prime_);
        dgms.threshold = thr_;

        std::vector<Entry> columns = compute_dim0(dgms);
        for (int dim = 1; dim <= max_dim_; ++dim) {
            PivotMap pivots;
            reduce(columns, dim, pivots, dgms);
            if (dim < max_dim_) columns = assemble(dim + 1, pivots);
        }
        for (auto& pairs : dgms.dims)
            std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
                return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
            });
        return dgms;
    }

private:
    struct PivotRef {
        std::uint32_t col;
        coeff_t coeff;
    };
    using PivotMap = std::unordered_map<index_t, PivotRef>;
    using Heap = std::priority_queue<Entry, std::vector<Entry>, YoungerFirst>;

    double dist(index_t i, index_t j) const { return d_[std::size_t(i) * std::size_t(n_) + std::size_t(j)]; }

    coeff_t mul(coeff_t a, coeff_t b) const { return a * b % prime_; }
    coeff_t neg(coeff_t a) const { return (prime_ - a) % prime_; }
    // coefficient for a boundary vertex removed at ascending position `pos`
    coeff_t sign_coeff(int pos) const { return pos % 2 == 0 ? 1 : prime_ - 1; }

    index_t max_vertex(index_t r, int k) const {
        index_t lo = k - 1, hi = n_ - 1;
        while (lo < hi) {
            index_t mid = lo + (hi - lo + 1) / 2;
            if (binom_.at(mid, k) <= r)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    // vertices in decreasing order
    void decode(index_t rank, int dim, index_t* v) const {
        index_t r = rank;
        for (int i = 0; i <= dim; ++i) {
            int k = dim + 1 - i;
            v[i] = max_vertex(r, k);
            r -= binom_.at(v[i], k);
        }
    }

    index_t edge_rank(index_t hi, index_t lo) const { return binom_.at(hi, 2) + lo; }

    // Enumerates cofacets of the simplex with descending vertices v[0..p] by
    // decreasing inserted vertex, i.e. by decreasing cofacet rank. f is
    // called as f(rank, diam, desc_pos) for cofacets within the threshold
    // and may return false to stop early.
    template <typename F>
    void for_each_cofacet(const index_t* v, int p, double diam, F&& f) const {
        std::array<index_t, 6> pre{}, suf{};
        pre[0] = 0;
        for (int i = 0; i <= p; ++i) pre[i + 1] = pre[i] + binom_.at(v[i], p + 2 - i);
        suf[p + 1] = 0;
        for (int i = p; i >= 0; --i) suf[i] = suf[i + 1] + binom_.at(v[i], p + 1 - i);

        int j = 0;
        for (index_t w = n_ - 1; w >= 0; --w) {
            if (j <= p && w == v[j]) {
                ++j;
                continue;
            }
            double cd = diam;
            for (int i = 0; i <= p; ++i) {
                double dw = dist(w, v[i]);
                if (dw > cd) cd = dw;
            }
            if (cd > thr_) continue;
            index_t rank = pre[j] + binom_.at(w, p + 2 - j) + suf[j];
            if (!f(rank, cd, j)) return;
        }
    }

    // Oldest cofacet with the same diameter: the first equal-diameter hit in
    // the enumeration above. Returns (rank, desc_pos) or nothing.
    std::optional<std::pair<index_t, int>> oldest_equal_cofacet(const index_t* v, int p,
                                                                double diam) const {
        int j = 0;
        for (index_t w = n_ - 1; w >= 0; --w) {
            if (j <= p && w == v[j]) {
                ++j;
                continue;
            }
            bool equal = true;
            for (int i = 0; i <= p; ++i) {
                if (dist(w, v[i]) > diam) {
                    equal = false;
                    break;
                }
            }
            if (!equal) continue;
            index_t rank = 0;
            for (int i = 0; i < j; ++i) rank += binom_.at(v[i], p + 2 - i);
            rank += binom_.at(w, p + 2 - j);
            for (int i = j; i <= p; ++i) rank += binom_.at(v[i], p + 1 - i);
            return std::make_pair(rank, j);
        }
        return std::nullopt;
    }

    double pair_diam(const index_t* v, int count) const {
        double m = 0.0;
        for (int a = 0; a < count; ++a)
            for (int b = a + 1; b < count; ++b) {
                double d = dist(v[a], v[b]);
                if (d > m) m = d;
            }
        return m;
    }

    struct Facet {
        index_t rank;
        double diam;
        int drop;  // descending position of the removed vertex
    };

    // Latest facet in filtration order: largest diameter, then smallest rank.
    Facet youngest_facet(const index_t* v, int q) const {
        std::array<index_t, 6> pre{}, suf{};
        pre[0] = 0;
        for (int i = 0; i <= q; ++i) pre[i + 1] = pre[i] + binom_.at(v[i], q - i);
        suf[q] = 0;
        for (int i = q - 1; i >= 0; --i) suf[i] = suf[i + 1] + binom_.at(v[i + 1], q - i);

        Facet best{-1, -1.0, -1};
        std::array<index_t, 6> rest{};
        for (int j = 0; j <= q; ++j) {
            int cnt = 0;
            for (int i = 0; i <= q; ++i)
                if (i != j) rest[std::size_t(cnt++)] = v[i];
            double fd = pair_diam(rest.data(), cnt);
            index_t rank = pre[j] + suf[j];
            if (fd > best.diam || (fd == best.diam && rank < best.rank))
                best = {rank, fd, j};
        }
        return best;
    }

    // If (facet, simplex) form an equal-diameter apparent pair, returns the
    // facet entry together with the coefficient of the simplex in its
    // coboundary.
    std::optional<std::pair<Entry, coeff_t>> apparent_facet(const index_t* v, int q,
                                                            double diam) const {
        Facet f = youngest_facet(v, q);
        if (f.diam != diam) return std::nullopt;
        std::array<index_t, 6> fv{};
        int cnt = 0;
        for (int i = 0; i <= q; ++i)
            if (i != f.drop) fv[std::size_t(cnt++)] = v[i];
        auto oc = oldest_equal_cofacet(fv.data(), q - 1, f.diam);
        index_t own_rank = 0;
        for (int i = 0; i <= q; ++i) own_rank += binom_.at(v[i], q + 1 - i);
        if (!oc || oc->first != own_rank) return std::nullopt;
        coeff_t c = sign_coeff(q - f.drop);
        return std::make_pair(Entry{f.diam, f.rank, 0}, c);
    }

    // (simplex, oldest equal-diameter cofacet) is apparent iff that cofacet's
    // youngest facet is the simplex itself.
    bool is_apparent_birth(const index_t* v, int p, double diam, index_t rank) const {
        auto oc = oldest_equal_cofacet(v, p, diam);
        if (!oc) return false;
        std::array<index_t, 6> tv{};
        decode(oc->first, p + 1, tv.data());
        Facet f = youngest_facet(tv.data(), p + 1);
        return f.diam == diam && f.rank == rank;
    }

    bool is_apparent_death(const index_t* v, int q, double diam) const {
        return apparent_facet(v, q, diam).has_value();
    }

    std::optional<Entry> pop_pivot(Heap& h) const {
        while (!h.empty()) {
            Entry e = h.top();
            h.pop();
            coeff_t c = e.coeff % prime_;
            while (!h.empty() && h.top().rank == e.rank) {
                c = (c + h.top().coeff) % prime_;
                h.pop();
            }
            if (c != 0) {
                e.coeff = c;
                return e;
            }
        }
        return std::nullopt;
    }

    std::optional<Entry> get_pivot(Heap& h) const {
        auto e = pop_pivot(h);
        if (e) h.push(*e);
        return e;
    }

    // dimension 0 via union-find; returns the cycle edges (dim-1 columns)
    std::vector<Entry> compute_dim0(PersistenceDiagrams& dgms) {
        std::vector<Entry> edges;
        for (index_t i = 0; i < n_; ++i)
            for (index_t j = i + 1; j < n_; ++j) {
                double d = dist(i, j);
                if (d <= thr_) edges.push_back({d, edge_rank(j, i), 0});
            }
        std::sort(edges.begin(), edges.end(), [](const Entry& a, const Entry& b) {
            return a.diam != b.diam ? a.diam < b.diam : a.rank > b.rank;
        });

        UnionFind uf(n_);
        std::vector<Entry> cycle_edges;
        for (const Entry& e : edges) {
            index_t hi = max_vertex(e.rank, 2);
            index_t lo = e.rank - binom_.at(hi, 2);
            index_t ra = uf.find(lo), rb = uf.find(hi);
            if (ra == rb) {
                cycle_edges.push_back(e);
                continue;
            }
            uf.unite(ra, rb);
            if (e.diam > 0.0) dgms.dims[0].push_back({0.0, e.diam});
        }
        for (index_t i = 0; i < n_; ++i)
            if (uf.find(i) == i) dgms.dims[0].push_back({0.0, kInf});

        if (max_dim_ < 1) return {};
        std::vector<Entry> columns;
        columns.reserve(cycle_edges.size());
        std::array<index_t, 2> v{};
        for (const Entry& e : cycle_edges) {
            decode(e.rank, 1, v.data());
            if (is_apparent_birth(v.data(), 1, e.diam, e.rank)) continue;
            columns.push_back(e);
        }
        std::sort(columns.begin(), columns.end(), YoungerFirst{});
        return columns;
    }

    // p-simplices that remain after clearing and apparent-pair pruning
    std::vector<Entry> assemble(int p, const PivotMap& cleared) const {
        std::vector<Entry> columns;
        if (p != 2)
            throw NumericalError("rips_persistence: unexpected assembly dimension");
        std::array<index_t, 3> v{};
        for (index_t v2 = 2; v2 < n_; ++v2) {
            for (index_t v1 = 1; v1 < v2; ++v1) {
                const double d21 = dist(v2, v1);
                const index_t base = binom_.at(v2, 3) + binom_.at(v1, 2);
                for (index_t v0 = 0; v0 < v1; ++v0) {
                    double diam = d21;
                    double d20 = dist(v2, v0);
                    if (d20 > diam) diam = d20;
                    double d10 = dist(v1, v0);
                    if (d10 > diam) diam = d10;
                    if (diam > thr_) continue;
                    const index_t rank = base + v0;
                    if (cleared.count(rank)) continue;
                    v = {v2, v1, v0};
                    if (is_apparent_birth(v.data(), 2, diam, rank)) continue;
                    if (is_apparent_death(v.data(), 2, diam)) continue;
                    columns.push_back({diam, rank, 0});
                }
            }
        }
        std::sort(columns.begin(), columns.end(), YoungerFirst{});
        return columns;
    }

    void add_vcolumn(const std::vector<Entry>& vcol, coeff_t lambda, int p, Heap& cob,
                     Heap& vheap) const {
        std::array<index_t, 4> v{};
        for (const Entry& e : vcol) {
            coeff_t c = mul(lambda, e.coeff);
            vheap.push({e.diam, e.rank, c});
            decode(e.rank, p, v.data());
            for_each_cofacet(v.data(), p, e.diam,
                             [&](index_t rank, double diam, int j) {
                                 cob.push({diam, rank, mul(c, sign_coeff(p + 1 - j))});
                                 return true;
                             });
        }
    }

    std::vector<Entry> compress(Heap& vheap) const {
        std::vector<Entry> out;
        while (auto e = pop_pivot(vheap)) out.push_back(*e);
        return out;
    }

    void reduce(const std::vector<Entry>& columns, int p, PivotMap& pivots,
                PersistenceDiagrams& dgms) {
        pivots.reserve(columns.size());
        std::vector<std::vector<Entry>> vcols(columns.size());
        std::vector<Entry> scratch;
        std::array<index_t, 4> v{};

        for (std::uint32_t j = 0; j < columns.size(); ++j) {
            const Entry& sigma = columns[j];
            decode(sigma.rank, p, v.data());

            // assemble the coboundary, watching for an emergent pair
            scratch.clear();
            std::optional<Entry> emergent;
            bool may_emerge = true;
            for_each_cofacet(v.data(), p, sigma.diam,
                             [&](index_t rank, double diam, int dpos) {
                                 Entry e{diam, rank, sign_coeff(p + 1 - dpos)};
                                 if (may_emerge && diam == sigma.diam) {
                                     may_emerge = false;
                                     if (!pivots.count(rank)) {
                                         std::array<index_t, 4> tv{};
                                         decode(rank, p + 1, tv.data());
                                         if (!is_apparent_death(tv.data(), p + 1, diam)) {
                                             emergent = e;
                                             return false;
                                         }
                                     }
                                 }
                                 scratch.push_back(e);
                                 return true;
                             });
            if (emergent) {
                pivots.emplace(emergent->rank, PivotRef{j, emergent->coeff});
                vcols[j] = {{sigma.diam, sigma.rank, 1}};
                continue;
            }

            Heap cob, vheap;
            vheap.push({sigma.diam, sigma.rank, 1});
            for (const Entry& e : scratch) cob.push(e);

            for (;;) {
                auto pivot = get_pivot(cob);
                if (!pivot) {
                    dgms.dims[std::size_t(p)].push_back({sigma.diam, kInf});
                    break;
                }
                auto it = pivots.find(pivot->rank);
                if (it != pivots.end()) {
                    coeff_t lambda = neg(mul(pivot->coeff, inv_[it->second.coeff]));
                    add_vcolumn(vcols[it->second.col], lambda, p, cob, vheap);
                    continue;
                }
                std::array<index_t, 4> tv{};
                decode(pivot->rank, p + 1, tv.data());
                if (auto ap = apparent_facet(tv.data(), p + 1, pivot->diam)) {
                    coeff_t lambda = neg(mul(pivot->coeff, inv_[ap->second]));
                    std::vector<Entry> virt{{ap->first.diam, ap->first.rank, 1}};
                    add_vcolumn(virt, lambda, p, cob, vheap);
                    continue;
                }
                pivots.emplace(pivot->rank, PivotRef{j, pivot->coeff});
                if (pivot->diam > sigma.diam)
                    dgms.dims[std::size_t(p)].push_back({sigma.diam, pivot->diam});
                vcols[j] = compress(vheap);
                break;
            }
        }
    }

    const double* d_;
    index_t n_;
    int max_dim_;
    coeff_t prime_;
    double thr_;
    Binomials binom_;
    std::array<coeff_t, 8> inv_{};
};

void validate_metric(const DistanceMatrix& dm) {
    if (dm.n == 0) throw InvalidInput("rips_persistence: empty distance matrix");
    if (dm.values.size() != dm.n * dm.n)
        throw InvalidInput("rips_persistence: distance matrix storage mismatch");
    for (std::size_t i = 0; i < dm.n; ++i) {
        if (dm.at(i, i) != 0.0)
            throw InvalidInput("rips_persistence: nonzero diagonal entry");
        for (std::size_t j = i + 1; j < dm.n; ++j) {
            double a = dm.at(i, j), b = dm.at(j, i);
            if (!(a >= 0.0) || !(b >= 0.0))
                throw InvalidInput("rips_persistence: negative or NaN distance");
            if (a != b) throw InvalidInput("rips_persistence: asymmetric distance matrix");
        }
    }
}

}  // namespace

double enclosing_radius(const DistanceMatrix& dm) {
    if (dm.n == 0) throw InvalidInput("enclosing_radius: empty distance matrix");
    double best = kInf;
    for (std::size_t i = 0; i < dm.n; ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < dm.n; ++j)
            if (j != i) worst = std::max(worst, dm.at(i, j));
        best = std::min(best, worst);
    }
    return dm.n == 1 ? 0.0 : best;
}

PersistenceDiagrams rips_persistence(const DistanceMatrix& dm, const RipsOptions& opt) {
    validate_metric(dm);
    if (opt.max_dim < 0 || opt.max_dim > 2)
        throw InvalidInput("rips_persistence: max_dim must be 0, 1 or 2");
    if (opt.prime != 2 && opt.prime != 3 && opt.prime != 5 && opt.prime != 7)
        throw InvalidInput("rips_persistence: prime must be one of 2, 3, 5, 7");

    double thr;
    if (!opt.threshold.has_value()) {
        thr = enclosing_radius(dm);
    } else if (*opt.threshold == kInf) {
        thr = 2.0 * enclosing_radius(dm);
    } else {
        thr = *opt.threshold;
        if (!(thr >= 0.0)) throw InvalidInput("rips_persistence: threshold must be nonnegative");
    }

    Reducer reducer(dm, opt.max_dim, coeff_t(opt.prime), thr);
    return reducer.run();
}

}  // namespace recur::ph
