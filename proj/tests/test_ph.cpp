#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "oracle.hpp"
#include "recur/error.hpp"
#include "recur/ph/rips.hpp"

using namespace recur;
namespace ts = testsupport;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DistanceMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    DistanceMatrix dm = make_distance_matrix(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) dm.at(i, j++) = v;
        ++i;
    }
    return dm;
}

DistanceMatrix regular_polygon(int n) {
    DistanceMatrix dm = make_distance_matrix(std::size_t(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double a = 2.0 * M_PI * (j - i) / n;
            double d = 2.0 * std::sin(a / 2.0);  // chord length, circumradius 1
            dm.at(std::size_t(i), std::size_t(j)) = d;
            dm.at(std::size_t(j), std::size_t(i)) = d;
        }
    return dm;
}

void check_against_oracle(const DistanceMatrix& dm, const ph::RipsOptions& opt) {
    PersistenceDiagrams dgms = ph::rips_persistence(dm, opt);
    auto expected = ts::naive_rips(dm, opt.max_dim, opt.prime, dgms.threshold);
    for (int d = 0; d <= opt.max_dim; ++d) {
        CAPTURE(d);
        CHECK(ts::sorted_diagram(dgms.dim(d)) == expected[std::size_t(d)]);
    }
}

}  // namespace

TEST_CASE("matches naive boundary reduction on random instances") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> nd(3, 8);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_int_distribution<int> dimd(0, 2);
    const int primes[4] = {2, 3, 5, 7};
    for (int trial = 0; trial < 48; ++trial) {
        std::size_t n = std::size_t(nd(rng));
        DistanceMatrix dm;
        switch (pick(rng)) {
            case 0: dm = ts::random_point_metric(rng, n, 2); break;
            case 1: dm = ts::random_point_metric(rng, n, 3); break;
            case 2: dm = ts::random_uniform_metric(rng, n); break;
            default: dm = ts::quantize_metric(ts::random_uniform_metric(rng, n), 0.1);
        }
        ph::RipsOptions opt;
        opt.max_dim = dimd(rng);
        opt.prime = primes[std::size_t(pick(rng))];
        switch (dimd(rng)) {
            case 0: opt.threshold.reset(); break;
            case 1: opt.threshold = kInf; break;
            default: opt.threshold = 0.8 * ph::enclosing_radius(dm);
        }
        CAPTURE(trial);
        check_against_oracle(dm, opt);
    }
}

TEST_CASE("hexagon carries one loop from 1 to sqrt(3)") {
    DistanceMatrix dm = regular_polygon(6);
    ph::RipsOptions opt;
    opt.max_dim = 2;
    PersistenceDiagrams dgms = ph::rips_persistence(dm, opt);

    REQUIRE(dgms.dim(1).size() == 1);
    CHECK(dgms.dim(1)[0].birth == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dgms.dim(1)[0].death == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

    // at sqrt(3) the skip-one edges turn the hexagon into an octahedron
    // boundary, a 2-sphere that survives until the opposite edges land at 2
    REQUIRE(dgms.dim(2).size() == 1);
    CHECK(dgms.dim(2)[0].birth == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
    CHECK(dgms.dim(2)[0].death == doctest::Approx(2.0).epsilon(1e-9));

    int essential0 = 0;
    for (const auto& p : dgms.dim(0)) {
        if (!p.finite())
            ++essential0;
        else
            CHECK(p.death == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(essential0 == 1);
    CHECK(dgms.dim(0).size() == 6);

    check_against_oracle(dm, opt);
}

TEST_CASE("square loop dies when the diagonal fills it") {
    DistanceMatrix dm = from_rows({{0, 1, std::sqrt(2.0), 1},
                                   {1, 0, 1, std::sqrt(2.0)},
                                   {std::sqrt(2.0), 1, 0, 1},
                                   {1, std::sqrt(2.0), 1, 0}});
    ph::RipsOptions opt;
    opt.max_dim = 1;
    PersistenceDiagrams dgms = ph::rips_persistence(dm, opt);
    REQUIRE(dgms.dim(1).size() == 1);
    CHECK(dgms.dim(1)[0].birth == doctest::Approx(1.0));
    CHECK(dgms.dim(1)[0].death == doctest::Approx(std::sqrt(2.0)));

    opt.threshold = 1.2;  // below the diagonal: the loop never dies
    dgms = ph::rips_persistence(dm, opt);
    REQUIRE(dgms.dim(1).size() == 1);
    CHECK(dgms.dim(1)[0].birth == doctest::Approx(1.0));
    CHECK(!dgms.dim(1)[0].finite());
}

TEST_CASE("enclosing radius") {
    DistanceMatrix dm = from_rows({{0, 1, 4}, {1, 0, 2}, {4, 2, 0}});
    // row maxima are 4, 2, 4; the smallest is 2
    CHECK(ph::enclosing_radius(dm) == 2.0);
    CHECK(ph::enclosing_radius(make_distance_matrix(1)) == 0.0);
}

TEST_CASE("threshold resolution is recorded in the result") {
    std::mt19937_64 rng(7);
    DistanceMatrix dm = ts::random_point_metric(rng, 6, 2);
    double er = ph::enclosing_radius(dm);

    ph::RipsOptions opt;
    CHECK(ph::rips_persistence(dm, opt).threshold == er);
    opt.threshold = kInf;
    CHECK(ph::rips_persistence(dm, opt).threshold == 2.0 * er);
    opt.threshold = 0.7;
    CHECK(ph::rips_persistence(dm, opt).threshold == 0.7);
}

TEST_CASE("input validation") {
    ph::RipsOptions opt;
    CHECK_THROWS_AS(ph::rips_persistence(make_distance_matrix(0), opt), InvalidInput);

    DistanceMatrix bad = from_rows({{0, 1}, {2, 0}});
    CHECK_THROWS_AS(ph::rips_persistence(bad, opt), InvalidInput);

    bad = from_rows({{0, -1}, {-1, 0}});
    CHECK_THROWS_AS(ph::rips_persistence(bad, opt), InvalidInput);

    bad = from_rows({{0, 1}, {1, 0.5}});
    CHECK_THROWS_AS(ph::rips_persistence(bad, opt), InvalidInput);

    double nan = std::numeric_limits<double>::quiet_NaN();
    bad = from_rows({{0, nan}, {nan, 0}});
    CHECK_THROWS_AS(ph::rips_persistence(bad, opt), InvalidInput);

    DistanceMatrix ok = from_rows({{0, 1}, {1, 0}});
    opt.prime = 4;
    CHECK_THROWS_AS(ph::rips_persistence(ok, opt), InvalidInput);
    opt.prime = 3;
    opt.max_dim = 3;
    CHECK_THROWS_AS(ph::rips_persistence(ok, opt), InvalidInput);
    opt.max_dim = -1;
    CHECK_THROWS_AS(ph::rips_persistence(ok, opt), InvalidInput);
    opt.max_dim = 1;
    opt.threshold = -0.5;
    CHECK_THROWS_AS(ph::rips_persistence(ok, opt), InvalidInput);
}

TEST_CASE("zero-persistence intervals are dropped") {
    // two coincident points: the merge at distance 0 is invisible
    DistanceMatrix dm = make_distance_matrix(2);
    ph::RipsOptions opt;
    PersistenceDiagrams dgms = ph::rips_persistence(dm, opt);
    REQUIRE(dgms.dim(0).size() == 1);
    CHECK(dgms.dim(0)[0].birth == 0.0);
    CHECK(!dgms.dim(0)[0].finite());

    // all pairwise distances equal: every feature above dim 0 is instant
    DistanceMatrix flat = make_distance_matrix(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            if (i != j) flat.at(i, j) = 1.0;
    opt.max_dim = 2;
    dgms = ph::rips_persistence(flat, opt);
    CHECK(dgms.dim(0).size() == 6);  // five merges at 1 plus one essential
    CHECK(dgms.dim(1).empty());
    CHECK(dgms.dim(2).empty());
    check_against_oracle(flat, opt);
}

TEST_CASE("essential counts satisfy the Euler identity on 2-complexes") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 5 + std::size_t(trial % 4);
        DistanceMatrix dm = trial % 2 == 0 ? ts::random_point_metric(rng, n, 2)
                                           : ts::random_uniform_metric(rng, n);
        // pick a cutoff that excludes every tetrahedron so the complex is
        // at most 2-dimensional and chi = V - E + F = b0 - b1 + b2
        double min_tet = kInf;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                for (std::size_t c = b + 1; c < n; ++c)
                    for (std::size_t d = c + 1; d < n; ++d) {
                        double diam = std::max({dm.at(a, b), dm.at(a, c), dm.at(a, d),
                                                dm.at(b, c), dm.at(b, d), dm.at(c, d)});
                        min_tet = std::min(min_tet, diam);
                    }
        double thr = min_tet * (1.0 - 1e-9);

        long chi = long(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                if (dm.at(a, b) <= thr) --chi;
                for (std::size_t c = b + 1; c < n; ++c)
                    if (std::max({dm.at(a, b), dm.at(a, c), dm.at(b, c)}) <= thr) ++chi;
            }

        ph::RipsOptions opt;
        opt.max_dim = 2;
        opt.threshold = thr;
        PersistenceDiagrams dgms = ph::rips_persistence(dm, opt);
        long betti_alt = 0;
        for (int d = 0; d <= 2; ++d) {
            long ess = 0;
            for (const auto& p : dgms.dim(d))
                if (!p.finite()) ++ess;
            betti_alt += (d % 2 == 0 ? ess : -ess);
        }
        CAPTURE(trial);
        CHECK(chi == betti_alt);
    }
}

TEST_CASE("max_persistence picks the i-th largest finite lifetime") {
    PersistenceDiagrams dgms;
    dgms.max_dim = 1;
    dgms.dims[1] = {{0.0, 3.0}, {1.0, 2.0}, {0.5, 2.5}, {0.1, kInf}};
    CHECK(ph::max_persistence(dgms, 1, 1) == 3.0);
    CHECK(ph::max_persistence(dgms, 1, 2) == 2.0);
    CHECK(ph::max_persistence(dgms, 1, 3) == 1.0);
    CHECK(ph::max_persistence(dgms, 1, 4) == 0.0);
    CHECK_THROWS_AS(ph::max_persistence(dgms, 2, 1), InvalidInput);
    CHECK_THROWS_AS(ph::max_persistence(dgms, 1, 0), InvalidInput);
}

TEST_CASE("diagram csv uses dim,birth,death rows with inf for essentials") {
    PersistenceDiagrams dgms;
    dgms.max_dim = 1;
    dgms.dims[0] = {{0.0, kInf}};
    dgms.dims[1] = {{1.0, 2.0}};
    std::ostringstream out;
    ph::write_csv(dgms, out);
    std::string text = out.str();
    CHECK(text.find("dim,birth,death") != std::string::npos);
    CHECK(text.find("0,0,inf") != std::string::npos);
    CHECK(text.find("1,1,2") != std::string::npos);
}
