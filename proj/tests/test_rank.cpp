#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <fstream>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "recur/error.hpp"
#include "recur/rank.hpp"

using namespace recur;

namespace {

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("kendall tau endpoints are exact") {
    std::vector<double> up = {0.1, 0.5, 0.7, 2.0, 3.5, 4.0};
    std::vector<double> down(up.rbegin(), up.rend());
    CHECK(rank::kendall_tau(up, up) == 1.0);
    CHECK(rank::kendall_tau(up, down) == -1.0);
    CHECK(rank::kendall_tau(down, up) == -1.0);

    // one swapped adjacent pair out of 15
    std::vector<double> nearly = {0.5, 0.1, 0.7, 2.0, 3.5, 4.0};
    CHECK(rank::kendall_tau(up, nearly) == doctest::Approx(13.0 / 15.0));

    CHECK_THROWS_AS(rank::kendall_tau({1.0}, {1.0}), InvalidInput);
    CHECK_THROWS_AS(rank::kendall_tau({1.0, 2.0}, {1.0}), InvalidInput);
}

TEST_CASE("chain preferences resolve to evenly spaced scores") {
    std::vector<rank::Preference> prefs = {{0, 1, 1.0}, {1, 2, 1.0}};
    rank::HodgeResult r = rank::hodge_aggregate(prefs, 3);
    REQUIRE(r.scores.size() == 3);
    CHECK(r.residual < 1e-10);
    CHECK(r.n_components == 1);
    CHECK(!r.disconnected);
    CHECK(r.scores[0] == doctest::Approx(-1.0));
    CHECK(r.scores[1] == doctest::Approx(0.0).scale(1.0));
    CHECK(r.scores[2] == doctest::Approx(1.0));
    CHECK(rank::ranking_order(r.scores) == std::vector<std::size_t>{2, 1, 0});
}

TEST_CASE("weighted margins are honored when consistent") {
    std::vector<rank::Preference> prefs = {{0, 1, 2.0}, {1, 2, 0.5}, {0, 2, 2.5}};
    rank::HodgeResult r = rank::hodge_aggregate(prefs, 3);
    CHECK(r.residual < 1e-10);
    CHECK(r.scores[1] - r.scores[0] == doctest::Approx(2.0));
    CHECK(r.scores[2] - r.scores[1] == doctest::Approx(0.5));
}

TEST_CASE("a cyclic triangle is pure curl") {
    std::vector<rank::Preference> prefs = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
    rank::HodgeResult r = rank::hodge_aggregate(prefs, 3);
    // the gradient part is zero: all scores equal, all margin is residual
    CHECK(std::abs(r.scores[0] - r.scores[1]) < 1e-10);
    CHECK(std::abs(r.scores[1] - r.scores[2]) < 1e-10);
    CHECK(r.residual == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("disconnected comparison graphs are flagged and centered per part") {
    std::vector<rank::Preference> prefs = {{0, 1, 1.0}, {2, 3, 4.0}};
    rank::HodgeResult r = rank::hodge_aggregate(prefs, 4);
    CHECK(r.disconnected);
    CHECK(r.n_components == 2);
    CHECK(r.component[0] == r.component[1]);
    CHECK(r.component[2] == r.component[3]);
    CHECK(r.component[0] != r.component[2]);
    CHECK(r.scores[0] + r.scores[1] == doctest::Approx(0.0).scale(1.0));
    CHECK(r.scores[2] + r.scores[3] == doctest::Approx(0.0).scale(1.0));
    CHECK(r.scores[1] - r.scores[0] == doctest::Approx(1.0));
    CHECK(r.scores[3] - r.scores[2] == doctest::Approx(4.0));

    // isolated nodes count as their own components
    rank::HodgeResult iso = rank::hodge_aggregate({{0, 1, 1.0}}, 3);
    CHECK(iso.disconnected);
    CHECK(iso.n_components == 2);
}

TEST_CASE("hodge input validation") {
    CHECK_THROWS_AS(rank::hodge_aggregate({}, 3), InvalidInput);
    CHECK_THROWS_AS(rank::hodge_aggregate({{0, 1, 1.0}}, 1), InvalidInput);
    CHECK_THROWS_AS(rank::hodge_aggregate({{0, 5, 1.0}}, 3), InvalidInput);
    CHECK_THROWS_AS(rank::hodge_aggregate({{2, 2, 1.0}}, 3), InvalidInput);
}

TEST_CASE("auroc") {
    CHECK(rank::auroc({3.0, 4.0}, {1.0, 2.0}) == 1.0);
    CHECK(rank::auroc({1.0, 2.0}, {3.0, 4.0}) == 0.0);
    CHECK(rank::auroc({1.0, 1.0}, {1.0, 1.0}) == 0.5);
    // 2x2 grid: 3 wins, 1 tie counted one half -> 3.5/4
    CHECK(rank::auroc({2.0, 3.0}, {1.0, 2.0}) == doctest::Approx(0.875));
    CHECK_THROWS_AS(rank::auroc({}, {1.0}), InvalidInput);
    CHECK_THROWS_AS(rank::auroc({1.0}, {}), InvalidInput);
}

TEST_CASE("ranking order sorts descending, index breaks ties") {
    CHECK(rank::ranking_order({0.3, 0.9, 0.3, 0.1}) ==
          std::vector<std::size_t>{1, 0, 2, 3});
}

TEST_CASE("preference csv round trip") {
    std::vector<rank::Preference> prefs = {{0, 1, 1.5}, {3, 2, -0.25}};
    std::string path = temp_file("prefs_rt.csv");
    rank::save_preferences_csv(prefs, path);
    std::vector<rank::Preference> back = rank::load_preferences_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].a == 0);
    CHECK(back[0].b == 1);
    CHECK(back[0].margin == 1.5);
    CHECK(back[1].a == 3);
    CHECK(back[1].b == 2);
    CHECK(back[1].margin == -0.25);
    std::filesystem::remove(path);

    std::string bad = temp_file("prefs_bad.csv");
    {
        std::ofstream out(bad);
        out << "a,b,margin\n0,1\n";
    }
    CHECK_THROWS_AS(rank::load_preferences_csv(bad), FormatError);
    std::filesystem::remove(bad);
}

TEST_CASE("ranking csv round trip enforces a permutation") {
    std::vector<double> scores = {0.25, -1.0, 3.0};
    std::string path = temp_file("rank_rt.csv");
    rank::save_ranking_csv(scores, path);
    std::vector<double> back = rank::load_ranking_csv(path);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == scores[i]);

    {
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "index,score");
        std::string first;
        std::getline(in, first);
        CHECK(first.substr(0, 2) == "2,");  // highest score listed first
    }
    std::filesystem::remove(path);

    std::string bad = temp_file("rank_bad.csv");
    {
        std::ofstream out(bad);
        out << "index,score\n0,1.0\n0,2.0\n";
    }
    CHECK_THROWS_AS(rank::load_ranking_csv(bad), FormatError);
    {
        std::ofstream out(bad);
        out << "index,score\n0,1.0\n3,2.0\n";
    }
    CHECK_THROWS_AS(rank::load_ranking_csv(bad), FormatError);
    std::filesystem::remove(bad);
}
