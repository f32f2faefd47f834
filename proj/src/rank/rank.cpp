#include "recur/rank.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "recur/error.hpp"

namespace recur::rank {

HodgeResult hodge_aggregate(const std::vector<Preference>& prefs, std::size_t n) {
    if (n < 2) throw InvalidInput("hodge_aggregate: need at least two nodes");
    if (prefs.empty()) throw InvalidInput("hodge_aggregate: need at least one preference");
    for (const auto& p : prefs) {
        if (p.a >= n || p.b >= n)
            throw InvalidInput("hodge_aggregate: preference index out of range");
        if (p.a == p.b) throw InvalidInput("hodge_aggregate: self-comparison");
    }

    const Eigen::Index m = Eigen::Index(prefs.size());
    const Eigen::Index ni = Eigen::Index(n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, ni);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Preference& p = prefs[std::size_t(k)];
        b(k, Eigen::Index(p.a)) = -1.0;
        b(k, Eigen::Index(p.b)) = 1.0;
        w(k) = p.margin;
    }

    // minimum-norm least squares; the kernel (constants per component) is
    // fixed afterwards by the mean-zero gauge
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(b);
    Eigen::VectorXd s = cod.solve(w);

    HodgeResult res;
    res.residual = (b * s - w).squaredNorm();

    // connected components of the comparison graph
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t(0));
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : prefs) parent[find(p.a)] = find(p.b);

    res.component.assign(n, -1);
    int comp_count = 0;
    std::vector<double> comp_sum;
    std::vector<std::size_t> comp_size;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = find(i);
        if (res.component[root] < 0) {
            res.component[root] = comp_count++;
            comp_sum.push_back(0.0);
            comp_size.push_back(0);
        }
        res.component[i] = res.component[root];
        comp_sum[std::size_t(res.component[i])] += s(Eigen::Index(i));
        comp_size[std::size_t(res.component[i])] += 1;
    }
    res.n_components = comp_count;
    res.disconnected = comp_count > 1;

    res.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int c = res.component[i];
        res.scores[i] =
            s(Eigen::Index(i)) - comp_sum[std::size_t(c)] / double(comp_size[std::size_t(c)]);
    }
    return res;
}

double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw InvalidInput("kendall_tau: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw InvalidInput("kendall_tau: need at least two entries");

    auto cmp = [](const std::vector<double>& v, std::size_t i, std::size_t j) {
        if (v[i] != v[j]) return v[i] > v[j] ? 1 : -1;
        return i < j ? 1 : -1;  // index tie-break
    };
    long long sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum += cmp(a, i, j) * cmp(b, i, j);
    return double(sum) / (double(n) * double(n - 1) / 2.0);
}

double auroc(const std::vector<double>& positives, const std::vector<double>& negatives) {
    if (positives.empty() || negatives.empty())
        throw InvalidInput("auroc: both classes must be nonempty");
    double wins = 0.0;
    for (double p : positives)
        for (double q : negatives) {
            if (p > q)
                wins += 1.0;
            else if (p == q)
                wins += 0.5;
        }
    return wins / (double(positives.size()) * double(negatives.size()));
}

std::vector<std::size_t> ranking_order(const std::vector<double>& scores) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (scores[i] != scores[j]) return scores[i] > scores[j];
        return i < j;
    });
    return idx;
}

std::vector<Preference> load_preferences_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open: " + path);
    std::vector<Preference> prefs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Preference p;
        char extra = 0;
        unsigned long long a = 0, b = 0;
        if (std::sscanf(line.c_str(), "%llu,%llu,%lf %c", &a, &b, &p.margin, &extra) != 3)
            throw FormatError("preferences csv: bad row '" + line + "'");
        p.a = std::size_t(a);
        p.b = std::size_t(b);
        prefs.push_back(p);
    }
    if (prefs.empty()) throw FormatError("preferences csv: no rows");
    return prefs;
}

void save_preferences_csv(const std::vector<Preference>& prefs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    char buf[40];
    for (const auto& p : prefs) {
        std::snprintf(buf, sizeof buf, "%.17g", p.margin);
        out << p.a << ',' << p.b << ',' << buf << '\n';
    }
}

void save_ranking_csv(const std::vector<double>& scores, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << "index,score\n";
    char buf[40];
    for (std::size_t i : ranking_order(scores)) {
        std::snprintf(buf, sizeof buf, "%.17g", scores[i]);
        out << i << ',' << buf << '\n';
    }
}

std::vector<double> load_ranking_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open: " + path);
    std::vector<std::pair<std::size_t, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "index,score") continue;
        char extra = 0;
        unsigned long long i = 0;
        double s = 0.0;
        if (std::sscanf(line.c_str(), "%llu,%lf %c", &i, &s, &extra) != 2)
            throw FormatError("ranking csv: bad row '" + line + "'");
        rows.emplace_back(std::size_t(i), s);
    }
    if (rows.empty()) throw FormatError("ranking csv: no rows");
    std::vector<double> scores(rows.size(), 0.0);
    std::vector<bool> seen(rows.size(), false);
    for (const auto& [i, s] : rows) {
        if (i >= rows.size() || seen[i])
            throw FormatError("ranking csv: indices must cover 0..n-1 exactly once");
        seen[i] = true;
        scores[i] = s;
    }
    return scores;
}

}  // namespace recur::rank
