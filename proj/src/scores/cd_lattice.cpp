#include "recur/cd_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "recur/error.hpp"

namespace recur::scores {

namespace {

using cplx = std::complex<double>;

void fft1d(cplx* a, std::size_t n, bool inverse) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / double(len) * (inverse ? 1.0 : -1.0);
        cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (std::size_t i = 0; i < n; ++i) a[i] /= double(n);
}

void fft2d(std::vector<cplx>& a, std::size_t m, bool inverse) {
    for (std::size_t r = 0; r < m; ++r) fft1d(a.data() + r * m, m, inverse);
    std::vector<cplx> col(m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t r = 0; r < m; ++r) col[r] = a[r * m + c];
        fft1d(col.data(), m, inverse);
        for (std::size_t r = 0; r < m; ++r) a[r * m + c] = col[r];
    }
}

// Unbiased, variance-normalized 2D autocorrelation for offsets in
// [-reach, reach]^2, returned as a (2 reach + 1)^2 grid.
std::vector<double> autocorr2d(const DistanceMatrix& ssm, int reach) {
    const std::size_t n = ssm.n;
    double mean = 0.0;
    for (double v : ssm.values) mean += v;
    mean /= double(n * n);
    double var = 0.0;
    for (double v : ssm.values) var += (v - mean) * (v - mean);
    var /= double(n * n);

    const int side = 2 * reach + 1;
    std::vector<double> ac(std::size_t(side) * std::size_t(side), 0.0);
    if (var <= 0.0) return ac;

    std::size_t m = 1;
    while (m < 2 * n) m <<= 1;
    std::vector<cplx> grid(m * m, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            grid[i * m + j] = cplx(ssm.at(i, j) - mean, 0.0);

    fft2d(grid, m, false);
    for (auto& z : grid) z *= std::conj(z);
    fft2d(grid, m, true);

    for (int di = -reach; di <= reach; ++di)
        for (int dj = -reach; dj <= reach; ++dj) {
            std::size_t wi = std::size_t((di + int(m)) % int(m));
            std::size_t wj = std::size_t((dj + int(m)) % int(m));
            double overlap = double(int(n) - std::abs(di)) * double(int(n) - std::abs(dj));
            double val = grid[wi * m + wj].real() / overlap / var;
            ac[std::size_t(di + reach) * std::size_t(side) + std::size_t(dj + reach)] = val;
        }
    return ac;
}

std::vector<double> gaussian_smooth(const std::vector<double>& img, int side) {
    const int radius = 2;
    std::vector<double> kernel(2 * radius + 1);
    double total = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        kernel[std::size_t(k + radius)] = std::exp(-0.5 * double(k) * double(k));
        total += kernel[std::size_t(k + radius)];
    }
    for (double& k : kernel) k /= total;

    std::vector<double> tmp(img.size(), 0.0), out(img.size(), 0.0);
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int jj = j + k;
                if (jj < 0 || jj >= side) continue;
                acc += kernel[std::size_t(k + radius)] * img[std::size_t(i) * side + std::size_t(jj)];
            }
            tmp[std::size_t(i) * side + std::size_t(j)] = acc;
        }
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                int ii = i + k;
                if (ii < 0 || ii >= side) continue;
                acc += kernel[std::size_t(k + radius)] * tmp[std::size_t(ii) * side + std::size_t(j)];
            }
            out[std::size_t(i) * side + std::size_t(j)] = acc;
        }
    return out;
}

}  // namespace

LatticeMatch best_lattice_match(const std::vector<std::pair<int, int>>& peaks,
                                int max_offset) {
    LatticeMatch best;
    if (peaks.empty() || max_offset < 2) return best;

    for (int pass = 0; pass < 2; ++pass) {
        const LatticeType type = pass == 0 ? LatticeType::square : LatticeType::diamond;
        for (int s = 2; s <= max_offset; ++s) {
            // lattice points within reach, origin excluded
            std::vector<std::pair<int, int>> lattice;
            for (int a = -max_offset / s; a <= max_offset / s; ++a)
                for (int b = -max_offset / s; b <= max_offset / s; ++b) {
                    if (a == 0 && b == 0) continue;
                    if (type == LatticeType::diamond && (a + b) % 2 != 0) continue;
                    int x = a * s, y = b * s;
                    if (std::abs(x) > max_offset || std::abs(y) > max_offset) continue;
                    lattice.push_back({x, y});
                }
            if (lattice.size() < 4) continue;

            const double radius2 = double(s) * double(s) / 4.0;
            double dev_sum = 0.0;
            std::size_t matched_lattice = 0;
            std::vector<bool> peak_used(peaks.size(), false);
            for (const auto& [lx, ly] : lattice) {
                double bestd = std::numeric_limits<double>::infinity();
                std::size_t besti = peaks.size();
                for (std::size_t i = 0; i < peaks.size(); ++i) {
                    double dx = peaks[i].first - lx, dy = peaks[i].second - ly;
                    double d2 = dx * dx + dy * dy;
                    if (d2 < bestd) {
                        bestd = d2;
                        besti = i;
                    }
                }
                if (besti < peaks.size() && bestd <= radius2) {
                    ++matched_lattice;
                    dev_sum += bestd / (double(s) * double(s));
                    peak_used[besti] = true;
                }
            }
            if (matched_lattice == 0) continue;

            // peaks sitting on the lattice, whether or not they were the
            // nearest match for some lattice point
            std::size_t matched_peaks = 0;
            for (std::size_t i = 0; i < peaks.size(); ++i) {
                if (peak_used[i]) {
                    ++matched_peaks;
                    continue;
                }
                double bestd = std::numeric_limits<double>::infinity();
                for (const auto& [lx, ly] : lattice) {
                    double dx = peaks[i].first - lx, dy = peaks[i].second - ly;
                    bestd = std::min(bestd, dx * dx + dy * dy);
                }
                if (bestd <= radius2) ++matched_peaks;
            }

            const double r1 = double(matched_lattice) / double(lattice.size());
            const double r2 = double(matched_peaks) / double(peaks.size());
            if (r2 == 0.0) continue;
            const double dev = dev_sum / double(matched_lattice);
            const double score = (1.0 + dev / r1) / std::pow(r1 * r2, 3.0);
            if (!best.found || score < best.score) {
                best.found = true;
                best.type = type;
                best.spacing = s;
                best.deviation = dev;
                best.lattice_hit = r1;
                best.peak_hit = r2;
                best.score = score;
            }
        }
    }
    return best;
}

CdResult cd_lattice_score(const DistanceMatrix& ssm) {
    if (ssm.n < 16) throw InvalidInput("cd_lattice_score: need at least a 16x16 matrix");

    const int reach = int(ssm.n / 2);
    const int side = 2 * reach + 1;
    std::vector<double> ac = autocorr2d(ssm, reach);
    std::vector<double> smooth = gaussian_smooth(ac, side);

    CdResult res;
    // strict 5x5 maxima with a complete neighborhood
    for (int i = 2; i + 2 < side; ++i)
        for (int j = 2; j + 2 < side; ++j) {
            if (i == reach && j == reach) continue;  // origin is trivially a peak
            double v = smooth[std::size_t(i) * side + std::size_t(j)];
            bool is_peak = true;
            for (int di = -2; di <= 2 && is_peak; ++di)
                for (int dj = -2; dj <= 2; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    int ii = i + di, jj = j + dj;
                    if (ii == reach && jj == reach) continue;
                    if (smooth[std::size_t(ii) * side + std::size_t(jj)] >= v) {
                        is_peak = false;
                        break;
                    }
                }
            if (is_peak) res.peaks.push_back({i - reach, j - reach});
        }

    const int max_offset = reach - 2;  // peaks need a full 5x5 neighborhood
    std::vector<std::pair<int, int>> usable;
    for (const auto& p : res.peaks)
        if (std::abs(p.first) <= max_offset && std::abs(p.second) <= max_offset)
            usable.push_back(p);

    LatticeMatch match = best_lattice_match(usable, max_offset);
    if (match.found) {
        res.no_lattice = false;
        res.score = match.score;
        res.best = match;
    }
    return res;
}

}  // namespace recur::scores
