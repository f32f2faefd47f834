#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "recur/simd/kernels.hpp"

using namespace recur;

namespace {

const std::vector<std::size_t> kLengths = {0, 1, 3, 4, 7, 8, 9, 31, 64, 1000};

std::vector<double> random_doubles(std::mt19937_64& rng, std::size_t n, double lo,
                                   double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

std::vector<float> random_floats(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<float> u(-2.0f, 2.0f);
    std::vector<float> v(n);
    for (float& x : v) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("backend selection follows the environment override") {
    const char* env = std::getenv("RECUR_SIMD");
    std::string name = simd::active_name();
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        CHECK(name == "scalar");
        CHECK(&simd::active() == &simd::scalar());
    } else {
        CHECK((name == "avx2" || name == "scalar"));
        if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
            CHECK(name == "avx2");
    }
}

TEST_CASE("scalar kernels match plain loops exactly") {
    std::mt19937_64 rng(1);
    const simd::Kernels& k = simd::scalar();
    for (std::size_t n : kLengths) {
        std::vector<double> a = random_doubles(rng, n, -1.0, 1.0);
        std::vector<double> b = random_doubles(rng, n, -1.0, 1.0);
        std::vector<float> fa = random_floats(rng, n);
        std::vector<float> fb = random_floats(rng, n);

        double dot = 0.0, sq = 0.0, fdot = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot += a[i] * b[i];
            double d = a[i] - b[i];
            sq += d * d;
            fdot += double(fa[i]) * double(fb[i]);
            sum += a[i];
        }
        CHECK(k.dot_f64(a.data(), b.data(), n) == dot);
        CHECK(k.sqdist_f64(a.data(), b.data(), n) == sq);
        CHECK(k.dot_f32(fa.data(), fb.data(), n) == fdot);
        CHECK(k.sum_f64(a.data(), n) == sum);

        std::vector<double> acc1(n, 0.5), acc2(n, 0.5);
        k.axpy_f32(acc1.data(), fa.data(), 1.25, n);
        for (std::size_t i = 0; i < n; ++i) acc2[i] += 1.25 * double(fa[i]);
        CHECK(acc1 == acc2);

        k.diff_axpy_f32(acc1.data(), fa.data(), fb.data(), -0.75, n);
        for (std::size_t i = 0; i < n; ++i)
            acc2[i] += -0.75 * (double(fa[i]) - double(fb[i]));
        CHECK(acc1 == acc2);

        std::vector<double> x1 = a, x2 = a;
        k.shift_scale_f64(x1.data(), n, 0.25, 3.0);
        for (std::size_t i = 0; i < n; ++i) x2[i] = (x2[i] - 0.25) * 3.0;
        CHECK(x1 == x2);
    }
}

TEST_CASE("active backend agrees with the reference within fp reassociation") {
    std::mt19937_64 rng(2);
    const simd::Kernels& ref = simd::scalar();
    const simd::Kernels& act = simd::active();
    for (std::size_t n : kLengths) {
        std::vector<double> a = random_doubles(rng, n, -1.0, 1.0);
        std::vector<double> b = random_doubles(rng, n, -1.0, 1.0);
        std::vector<float> fa = random_floats(rng, n);
        std::vector<float> fb = random_floats(rng, n);
        double scale = std::max(1.0, double(n));

        CHECK(act.dot_f64(a.data(), b.data(), n) ==
              doctest::Approx(ref.dot_f64(a.data(), b.data(), n))
                  .epsilon(1e-13)
                  .scale(scale));
        CHECK(act.sqdist_f64(a.data(), b.data(), n) ==
              doctest::Approx(ref.sqdist_f64(a.data(), b.data(), n)).epsilon(1e-13));
        CHECK(act.dot_f32(fa.data(), fb.data(), n) ==
              doctest::Approx(ref.dot_f32(fa.data(), fb.data(), n))
                  .epsilon(1e-12)
                  .scale(scale));
        CHECK(act.sum_f64(a.data(), n) ==
              doctest::Approx(ref.sum_f64(a.data(), n)).epsilon(1e-13).scale(scale));

        std::vector<double> acc1(n, 0.25), acc2(n, 0.25);
        act.axpy_f32(acc1.data(), fa.data(), 0.7, n);
        ref.axpy_f32(acc2.data(), fa.data(), 0.7, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(acc1[i] == doctest::Approx(acc2[i]).epsilon(1e-12));

        act.diff_axpy_f32(acc1.data(), fa.data(), fb.data(), 1.1, n);
        ref.diff_axpy_f32(acc2.data(), fa.data(), fb.data(), 1.1, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(acc1[i] == doctest::Approx(acc2[i]).epsilon(1e-12));

        std::vector<double> x1 = a, x2 = a;
        act.shift_scale_f64(x1.data(), n, -0.4, 2.5);
        ref.shift_scale_f64(x2.data(), n, -0.4, 2.5);
        CHECK(x1 == x2);  // one subtract and one multiply, identical rounding
    }
}

TEST_CASE("sqdist is nonnegative and diff_axpy cancels equal inputs exactly") {
    std::mt19937_64 rng(3);
    std::vector<float> f = random_floats(rng, 257);
    const simd::Kernels& act = simd::active();
    CHECK(act.sqdist_f64(nullptr, nullptr, 0) == 0.0);

    std::vector<double> acc(f.size(), 0.0);
    act.diff_axpy_f32(acc.data(), f.data(), f.data(), 123.456, f.size());
    for (double x : acc) CHECK(x == 0.0);
}
