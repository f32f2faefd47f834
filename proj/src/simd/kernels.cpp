#include "recur/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace recur::simd {

namespace {

double dot_f64_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sqdist_f64_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double dot_f32_scalar(const float* a, const float* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += double(a[i]) * double(b[i]);
    return s;
}

void axpy_f32_scalar(double* acc, const float* x, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += s * double(x[i]);
}

void diff_axpy_f32_scalar(double* acc, const float* a, const float* b, double s,
                          std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += s * (double(a[i]) - double(b[i]));
}

double sum_f64_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

void shift_scale_f64_scalar(double* x, std::size_t n, double sub, double mul) {
    for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] - sub) * mul;
}

const Kernels kScalar = {
    dot_f64_scalar,      sqdist_f64_scalar, dot_f32_scalar,  axpy_f32_scalar,
    diff_axpy_f32_scalar, sum_f64_scalar,    shift_scale_f64_scalar,
};

}  // namespace

const Kernels& scalar() { return kScalar; }

#if defined(RECUR_AVX2_TU)
namespace detail {
const Kernels& avx2_kernels();
}

namespace {
bool want_scalar_override() {
    const char* env = std::getenv("RECUR_SIMD");
    return env != nullptr && std::strcmp(env, "scalar") == 0;
}

struct Dispatch {
    const Kernels* k;
    const char* name;
    Dispatch() {
        if (!want_scalar_override() && __builtin_cpu_supports("avx2") &&
            __builtin_cpu_supports("fma")) {
            k = &detail::avx2_kernels();
            name = "avx2";
        } else {
            k = &kScalar;
            name = "scalar";
        }
    }
};

const Dispatch& dispatch() {
    static const Dispatch d;
    return d;
}
}  // namespace

const Kernels& active() { return *dispatch().k; }
const char* active_name() { return dispatch().name; }
#else
const Kernels& active() { return kScalar; }
const char* active_name() { return "scalar"; }
#endif

}  // namespace recur::simd
