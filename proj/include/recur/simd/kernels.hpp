#pragma once

#include <cstddef>

// Hot inner loops used by the distance, filtering and normalization stages.
// A scalar reference implementation always exists; on x86-64 an AVX2+FMA
// variant is selected at runtime when the CPU supports it. The environment
// variable RECUR_SIMD=scalar forces the reference path.

namespace recur::simd {

struct Kernels {
    // sum_i a[i]*b[i]
    double (*dot_f64)(const double* a, const double* b, std::size_t n);
    // sum_i (a[i]-b[i])^2
    double (*sqdist_f64)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]*b[i], float inputs, double accumulation
    double (*dot_f32)(const float* a, const float* b, std::size_t n);
    // acc[i] += s * x[i], float input, double accumulator
    void (*axpy_f32)(double* acc, const float* x, double s, std::size_t n);
    // acc[i] += s * (a[i] - b[i]); the difference is taken before the
    // multiply, so equal inputs contribute an exact zero
    void (*diff_axpy_f32)(double* acc, const float* a, const float* b, double s,
                          std::size_t n);
    // sum_i x[i]
    double (*sum_f64)(const double* x, std::size_t n);
    // x[i] = (x[i] - sub) * mul
    void (*shift_scale_f64)(double* x, std::size_t n, double sub, double mul);
};

// Reference implementation (plain loops).
const Kernels& scalar();

// Best implementation for this machine, chosen once at first use.
const Kernels& active();

// Name of the active backend: "avx2" or "scalar".
const char* active_name();

}  // namespace recur::simd
