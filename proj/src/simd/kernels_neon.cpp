// NEON variants for AArch64; one complex<double> per float64x2_t.

#include "variants.hpp"

#include <arm_neon.h>

namespace radnls::simd::neon {

namespace {

inline float64x2_t cmul(float64x2_t u, double c, double s) {
    // [a, b] * (c + i s) = [a c - b s, a s + b c]
    const float64x2_t swapped = vextq_f64(u, u, 1);
    const float64x2_t sgn = {-s, s};
    return vfmaq_f64(vmulq_n_f64(u, c), swapped, sgn);
}

} // namespace

void scale_real(cplx* u, const double* m, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    for (std::size_t k = 0; k < n; ++k)
        vst1q_f64(d + 2 * k, vmulq_n_f64(vld1q_f64(d + 2 * k), m[k]));
}

void mul_complex(cplx* u, const cplx* m, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    const auto* e = reinterpret_cast<const double*>(m);
    for (std::size_t k = 0; k < n; ++k)
        vst1q_f64(d + 2 * k, cmul(vld1q_f64(d + 2 * k), e[2 * k], e[2 * k + 1]));
}

void abs2(const cplx* u, double* out, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    for (std::size_t k = 0; k < n; ++k) {
        const float64x2_t v = vld1q_f64(d + 2 * k);
        out[k] = vaddvq_f64(vmulq_f64(v, v));
    }
}

double weighted_abs2_sum(const cplx* u, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const float64x2_t v = vld1q_f64(d + 2 * k);
        acc = vfmaq_n_f64(acc, vmulq_f64(v, v), w[k]);
    }
    return vaddvq_f64(acc);
}

double weighted_abs4_sum(const cplx* u, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const float64x2_t v = vld1q_f64(d + 2 * k);
        const double a2 = vaddvq_f64(vmulq_f64(v, v));
        acc += w[k] * a2 * a2;
    }
    return acc;
}

void rotate(cplx* u, const double* c, const double* s, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    for (std::size_t k = 0; k < n; ++k)
        vst1q_f64(d + 2 * k, cmul(vld1q_f64(d + 2 * k), c[k], s[k]));
}

} // namespace radnls::simd::neon
