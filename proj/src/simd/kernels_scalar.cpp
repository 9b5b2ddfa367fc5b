#include "radnls/simd.hpp"

namespace radnls::simd::scalar {

// Complex products are spelled out in real arithmetic: std::complex operator*
// takes the Annex G NaN-recovery path, which is slow and never needed here.

void scale_real(cplx* u, const double* m, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    for (std::size_t k = 0; k < n; ++k) {
        d[2 * k] *= m[k];
        d[2 * k + 1] *= m[k];
    }
}

void mul_complex(cplx* u, const cplx* m, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    const auto* e = reinterpret_cast<const double*>(m);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = d[2 * k], b = d[2 * k + 1];
        const double c = e[2 * k], s = e[2 * k + 1];
        d[2 * k] = a * c - b * s;
        d[2 * k + 1] = a * s + b * c;
    }
}

void abs2(const cplx* u, double* out, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = d[2 * k] * d[2 * k] + d[2 * k + 1] * d[2 * k + 1];
}

double weighted_abs2_sum(const cplx* u, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += w[k] * (d[2 * k] * d[2 * k] + d[2 * k + 1] * d[2 * k + 1]);
    return acc;
}

double weighted_abs4_sum(const cplx* u, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a2 = d[2 * k] * d[2 * k] + d[2 * k + 1] * d[2 * k + 1];
        acc += w[k] * a2 * a2;
    }
    return acc;
}

void rotate(cplx* u, const double* c, const double* s, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = d[2 * k], b = d[2 * k + 1];
        d[2 * k] = a * c[k] - b * s[k];
        d[2 * k + 1] = a * s[k] + b * c[k];
    }
}

} // namespace radnls::simd::scalar
