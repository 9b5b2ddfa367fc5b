// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the runtime CPU check in dispatch.cpp.

#include "variants.hpp"

#include <immintrin.h>

namespace radnls::simd::avx2 {

namespace {

// [m0, m1] -> [m0, m0, m1, m1]
inline __m256d spread_pair(const double* m) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m)), 0x50);
}

// u = [a0, b0, a1, b1], m = [c0, s0, c1, s1] -> u * m
inline __m256d cmul(__m256d u, __m256d cc, __m256d ss) {
    const __m256d swapped = _mm256_permute_pd(u, 0x5);
    return _mm256_fmaddsub_pd(u, cc, _mm256_mul_pd(swapped, ss));
}

// |u|^2 of four complex values held in two registers, in natural order
inline __m256d abs2x4(__m256d v0, __m256d v1) {
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    return _mm256_permute4x64_pd(h, 0xD8);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

void scale_real(cplx* u, const double* m, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d m0 = spread_pair(m + k);
        const __m256d m1 = spread_pair(m + k + 2);
        _mm256_storeu_pd(d + 2 * k, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * k), m0));
        _mm256_storeu_pd(d + 2 * k + 4, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * k + 4), m1));
    }
    scalar::scale_real(u + k, m + k, n - k);
}

void mul_complex(cplx* u, const cplx* m, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    const auto* e = reinterpret_cast<const double*>(m);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d mv = _mm256_loadu_pd(e + 2 * k);
        const __m256d cc = _mm256_movedup_pd(mv);
        const __m256d ss = _mm256_permute_pd(mv, 0xF);
        _mm256_storeu_pd(d + 2 * k, cmul(_mm256_loadu_pd(d + 2 * k), cc, ss));
    }
    scalar::mul_complex(u + k, m + k, n - k);
}

void abs2(const cplx* u, double* out, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        _mm256_storeu_pd(out + k, abs2x4(_mm256_loadu_pd(d + 2 * k), _mm256_loadu_pd(d + 2 * k + 4)));
    scalar::abs2(u + k, out + k, n - k);
}

double weighted_abs2_sum(const cplx* u, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        const __m256d a0 = abs2x4(_mm256_loadu_pd(d + 2 * k), _mm256_loadu_pd(d + 2 * k + 4));
        const __m256d a1 = abs2x4(_mm256_loadu_pd(d + 2 * k + 8), _mm256_loadu_pd(d + 2 * k + 12));
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), a0, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k + 4), a1, acc1);
    }
    return hsum(_mm256_add_pd(acc0, acc1)) + scalar::weighted_abs2_sum(u + k, w + k, n - k);
}

double weighted_abs4_sum(const cplx* u, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(u);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        const __m256d a0 = abs2x4(_mm256_loadu_pd(d + 2 * k), _mm256_loadu_pd(d + 2 * k + 4));
        const __m256d a1 = abs2x4(_mm256_loadu_pd(d + 2 * k + 8), _mm256_loadu_pd(d + 2 * k + 12));
        acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k), a0), a0, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k + 4), a1), a1, acc1);
    }
    return hsum(_mm256_add_pd(acc0, acc1)) + scalar::weighted_abs4_sum(u + k, w + k, n - k);
}

void rotate(cplx* u, const double* c, const double* s, std::size_t n) {
    auto* d = reinterpret_cast<double*>(u);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
        _mm256_storeu_pd(d + 2 * k, cmul(_mm256_loadu_pd(d + 2 * k), spread_pair(c + k), spread_pair(s + k)));
    scalar::rotate(u + k, c + k, s + k, n - k);
}

} // namespace radnls::simd::avx2
