#pragma once

#include "radnls/simd.hpp"

namespace radnls::simd::avx2 {
void scale_real(cplx* u, const double* m, std::size_t n);
void mul_complex(cplx* u, const cplx* m, std::size_t n);
void abs2(const cplx* u, double* out, std::size_t n);
double weighted_abs2_sum(const cplx* u, const double* w, std::size_t n);
double weighted_abs4_sum(const cplx* u, const double* w, std::size_t n);
void rotate(cplx* u, const double* c, const double* s, std::size_t n);
} // namespace radnls::simd::avx2

namespace radnls::simd::neon {
void scale_real(cplx* u, const double* m, std::size_t n);
void mul_complex(cplx* u, const cplx* m, std::size_t n);
void abs2(const cplx* u, double* out, std::size_t n);
double weighted_abs2_sum(const cplx* u, const double* w, std::size_t n);
double weighted_abs4_sum(const cplx* u, const double* w, std::size_t n);
void rotate(cplx* u, const double* c, const double* s, std::size_t n);
} // namespace radnls::simd::neon
