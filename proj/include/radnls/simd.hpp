#pragma once

// Pointwise and reduction kernels used by the spectral inner loops.
//
// Every kernel has a portable scalar reference in simd::scalar. AVX2 (x86-64)
// and NEON (AArch64) variants are compiled when the toolchain supports them
// and selected at runtime; the equivalence tests pin them to the reference.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace radnls::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

struct KernelTable {
    /// u[k] *= m[k]
    void (*scale_real)(cplx* u, const double* m, std::size_t n);
    /// u[k] *= m[k] (complex product)
    void (*mul_complex)(cplx* u, const cplx* m, std::size_t n);
    /// out[k] = |u[k]|^2
    void (*abs2)(const cplx* u, double* out, std::size_t n);
    /// sum_k w[k] |u[k]|^2
    double (*weighted_abs2_sum)(const cplx* u, const double* w, std::size_t n);
    /// sum_k w[k] |u[k]|^4
    double (*weighted_abs4_sum)(const cplx* u, const double* w, std::size_t n);
    /// u[k] *= phase[k] where phase[k] = (cos, sin) pairs already evaluated
    void (*rotate)(cplx* u, const double* cos_part, const double* sin_part, std::size_t n);
};

namespace scalar {
void scale_real(cplx* u, const double* m, std::size_t n);
void mul_complex(cplx* u, const cplx* m, std::size_t n);
void abs2(const cplx* u, double* out, std::size_t n);
double weighted_abs2_sum(const cplx* u, const double* w, std::size_t n);
double weighted_abs4_sum(const cplx* u, const double* w, std::size_t n);
void rotate(cplx* u, const double* c, const double* s, std::size_t n);
} // namespace scalar

bool backend_available(Backend b);
/// Kernel table for a specific backend; throws ConfigError if unavailable.
const KernelTable& kernels(Backend b);
/// Kernel table for the active backend.
const KernelTable& kernels();

Backend active_backend();
/// Switch the process-wide backend (tests and benchmarking).
void set_backend(Backend b);
std::string_view backend_name(Backend b);

// Span conveniences over the active table.
void scale_real(std::span<cplx> u, std::span<const double> m);
void mul_complex(std::span<cplx> u, std::span<const cplx> m);
void abs2(std::span<const cplx> u, std::span<double> out);
double weighted_abs2_sum(std::span<const cplx> u, std::span<const double> w);
double weighted_abs4_sum(std::span<const cplx> u, std::span<const double> w);

} // namespace radnls::simd
