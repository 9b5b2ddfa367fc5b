#include "radnls/simd.hpp"

#include "radnls/error.hpp"
#include "variants.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

namespace radnls::simd {

namespace {

constexpr KernelTable scalar_table{
    scalar::scale_real, scalar::mul_complex, scalar::abs2,
    scalar::weighted_abs2_sum, scalar::weighted_abs4_sum, scalar::rotate};

#if defined(RADNLS_HAVE_AVX2)
constexpr KernelTable avx2_table{
    avx2::scale_real, avx2::mul_complex, avx2::abs2,
    avx2::weighted_abs2_sum, avx2::weighted_abs4_sum, avx2::rotate};
#endif

#if defined(RADNLS_HAVE_NEON)
constexpr KernelTable neon_table{
    neon::scale_real, neon::mul_complex, neon::abs2,
    neon::weighted_abs2_sum, neon::weighted_abs4_sum, neon::rotate};
#endif

bool cpu_has_avx2() {
#if defined(RADNLS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() {
    if (const char* env = std::getenv("RADNLS_SIMD")) {
        const std::string v(env);
        if (v == "scalar")
            return Backend::Scalar;
        if (v == "avx2" && backend_available(Backend::Avx2))
            return Backend::Avx2;
        if (v == "neon" && backend_available(Backend::Neon))
            return Backend::Neon;
    }
    if (backend_available(Backend::Avx2))
        return Backend::Avx2;
    if (backend_available(Backend::Neon))
        return Backend::Neon;
    return Backend::Scalar;
}

std::atomic<Backend>& active() {
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

} // namespace

bool backend_available(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2: {
        static const bool ok = cpu_has_avx2();
        return ok;
    }
    case Backend::Neon:
#if defined(RADNLS_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& kernels(Backend b) {
    if (!backend_available(b))
        throw ConfigError("SIMD backend '" + std::string(backend_name(b)) + "' is not available on this machine");
    switch (b) {
#if defined(RADNLS_HAVE_AVX2)
    case Backend::Avx2:
        return avx2_table;
#endif
#if defined(RADNLS_HAVE_NEON)
    case Backend::Neon:
        return neon_table;
#endif
    default:
        return scalar_table;
    }
}

const KernelTable& kernels() { return kernels(active().load(std::memory_order_relaxed)); }

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_available(b))
        throw ConfigError("SIMD backend '" + std::string(backend_name(b)) + "' is not available on this machine");
    active().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return "scalar";
    case Backend::Avx2:
        return "avx2";
    case Backend::Neon:
        return "neon";
    }
    return "unknown";
}

void scale_real(std::span<cplx> u, std::span<const double> m) {
    assert(m.size() >= u.size());
    kernels().scale_real(u.data(), m.data(), u.size());
}

void mul_complex(std::span<cplx> u, std::span<const cplx> m) {
    assert(m.size() >= u.size());
    kernels().mul_complex(u.data(), m.data(), u.size());
}

void abs2(std::span<const cplx> u, std::span<double> out) {
    assert(out.size() >= u.size());
    kernels().abs2(u.data(), out.data(), u.size());
}

double weighted_abs2_sum(std::span<const cplx> u, std::span<const double> w) {
    assert(w.size() >= u.size());
    return kernels().weighted_abs2_sum(u.data(), w.data(), u.size());
}

double weighted_abs4_sum(std::span<const cplx> u, std::span<const double> w) {
    assert(w.size() >= u.size());
    return kernels().weighted_abs4_sum(u.data(), w.data(), u.size());
}

} // namespace radnls::simd
