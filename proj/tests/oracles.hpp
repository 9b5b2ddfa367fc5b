#pragma once

// Closed-form reference values used by the tests. Everything here is written
// from the analytic formulas directly and shares no code with the library.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// \int_0^inf r^2 exp(-a r^2) 4 pi r^2... helper: \int exp(-a |x|^2) dx over R^3.
inline double gaussian_integral(double a) { return std::pow(pi / a, 1.5); }

/// Fourier transform of exp(-r^2/2) with f^(xi) = \int f e^{-i x xi} dx.
inline double gaussian_ft(double rho) { return std::pow(2.0 * pi, 1.5) * std::exp(-0.5 * rho * rho); }

/// e^{it Laplacian} exp(-r^2/2) = (1 + 2it)^{-3/2} exp(-r^2 / (2 (1 + 2it))).
inline cplx free_gaussian(double t, double r) {
    const cplx a(1.0, 2.0 * t);
    return std::pow(a, -1.5) * std::exp(-r * r / (2.0 * a));
}

/// ||e^{it Laplacian} exp(-r^2/2)||_{L^q}^q.
inline double free_gaussian_lq(double t, double q) {
    const double s = 1.0 + 4.0 * t * t;
    // |u|^2 = s^{-3/2} exp(-r^2/s)  ->  |u|^q = s^{-3q/4} exp(-q r^2 / (2 s))
    return std::pow(s, -0.75 * q) * gaussian_integral(q / (2.0 * s));
}

/// Mass pi^{3/2}, kinetic (3/4) pi^{3/2}, L^4 integral pi^{3/2} / (2 sqrt 2) of exp(-r^2/2).
inline const double gaussian_mass = std::pow(pi, 1.5);
inline const double gaussian_grad_sq = 1.5 * std::pow(pi, 1.5);
inline const double gaussian_l4 = std::pow(pi, 1.5) / (2.0 * std::sqrt(2.0));

/// ||exp(-r^2/2)||_{H^s dot}^2 = (2 pi)^-3 \int rho^{2s} (2 pi)^3 e^{-rho^2} 4 pi rho^2 d rho = 2 pi Gamma(s + 3/2).
inline double gaussian_sobolev(double s) { return std::sqrt(2.0 * pi * std::tgamma(s + 1.5)); }

/// Homogeneous H^s norm of c1 exp(-r^2/2) + c2 lambda exp(-lambda^2 r^2/2), from the Gaussian moment
/// \int rho^{2s} exp(-a rho^2) d^3 rho / (2 pi)^3 * (2 pi)^3 = 2 pi Gamma(s + 3/2) a^{-(s + 3/2)}.
inline double two_bump_sobolev(double c1, double c2, double lambda, double s) {
    const double e = s + 1.5;
    const double cross = std::pow(0.5 * (1.0 + 1.0 / (lambda * lambda)), -e);
    const double sq = c1 * c1 + 2.0 * c1 * c2 * cross / (lambda * lambda) + c2 * c2 * std::pow(lambda, 2.0 * s - 1.0);
    return std::sqrt(2.0 * pi * std::tgamma(e) * sq);
}

inline std::vector<cplx> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> d;
    std::vector<cplx> v(n);
    for (auto& z : v)
        z = cplx(d(gen), d(gen));
    return v;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double l2(const std::vector<cplx>& a) {
    double s = 0.0;
    for (const auto& z : a)
        s += std::norm(z);
    return std::sqrt(s);
}

} // namespace oracle
