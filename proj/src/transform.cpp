#include "radnls/transform.hpp"

#include "grid_access.hpp"
#include "radnls/error.hpp"
#include "radnls/simd.hpp"
#include "sine_transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radnls {

Spectrum to_frequency(const RadialField& u) {
    const auto& t = GridAccess::tables(u.grid);
    Spectrum out(u.grid, u.values);
    simd::scale_real(out.values, t.radii);
    detail::sine_series(out.values);
    simd::scale_real(out.values, t.forward_scale);
    return out;
}

RadialField from_frequency(const Spectrum& spectrum) {
    const auto& t = GridAccess::tables(spectrum.grid);
    RadialField out(spectrum.grid, spectrum.values);
    simd::scale_real(out.values, t.freqs);
    detail::sine_series(out.values);
    simd::scale_real(out.values, t.inverse_scale);
    return out;
}

void detail::apply_scaled_multiplier(std::span<cplx> values, const RadialGrid& g, std::span<const cplx> m_scaled) {
    const auto& t = GridAccess::tables(g);
    simd::scale_real(values, t.radii);
    sine_series(values);
    simd::mul_complex(values, m_scaled);
    sine_series(values);
    simd::scale_real(values, t.inv_radii);
}

std::vector<cplx> tabulate(const RadialGrid& g, const std::function<cplx(double)>& m) {
    const auto rho = g.frequencies();
    std::vector<cplx> out(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k)
        out[k] = m(rho[k]);
    return out;
}

RadialField apply_multiplier(const RadialField& u, std::span<const cplx> m) {
    if (m.size() != u.size())
        throw ConfigError("multiplier length does not match the grid");
    const double scale = 1.0 / (2.0 * static_cast<double>(u.size()));
    std::vector<cplx> scaled(m.begin(), m.end());
    for (auto& z : scaled)
        z *= scale;
    RadialField out = u;
    detail::apply_scaled_multiplier(out.values, u.grid, scaled);
    return out;
}

RadialField apply_multiplier(const RadialField& u, std::span<const double> m) {
    if (m.size() != u.size())
        throw ConfigError("multiplier length does not match the grid");
    const auto& t = GridAccess::tables(u.grid);
    const double scale = 1.0 / (2.0 * static_cast<double>(u.size()));
    std::vector<double> scaled(m.begin(), m.end());
    for (auto& x : scaled)
        x *= scale;
    RadialField out = u;
    simd::scale_real(out.values, t.radii);
    detail::sine_series(out.values);
    simd::scale_real(out.values, scaled);
    detail::sine_series(out.values);
    simd::scale_real(out.values, t.inv_radii);
    return out;
}

RadialField apply_multiplier(const RadialField& u, const std::function<cplx(double)>& m) {
    const auto table = tabulate(u.grid, m);
    return apply_multiplier(u, std::span<const cplx>(table));
}

double boundary_mass_fraction(const RadialField& u) {
    const auto w = u.grid.volume_weights();
    const double total = simd::weighted_abs2_sum(u.values, w);
    if (total == 0.0)
        return 0.0;
    const auto r = u.grid.radii();
    const double edge = 0.9 * u.grid.r_max();
    const auto first = static_cast<std::size_t>(std::upper_bound(r.begin(), r.end(), edge) - r.begin());
    const std::span<const cplx> tail(u.values.data() + first, u.size() - first);
    return simd::weighted_abs2_sum(tail, w.subspan(first)) / total;
}

void check_boundary(const RadialField& u, double tol, std::string_view context) {
    const double frac = boundary_mass_fraction(u);
    if (!(frac <= tol)) {
        std::ostringstream msg;
        msg << "tail leak";
        if (!context.empty())
            msg << " in " << context;
        msg << ": mass fraction beyond 0.9 r_max is " << frac << " (limit " << tol << ", r_max "
            << u.grid.r_max() << ")";
        throw TailLeakError(msg.str());
    }
}

double radial_integral_unchecked(const RadialField& u, double q, double alpha) {
    if (!(q >= 1.0))
        throw RangeError("integral exponent q must be >= 1");
    if (!(alpha >= 0.0))
        throw RangeError("weight power alpha must be >= 0");
    const auto w = u.grid.volume_weights();
    std::vector<double> weights;
    std::span<const double> wspan = w;
    if (alpha != 0.0) {
        const auto r = u.grid.radii();
        weights.resize(w.size());
        for (std::size_t k = 0; k < w.size(); ++k)
            weights[k] = w[k] * std::pow(r[k], alpha);
        wspan = weights;
    }
    if (q == 2.0)
        return simd::weighted_abs2_sum(u.values, wspan);
    if (q == 4.0)
        return simd::weighted_abs4_sum(u.values, wspan);
    std::vector<double> mod2(u.size());
    simd::abs2(u.values, mod2);
    const double half = 0.5 * q;
    double acc = 0.0;
    for (std::size_t k = 0; k < mod2.size(); ++k)
        if (mod2[k] != 0.0)
            acc += wspan[k] * std::pow(mod2[k], half);
    return acc;
}

double radial_integral(const RadialField& u, double q, double alpha, double boundary_tol) {
    check_boundary(u, boundary_tol, "radial_integral");
    return radial_integral_unchecked(u, q, alpha);
}

double lq_norm(const RadialField& u, double q) { return std::pow(radial_integral_unchecked(u, q), 1.0 / q); }

namespace {

double top_octave_fraction_of(std::span<const cplx> sine_coeffs, const RadialGrid& g) {
    double total = 0.0, top = 0.0;
    const auto rho = g.frequencies();
    const double cut = 0.5 * g.rho_max();
    for (std::size_t k = 0; k < sine_coeffs.size(); ++k) {
        const double a = std::norm(sine_coeffs[k]);
        total += a;
        if (rho[k] > cut)
            top += a;
    }
    return total == 0.0 ? 0.0 : top / total;
}

} // namespace

double top_octave_fraction(const RadialField& u) {
    const auto& t = GridAccess::tables(u.grid);
    std::vector<cplx> psi(u.values);
    simd::scale_real(psi, t.radii);
    detail::sine_series(psi);
    return top_octave_fraction_of(psi, u.grid);
}

RadialField radial_derivative(const RadialField& u, double top_octave_tol) {
    const auto& t = GridAccess::tables(u.grid);
    const std::size_t n = u.size();
    std::vector<cplx> coeff(u.values);
    simd::scale_real(coeff, t.radii);
    detail::sine_series(coeff);
    if (const double frac = top_octave_fraction_of(coeff, u.grid); frac > top_octave_tol) {
        std::ostringstream msg;
        msg << "radial derivative would alias: top-octave mass fraction " << frac << " exceeds " << top_octave_tol;
        throw AliasingError(msg.str());
    }
    // psi(r) = sum_k a_k sin(rho_k r) with a_k = Y_k / n; psi' = sum_k a_k rho_k cos(rho_k r).
    std::vector<double> factor(n);
    for (std::size_t k = 0; k < n; ++k)
        factor[k] = t.freqs[k] / (2.0 * static_cast<double>(n));
    simd::scale_real(coeff, factor);
    RadialField out(u.grid);
    detail::cosine_series(coeff, out.values);
    for (std::size_t j = 0; j < n; ++j)
        out.values[j] = (out.values[j] - u.values[j]) * t.inv_radii[j];
    return out;
}

double weighted_sup(const RadialField& u, double alpha) {
    if (!(alpha >= 0.0))
        throw RangeError("weight power alpha must be >= 0");
    const auto r = u.grid.radii();
    double best = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double v = std::abs(u.values[k]) * (alpha == 0.0 ? 1.0 : std::pow(r[k], alpha));
        best = std::max(best, v);
    }
    return best;
}

} // namespace radnls
