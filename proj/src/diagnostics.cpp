#include "radnls/diagnostics.hpp"

#include "grid_access.hpp"
#include "radnls/error.hpp"
#include "radnls/littlewood_paley.hpp"
#include "sine_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace radnls {

namespace {

using std::numbers::pi;

constexpr double kNoCheck = std::numeric_limits<double>::infinity();

void maybe_check(const RadialField& u, double tol, std::string_view what) {
    if (tol < kNoCheck)
        check_boundary(u, tol, what);
}

struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

GaussLegendre gauss_legendre(int m) {
    GaussLegendre q;
    q.x.resize(static_cast<std::size_t>(m));
    q.w.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        q.x[static_cast<std::size_t>(i)] = z;
        q.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return q;
}

} // namespace

double mass(const RadialField& u, double boundary_tol) {
    maybe_check(u, boundary_tol, "mass");
    return radial_integral_unchecked(u, 2.0);
}

double kinetic_energy(const RadialField& u, double boundary_tol) {
    maybe_check(u, boundary_tol, "kinetic_energy");
    const double h1 = sobolev_norm(u, 1.0);
    return 0.5 * h1 * h1;
}

double energy(const RadialField& u, double p, double boundary_tol) {
    if (!(p > 1.0))
        throw RangeError("nonlinearity power p must exceed 1");
    maybe_check(u, boundary_tol, "energy");
    return kinetic_energy(u, kNoCheck) + radial_integral_unchecked(u, p + 1.0) / (p + 1.0);
}

std::array<double, 3> momentum(const RadialField& u, double boundary_tol) {
    maybe_check(u, boundary_tol, "momentum");
    const auto du = radial_derivative(u, 1.0);
    const auto w = u.grid.volume_weights();
    // Radial factor of the current: \int Im(conj(u) d_r u) r^2 dr.
    double radial = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        radial += w[k] / (4.0 * pi) * (std::conj(u.values[k]) * du.values[k]).imag();
    // Angular factor: \int_{S^2} x/|x| dOmega by Gauss-Legendre in cos(theta) times the trapezoid rule in phi.
    static const GaussLegendre gl = gauss_legendre(16);
    constexpr int n_phi = 32;
    std::array<double, 3> dir{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double mu = gl.x[i];
        const double s = std::sqrt(1.0 - mu * mu);
        for (int k = 0; k < n_phi; ++k) {
            const double phi = 2.0 * pi * k / n_phi;
            const double wt = gl.w[i] * 2.0 * pi / n_phi;
            dir[0] += wt * s * std::cos(phi);
            dir[1] += wt * s * std::sin(phi);
            dir[2] += wt * mu;
        }
    }
    return {radial * dir[0], radial * dir[1], radial * dir[2]};
}

RadialField vector_field(const RadialField& v, double t) {
    const auto dv = radial_derivative(v);
    const auto r = v.grid.radii();
    RadialField out(v.grid);
    const cplx c(0.0, 2.0 * t);
    for (std::size_t k = 0; k < v.size(); ++k)
        out.values[k] = r[k] * v.values[k] + c * dv.values[k];
    return out;
}

RadialField moment_free_flow(const RadialField& f, double t) {
    const auto& tb = GridAccess::tables(f.grid);
    const std::size_t n = f.size();
    const auto fhat = to_frequency(f);

    // \int cos(rho r) r^2 f dr on the rho nodes.
    std::vector<cplx> r2f(n);
    for (std::size_t j = 0; j < n; ++j)
        r2f[j] = tb.radii[j] * tb.radii[j] * f.values[j];
    std::vector<cplx> cos_int(n);
    detail::cosine_series(r2f, cos_int);

    // h = i (d fhat / d rho) e^{-i t rho^2}, and h rho.
    std::vector<cplx> h(n), h_rho(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double rho = tb.freqs[k];
        const cplx dfhat = -fhat.values[k] / rho + 4.0 * pi / rho * (0.5 * tb.dr) * cos_int[k];
        h[k] = cplx(0.0, 1.0) * dfhat * std::polar(1.0, -t * rho * rho);
        h_rho[k] = h[k] * rho;
    }
    std::vector<cplx> cos_part(n);
    detail::cosine_series(h_rho, cos_part);
    detail::sine_series(h);

    // j_1(a) = sin(a)/a^2 - cos(a)/a; the angular integral of cos(theta) e^{i a cos(theta)} is 4 pi i j_1(a).
    const cplx pref = cplx(0.0, 4.0 * pi) / (8.0 * pi * pi * pi) * tb.drho * 0.5;
    RadialField out(f.grid);
    for (std::size_t j = 0; j < n; ++j)
        out.values[j] = pref * (h[j] * tb.inv_radii[j] * tb.inv_radii[j] - cos_part[j] * tb.inv_radii[j]);
    return out;
}

double pseudoconformal_rate(double p) { return 4.0 * (kDimension * (p - 1.0) - 4.0) / (p + 1.0); }

double pseudoconformal_rate_quoted(double p) { return 4.0 / (p + 1.0); }

PseudoconformalRecord pseudoconformal_energy(const RadialField& v, double t, double p, double boundary_tol) {
    if (!(t >= 0.0))
        throw RangeError("pseudoconformal energy needs t >= 0");
    if (!(p > 1.0))
        throw RangeError("nonlinearity power p must exceed 1");
    maybe_check(v, boundary_tol, "pseudoconformal_energy");
    const double lp = radial_integral_unchecked(v, p + 1.0);
    PseudoconformalRecord rec;
    rec.t = t;
    rec.part_vector = radial_integral_unchecked(vector_field(v, t), 2.0);
    rec.part_potential = 8.0 / (p + 1.0) * t * t * lp;
    rec.energy = rec.part_vector + rec.part_potential;
    rec.rhs = -pseudoconformal_rate(p) * t * lp;
    rec.rhs_quoted = -pseudoconformal_rate_quoted(p) * t * lp;
    return rec;
}

MonotonicityReport monotonicity_defect(const std::vector<PseudoconformalRecord>& records, RateForm form,
                                       double floor_rel, double max_spacing) {
    if (records.size() < 3)
        throw StrideError("monotonicity check needs at least three pseudoconformal samples");
    const double h = records[1].t - records[0].t;
    if (!(h > 0.0) || h > max_spacing) {
        std::ostringstream msg;
        msg << "pseudoconformal sample spacing " << h << " is outside (0, " << max_spacing << "]";
        throw StrideError(msg.str());
    }
    for (std::size_t i = 1; i < records.size(); ++i)
        if (std::abs((records[i].t - records[i - 1].t) - h) > 1e-9 * std::max(1.0, std::abs(records[i].t)))
            throw StrideError("pseudoconformal samples are not uniformly spaced");

    MonotonicityReport rep;
    const double e0 = records.front().energy;
    rep.floor = floor_rel * e0;
    for (std::size_t i = 1; i + 1 < records.size(); ++i) {
        const double d = (records[i + 1].energy - records[i - 1].energy) / (2.0 * h);
        const double rhs = form == RateForm::Exact ? records[i].rhs : records[i].rhs_quoted;
        rep.t.push_back(records[i].t);
        rep.dEdt.push_back(d);
        rep.rhs.push_back(rhs);
        rep.defect.push_back(d - rhs);
        const double denom = std::max(std::abs(rhs), rep.floor);
        if (denom > 0.0)
            rep.max_relative_defect = std::max(rep.max_relative_defect, std::abs(d - rhs) / denom);
    }
    rep.max_relative_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double inc = records[i].energy - records[i - 1].energy;
        rep.max_relative_increase = std::max(rep.max_relative_increase, e0 > 0.0 ? inc / e0 : inc);
    }
    return rep;
}

DispersiveSeries dispersive_ratio(const RadialField& u0, double p, const std::vector<double>& times, double besov) {
    const double a = 1.0 / (p - 1.0);
    const double frac = 2.0 / (p - 1.0);
    DispersiveSeries out;
    out.besov = besov;
    const auto rho = u0.grid.frequencies();
    const double scale = 1.0 / (2.0 * static_cast<double>(u0.size()));
    std::vector<cplx> m(rho.size());
    for (double t : times) {
        if (!(t > 0.0))
            throw RangeError("dispersive ratios need t > 0");
        const auto u = free_flow(u0, t);
        for (std::size_t k = 0; k < rho.size(); ++k)
            m[k] = std::polar(scale * std::pow(rho[k], frac), -rho[k] * rho[k] * t);
        RadialField fr = u0;
        detail::apply_scaled_multiplier(fr.values, fr.grid, m);
        const double inv_b = besov > 0.0 ? 1.0 / besov : 0.0;
        out.t.push_back(t);
        out.sup_ratio.push_back(std::pow(t, a) * weighted_sup(u, 0.0) * inv_b);
        out.gradient_ratio.push_back(std::pow(t, a + 0.5) * weighted_sup(radial_derivative(u), 0.0) * inv_b);
        out.fractional_ratio.push_back(std::pow(t, frac) * weighted_sup(fr, 0.0) * inv_b);
    }
    return out;
}

double morawetz_rhs(const RadialField& u0) {
    const double h12 = sobolev_norm(u0, 0.5);
    const double h1 = sobolev_norm(u0, 1.0);
    const double l2 = sobolev_norm(u0, 0.0);
    return (1.0 + h12 * h12 * h12) * h1 * h1 * h1 * l2 * l2 * l2;
}

std::vector<OctaveRatio> local_dyadic_bound(const Trajectory& traj, double besov, int j_lo, int j_hi,
                                            std::size_t min_steps) {
    const double sc = critical_exponent(traj.p);
    std::vector<OctaveRatio> out;
    for (int j = j_lo; j <= j_hi; ++j) {
        const double a = std::ldexp(1.0, j);
        const double b = 2.0 * a;
        const double steps = (b - a) / traj.dt;
        if (steps + 1e-9 < static_cast<double>(min_steps)) {
            std::ostringstream msg;
            msg << "octave [2^" << j << ", 2^" << j + 1 << "] holds only " << steps << " steps (need " << min_steps
                << ")";
            throw StrideError(msg.str());
        }
        if (a < traj.t0 - 1e-12 || b > traj.t_end() + 1e-9 * b)
            throw StrideError("trajectory does not cover the requested octaves");
        const double lhs = spacetime_norm(traj, kLocalGradientPair, a, b);
        const double norm = std::pow(2.0, j * (sc - 1.0) / 2.0) * besov;
        out.push_back({j, lhs, norm, norm > 0.0 ? lhs / norm : 0.0});
    }
    return out;
}

NormReport norm_report(const RadialField& u, double p) {
    NormReport rep;
    rep.r_max = u.grid.r_max();
    rep.n = u.size();
    rep.p = p;
    const double sc = critical_exponent(p);
    auto& v = rep.values;
    v["mass"] = mass(u);
    v["energy"] = energy(u, p);
    const auto mom = momentum(u);
    v["momentum_residual"] = std::hypot(mom[0], mom[1], mom[2]);
    v["L2"] = lq_norm(u, 2.0);
    v["L4"] = lq_norm(u, 4.0);
    v["Lp+1"] = lq_norm(u, p + 1.0);
    v["Linf"] = weighted_sup(u, 0.0);
    v["H0.5"] = sobolev_norm(u, 0.5);
    v["Hsc"] = sobolev_norm(u, sc);
    v["H1"] = sobolev_norm(u, 1.0);
    const auto besov = besov_report(u, critical_besov_index(p));
    v["B11_crit"] = besov.value;
    v["B11_boundary_fraction"] = besov.boundary_fraction;
    rep.besov_truncated = besov.boundary_fraction > kBesovBoundaryTol;
    v["wsup_1"] = weighted_sup(u, 1.0);
    v["wsup_2/(p-1)"] = weighted_sup(u, 2.0 / (p - 1.0));
    return rep;
}

} // namespace radnls
