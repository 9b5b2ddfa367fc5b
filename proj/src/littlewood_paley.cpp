#include "radnls/littlewood_paley.hpp"

#include "radnls/error.hpp"
#include "radnls/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace radnls {

namespace {

double bridge(double t) noexcept { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

} // namespace

double eta(double s) noexcept {
    if (s <= 1.0)
        return 1.0;
    if (s >= 2.0)
        return 0.0;
    const double a = bridge(2.0 - s);
    const double b = bridge(s - 1.0);
    return a / (a + b);
}

double critical_exponent(double p, int d) {
    if (!(p > 1.0))
        throw RangeError("nonlinearity power p must exceed 1");
    if (d < 3)
        throw RangeError("dimension must be at least 3");
    return 0.5 * d - 2.0 / (p - 1.0);
}

double critical_besov_index(double p, int d) { return 0.5 * d + critical_exponent(p, d); }

DyadicPartition::DyadicPartition(int j_min, int j_max) : j_min_(j_min), j_max_(j_max) {
    if (j_min > j_max)
        throw RangeError("empty dyadic range");
}

DyadicPartition DyadicPartition::for_grid(const RadialGrid& g) {
    using std::numbers::pi;
    const int lo = static_cast<int>(std::ceil(std::log2(2.0 * pi / g.r_max()) - 1e-12));
    const int hi = static_cast<int>(std::floor(std::log2(g.rho_max() / 2.0) + 1e-12));
    return DyadicPartition(lo, hi);
}

double DyadicPartition::phi(int j, double rho) const noexcept {
    return eta(std::ldexp(rho, -j)) - eta(std::ldexp(rho, 1 - j));
}

std::vector<double> DyadicPartition::multiplier(const RadialGrid& g, int j) const {
    if (!contains(j)) {
        std::ostringstream msg;
        msg << "dyadic index " << j << " outside [" << j_min_ << ", " << j_max_ << "]";
        throw RangeError(msg.str());
    }
    const auto rho = g.frequencies();
    std::vector<double> m(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k)
        m[k] = phi(j, rho[k]);
    return m;
}

RadialField project(const RadialField& u, int j, const DyadicPartition& partition) {
    const auto m = partition.multiplier(u.grid, j);
    return apply_multiplier(u, std::span<const double>(m));
}

RadialField project(const RadialField& u, int j) { return project(u, j, DyadicPartition::for_grid(u.grid)); }

BesovReport besov_report(const RadialField& u, double s) {
    const auto part = DyadicPartition::for_grid(u.grid);
    BesovReport rep;
    rep.s = s;
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        const double l1 = radial_integral_unchecked(project(u, j, part), 1.0);
        rep.shells.push_back({j, std::pow(2.0, j * s) * l1});
        rep.value += rep.shells.back().contribution;
    }
    if (rep.value > 0.0) {
        double edge = 0.0;
        const std::size_t m = rep.shells.size();
        for (std::size_t i = 0; i < m; ++i)
            if (i < 2 || i + 2 >= m)
                edge += rep.shells[i].contribution;
        rep.boundary_fraction = edge / rep.value;
    }
    return rep;
}

double besov_norm(const RadialField& u, double s, double boundary_tol) {
    const auto rep = besov_report(u, s);
    if (rep.boundary_fraction > boundary_tol) {
        std::ostringstream msg;
        msg << "Besov sum truncated: boundary shells carry " << 100.0 * rep.boundary_fraction << "% (limit "
            << 100.0 * boundary_tol << "%)";
        throw TruncationError(msg.str());
    }
    return rep.value;
}

double sobolev_norm(const RadialField& u, double s) {
    if (!(s >= 0.0 && s <= 2.0))
        throw RangeError("Sobolev regularity must lie in [0, 2]");
    const auto spec = to_frequency(u);
    const auto rho = u.grid.frequencies();
    const auto w = u.grid.spectral_weights();
    double acc = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k)
        acc += w[k] * std::pow(rho[k], 2.0 * s) * std::norm(spec.values[k]);
    return std::sqrt(acc);
}

TailSums::TailSums(const RadialField& u0, double p)
    : grid_(u0.grid), s_l2_(critical_exponent(p)), s_l1_(critical_besov_index(p)) {
    const auto part = DyadicPartition::for_grid(u0.grid);
    for (int j = part.j_min(); j <= part.j_max(); ++j) {
        js_.push_back(j);
        shells_.push_back(project(u0, j, part));
    }
}

std::pair<double, double> TailSums::at(double R) const {
    const auto r = grid_.radii();
    const auto w = grid_.volume_weights();
    std::vector<double> cut(r.size());
    for (std::size_t k = 0; k < r.size(); ++k)
        cut[k] = R > 0.0 ? 1.0 - chi(r[k] / R) : 1.0;
    double l2 = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < shells_.size(); ++i) {
        double a2 = 0.0, a1 = 0.0;
        const auto& v = shells_[i].values;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (cut[k] == 0.0)
                continue;
            const double m = cut[k] * std::abs(v[k]);
            a2 += w[k] * m * m;
            a1 += w[k] * m;
        }
        l2 += std::pow(2.0, js_[i] * s_l2_) * std::sqrt(a2);
        l1 += std::pow(2.0, js_[i] * s_l1_) * a1;
    }
    return {l2, l1};
}

double tail_radius(const RadialField& u0, double epsilon, double p) {
    if (!(epsilon > 0.0))
        throw RangeError("tail smallness epsilon must be positive");
    check_boundary(u0, kDefaultBoundaryTol, "tail_radius");
    const TailSums sums(u0, p);
    const auto ok = [&](double R) {
        const auto [a, b] = sums.at(R);
        return a <= epsilon && b <= epsilon;
    };
    if (ok(0.0))
        return 0.0;
    const auto r = u0.grid.radii();
    std::size_t hi = 0;
    while (hi + 1 < r.size() && r[hi + 1] <= 0.25 * u0.grid.r_max())
        ++hi;
    if (!ok(r[hi])) {
        const auto [a, b] = sums.at(r[hi]);
        std::ostringstream msg;
        msg << "no tail radius up to r_max/4 = " << r[hi] << " meets epsilon = " << epsilon << " (tail sums " << a
            << ", " << b << ")";
        throw DomainTooSmallError(msg.str());
    }
    std::size_t lo = 0;
    if (ok(r[0]))
        return r[0];
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (ok(r[mid]) ? hi : lo) = mid;
    }
    return r[hi];
}

} // namespace radnls
