#include "oracles.hpp"

#include "radnls/error.hpp"
#include "radnls/evolution.hpp"
#include "radnls/littlewood_paley.hpp"
#include "radnls/transform.hpp"

#include <doctest.h>

using namespace radnls;

namespace {

RadialField gaussian(const RadialGrid& g) {
    return RadialField::sample(g, [](double r) { return std::exp(-0.5 * r * r); });
}

/// Random spectrum restricted to [lo, hi].
RadialField band(const RadialGrid& g, double lo, double hi, std::uint64_t seed) {
    auto vals = oracle::random_values(g.size(), seed);
    const auto rho = g.frequencies();
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (rho[k] < lo || rho[k] > hi)
            vals[k] = 0.0;
    return from_frequency(Spectrum(g, vals));
}

double rel_l2(const RadialField& a, const RadialField& b) { return oracle::l2((a - b).values) / oracle::l2(b.values); }

} // namespace

TEST_CASE("critical exponent") {
    CHECK(critical_exponent(3.0) == doctest::Approx(0.5));
    CHECK(critical_exponent(5.0) == doctest::Approx(1.0));
    CHECK(critical_exponent(7.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(critical_besov_index(3.0) == doctest::Approx(2.0));
    CHECK(critical_besov_index(2.5) == doctest::Approx(1.5 + 1.0 / 6.0));
    CHECK_THROWS_AS(critical_exponent(1.0), RangeError);
    CHECK_THROWS_AS(critical_exponent(3.0, 2), RangeError);
}

TEST_CASE("cutoff profile") {
    CHECK(eta(0.0) == 1.0);
    CHECK(eta(1.0) == 1.0);
    CHECK(eta(2.0) == 0.0);
    CHECK(eta(5.0) == 0.0);
    double prev = 1.0;
    for (double s = 1.0; s <= 2.0; s += 1e-3) {
        const double e = eta(s);
        CHECK(e <= prev);
        CHECK(e >= 0.0);
        prev = e;
    }
    CHECK(chi(-0.5) == 1.0);
    CHECK(chi(2.5) == 0.0);
}

TEST_CASE("dyadic partition of unity on the resolved band") {
    const RadialGrid g(64.0, 4096);
    const auto part = DyadicPartition::for_grid(g);
    CHECK(part.j_min() == static_cast<int>(std::ceil(std::log2(2.0 * oracle::pi / 64.0))));
    CHECK(part.j_max() == static_cast<int>(std::floor(std::log2(g.rho_max() / 2.0))));
    const double lo = std::ldexp(1.0, part.j_min() + 1);
    const double hi = std::ldexp(1.0, part.j_max() - 1);
    double worst = 0.0;
    for (double rho : g.frequencies()) {
        double sum = 0.0;
        for (int j = part.j_min(); j <= part.j_max(); ++j) {
            const double phi = part.phi(j, rho);
            sum += phi;
            if (phi != 0.0) {
                CHECK(rho >= std::ldexp(1.0, j - 1));
                CHECK(rho <= std::ldexp(1.0, j + 1));
            }
        }
        if (rho >= lo && rho <= hi)
            worst = std::max(worst, std::abs(sum - 1.0));
    }
    CHECK(worst <= 1e-10);
    CHECK_THROWS_AS(part.multiplier(g, part.j_max() + 1), RangeError);
    CHECK_THROWS_AS(project(gaussian(g), part.j_min() - 1), RangeError);
}

TEST_CASE("projections sum to the field and separate distant shells") {
    const RadialGrid g(64.0, 4096);
    const auto part = DyadicPartition::for_grid(g);
    const auto u = band(g, std::ldexp(1.0, part.j_min() + 1), std::ldexp(1.0, part.j_max() - 1), 3);
    RadialField sum(g);
    for (int j = part.j_min(); j <= part.j_max(); ++j)
        sum += project(u, j);
    CHECK(rel_l2(sum, u) <= 1e-10);
    for (int j = part.j_min(); j + 2 <= part.j_max(); ++j) {
        const auto pp = project(project(u, j), j + 2);
        CHECK(oracle::l2(pp.values) <= 1e-13 * oracle::l2(u.values));
    }
}

TEST_CASE("a mode at rho = 2^j passes P_j unchanged") {
    // rho_k = k / 64 on this grid, so 2^j is a node.
    const RadialGrid g(64.0 * oracle::pi, 4096);
    const int j = 2;
    const auto rho = g.frequencies();
    Spectrum s(g);
    for (std::size_t k = 0; k < rho.size(); ++k)
        if (std::abs(rho[k] - 4.0) < 1e-12)
            s.values[k] = 1.0;
    const auto u = from_frequency(s);
    CHECK(rel_l2(project(u, j), u) <= 1e-12);
}

TEST_CASE("Besov norm of the Gaussian converges under grid refinement") {
    const double b1 = besov_norm(gaussian(RadialGrid(256.0, 4096)), 2.0);
    const double b2 = besov_norm(gaussian(RadialGrid(256.0, 8192)), 2.0);
    CHECK(b1 > 0.0);
    CHECK(std::abs(b1 - b2) <= 0.005 * b2);
    CHECK(besov_norm(RadialField(RadialGrid(256.0, 4096)), 2.0) == 0.0);
}

TEST_CASE("Besov truncation check") {
    // At critical regularity the lowest shells of the Gaussian are not negligible on a small domain.
    const auto u = gaussian(RadialGrid(64.0, 4096));
    const auto rep = besov_report(u, 2.0);
    CHECK(rep.boundary_fraction > kBesovBoundaryTol);
    CHECK_THROWS_AS(besov_norm(u, 2.0), TruncationError);
    CHECK(besov_report(u, 2.0).shells.size() ==
          static_cast<std::size_t>(DyadicPartition::for_grid(u.grid).j_max() -
                                   DyadicPartition::for_grid(u.grid).j_min() + 1));
}

TEST_CASE("Besov norm is linear in the amplitude") {
    const auto u = gaussian(RadialGrid(256.0, 8192));
    const double b = besov_norm(u, 2.0);
    CHECK(besov_norm(cplx(0.0, -2.5) * u, 2.0) == doctest::Approx(2.5 * b).epsilon(1e-12));
}

TEST_CASE("critical norms are invariant under the scaling symmetry") {
    for (double p : {3.0, 2.5}) {
        const auto u = gaussian(RadialGrid(256.0, 8192));
        const double sb = critical_besov_index(p);
        const double sc = critical_exponent(p);
        const double b = besov_norm(u, sb);
        const double h = sobolev_norm(u, sc);
        for (double lam : {0.5, 2.0, 4.0}) {
            // u_lambda(x) = lambda^{2/(p-1)} u(lambda x), resampled on the lambda-adapted grid.
            const auto ul = spread(u, 1.0 / lam, p);
            CHECK(besov_norm(ul, sb) == doctest::Approx(b).epsilon(0.005));
            CHECK(sobolev_norm(ul, sc) == doctest::Approx(h).epsilon(0.005));
        }
    }
}

TEST_CASE("Sobolev norms of the Gaussian") {
    const auto u = gaussian(RadialGrid(64.0, 4096));
    CHECK(sobolev_norm(u, 0.0) == doctest::Approx(std::pow(oracle::pi, 0.75)).epsilon(1e-10));
    // rho^3 exp(-rho^2) is odd at the origin, so the trapezoid rule loses its spectral accuracy there.
    CHECK(sobolev_norm(u, 0.5) == doctest::Approx(oracle::gaussian_sobolev(0.5)).epsilon(1e-6));
    CHECK(sobolev_norm(u, 1.0) == doctest::Approx(oracle::gaussian_sobolev(1.0)).epsilon(1e-10));
    CHECK(sobolev_norm(u, 2.0) == doctest::Approx(oracle::gaussian_sobolev(2.0)).epsilon(1e-10));
    CHECK_THROWS_AS(sobolev_norm(u, 2.5), RangeError);
}

TEST_CASE("Sobolev norm is monotone in s for high-frequency data") {
    const RadialGrid g(64.0, 4096);
    const auto u = band(g, 1.0, 30.0, 9);
    double prev = 0.0;
    for (double s = 0.0; s <= 2.0; s += 0.25) {
        const double h = sobolev_norm(u, s);
        CHECK(h >= prev);
        prev = h;
    }
}

TEST_CASE("Besov norm dominates the Sobolev norm with a grid-independent constant") {
    const double r1 = besov_norm(gaussian(RadialGrid(256.0, 8192)), 2.0) /
                      sobolev_norm(gaussian(RadialGrid(256.0, 8192)), 0.5);
    const double r2 = besov_norm(gaussian(RadialGrid(512.0, 16384)), 2.0) /
                      sobolev_norm(gaussian(RadialGrid(512.0, 16384)), 0.5);
    CHECK(r1 > 0.0);
    CHECK(r1 == doctest::Approx(r2).epsilon(0.01));
}

TEST_CASE("tail radius of the Gaussian") {
    const auto u = gaussian(RadialGrid(16384.0, 65536));
    const double R = tail_radius(u, 1e-3, 3.0);
    CHECK(R > 0.0);
    CHECK(R <= 16384.0 / 4.0);
    const TailSums sums(u, 3.0);
    const auto at = sums.at(R);
    CHECK(at.first <= 1e-3);
    CHECK(at.second <= 1e-3);
    const auto doubled = sums.at(2.0 * R);
    CHECK(doubled.first <= 0.5 * at.first);
    CHECK(doubled.second <= 0.5 * at.second);
    // Nonincreasing in epsilon.
    const double R2 = tail_radius(u, 1e-2, 3.0);
    CHECK(R2 <= R);
}

TEST_CASE("tail radius degenerate and failing cases") {
    const auto u = gaussian(RadialGrid(1024.0, 4096));
    const auto uncut = TailSums(u, 3.0).at(0.0);
    CHECK(tail_radius(u, 1.01 * std::max(uncut.first, uncut.second)) == 0.0);
    CHECK_THROWS_AS(tail_radius(u, 1e-6), DomainTooSmallError);
}

TEST_CASE("tail radius is covariant under the scaling symmetry") {
    const double p = 3.0;
    const auto u = gaussian(RadialGrid(2048.0, 16384));
    const auto uncut = TailSums(u, p).at(0.0);
    const double eps = 0.1 * std::min(uncut.first, uncut.second);
    const double R = tail_radius(u, eps, p);
    CHECK(R > 0.0);
    const auto wide = spread(u, 2.0, p);
    const double R2 = tail_radius(wide, eps, p);
    CHECK(R2 == doctest::Approx(2.0 * R).epsilon(0.02));
}
