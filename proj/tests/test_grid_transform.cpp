#include "oracles.hpp"

#include "radnls/error.hpp"
#include "radnls/grid.hpp"
#include "radnls/transform.hpp"

#include <doctest.h>

#include <algorithm>

using namespace radnls;

namespace {

RadialField gaussian(const RadialGrid& g) {
    return RadialField::sample(g, [](double r) { return std::exp(-0.5 * r * r); });
}

/// Random field whose spectrum vanishes above rho_max / 4.
RadialField band_limited(const RadialGrid& g, std::uint64_t seed) {
    auto vals = oracle::random_values(g.size(), seed);
    const auto rho = g.frequencies();
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (rho[k] > 0.25 * g.rho_max())
            vals[k] = 0.0;
        else
            vals[k] *= std::exp(-rho[k] * rho[k] / 50.0);
    return from_frequency(Spectrum(g, vals));
}

double rel_l2(const RadialField& a, const RadialField& b) { return oracle::l2((a - b).values) / oracle::l2(b.values); }

} // namespace

TEST_CASE("grid construction follows the node definitions") {
    const RadialGrid g(64.0, 4096);
    CHECK(g.dr() == doctest::Approx(0.015625).epsilon(1e-15));
    CHECK(g.rho_max() == doctest::Approx(201.06193).epsilon(1e-7));
    CHECK(g.radii().front() == doctest::Approx(g.dr()));
    CHECK(g.radii().back() == doctest::Approx(64.0));
    CHECK(std::is_sorted(g.frequencies().begin(), g.frequencies().end()));
    CHECK(RadialGrid(32.0, 2048).dr() == g.dr());
    CHECK(make_grid(64.0, 4096) == g);
}

TEST_CASE("grid construction rejects invalid sizes and radii") {
    CHECK_THROWS_AS(RadialGrid(64.0, 4095), ConfigError);
    CHECK_THROWS_AS(RadialGrid(64.0, 128), ConfigError);
    CHECK_THROWS_AS(RadialGrid(0.0, 4096), ConfigError);
    CHECK_THROWS_AS(RadialGrid(-1.0, 4096), ConfigError);
}

TEST_CASE("Gaussian transform matches the analytic transform") {
    const RadialGrid g(64.0, 4096);
    const auto spec = to_frequency(gaussian(g));
    const auto rho = g.frequencies();
    double worst_rel = 0.0, worst_abs = 0.0;
    for (std::size_t k = 0; k < rho.size() && rho[k] <= 20.0; ++k) {
        const double exact = oracle::gaussian_ft(rho[k]);
        const double err = std::abs(spec.values[k] - exact);
        worst_abs = std::max(worst_abs, err);
        if (rho[k] <= 6.0)
            worst_rel = std::max(worst_rel, err / exact);
    }
    CHECK(worst_rel <= 1e-6);
    CHECK(worst_abs <= 1e-6 * oracle::gaussian_ft(0.0));
}

TEST_CASE("inverse transform of the Gaussian spectrum is the Gaussian") {
    const RadialGrid g(64.0, 4096);
    Spectrum s(g);
    const auto rho = g.frequencies();
    for (std::size_t k = 0; k < rho.size(); ++k)
        s.values[k] = std::exp(-0.5 * rho[k] * rho[k]);
    const auto u = from_frequency(s);
    const double c = std::pow(2.0 * oracle::pi, -1.5);
    double worst = 0.0;
    const auto r = g.radii();
    for (std::size_t k = 0; k < r.size(); ++k)
        worst = std::max(worst, std::abs(u.values[k] - c * std::exp(-0.5 * r[k] * r[k])));
    CHECK(worst <= 1e-6 * c);
}

TEST_CASE("zero field and zero spectrum map to zero") {
    const RadialGrid g(16.0, 256);
    const auto s = to_frequency(RadialField(g));
    CHECK(std::all_of(s.values.begin(), s.values.end(), [](cplx z) { return z == cplx{}; }));
    const auto u = from_frequency(Spectrum(g));
    CHECK(std::all_of(u.values.begin(), u.values.end(), [](cplx z) { return z == cplx{}; }));
}

TEST_CASE("single-mode spectrum gives sin(rho_k r) / r") {
    const RadialGrid g(32.0, 1024);
    const std::size_t k = 37;
    Spectrum s(g);
    s.values[k] = 1.0;
    const auto u = from_frequency(s);
    const auto r = g.radii();
    const double rho = g.frequencies()[k];
    const double c = u.values[0].real() * r[0] / std::sin(rho * r[0]);
    double worst = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j)
        worst = std::max(worst, std::abs(u.values[j] - c * std::sin(rho * r[j]) / r[j]));
    CHECK(worst <= 1e-12 * std::abs(c) * rho);
}

TEST_CASE("round trip and Parseval on random band-limited fields") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const RadialGrid g(40.0, 2048);
        const auto u = band_limited(g, seed);
        CHECK(rel_l2(from_frequency(to_frequency(u)), u) <= 1e-12);
        const auto spec = to_frequency(u);
        const auto w = g.spectral_weights();
        double parseval = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k)
            parseval += w[k] * std::norm(spec.values[k]);
        const double m = radial_integral_unchecked(u, 2.0);
        CHECK(std::abs(parseval - m) <= 1e-10 * m);
    }
}

TEST_CASE("Gaussian moment integrals") {
    const RadialGrid g(64.0, 4096);
    const auto u = gaussian(g);
    CHECK(radial_integral(u, 2.0) == doctest::Approx(oracle::gaussian_mass).epsilon(1e-12));
    CHECK(radial_integral(u, 4.0) == doctest::Approx(oracle::gaussian_l4).epsilon(1e-12));
    // \int r^2 e^{-r^2} 4 pi r^2 dr = (3/2) pi^{3/2}
    CHECK(radial_integral(u, 2.0, 2.0) == doctest::Approx(1.5 * oracle::gaussian_mass).epsilon(1e-12));
    CHECK(radial_integral(RadialField(g), 3.0) == 0.0);
}

TEST_CASE("radial_integral guards its arguments and the boundary") {
    const RadialGrid g(8.0, 256);
    const auto u = gaussian(g);
    CHECK_THROWS_AS(radial_integral(u, 0.5), RangeError);
    CHECK_THROWS_AS(radial_integral(u, 2.0, -1.0), RangeError);
    const auto wide = RadialField::sample(g, [](double r) { return std::exp(-0.02 * r * r); });
    CHECK_THROWS_AS(radial_integral(wide, 2.0), TailLeakError);
}

TEST_CASE("radial_integral is homogeneous and monotone in |u|") {
    const RadialGrid g(40.0, 2048);
    const auto u = band_limited(g, 7);
    for (double q : {1.0, 2.0, 3.5, 4.0}) {
        const double base = radial_integral_unchecked(u, q);
        CHECK(radial_integral_unchecked(cplx(0.0, -3.0) * u, q) == doctest::Approx(std::pow(3.0, q) * base).epsilon(1e-12));
        RadialField bigger = u;
        for (std::size_t k = 0; k < bigger.size(); k += 3)
            bigger.values[k] *= 1.5;
        CHECK(radial_integral_unchecked(bigger, q) >= base);
    }
}

TEST_CASE("spectral derivative of the Gaussian") {
    const RadialGrid g(64.0, 4096);
    const auto du = radial_derivative(gaussian(g));
    const auto r = g.radii();
    double worst = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k)
        worst = std::max(worst, std::abs(du.values[k] + r[k] * std::exp(-0.5 * r[k] * r[k])));
    CHECK(worst <= 1e-6);
    CHECK(std::abs(du.values[0]) <= 2.0 * r[0]); // d_r u(0+) -> 0
    CHECK(radial_integral_unchecked(du, 2.0) == doctest::Approx(oracle::gaussian_grad_sq).epsilon(1e-10));
}

TEST_CASE("spectral derivative refuses fields with top-octave content") {
    const RadialGrid g(16.0, 512);
    RadialField noisy(g, oracle::random_values(g.size(), 11));
    CHECK(top_octave_fraction(noisy) > 0.1);
    CHECK_THROWS_AS(radial_derivative(noisy), AliasingError);
}

TEST_CASE("multipliers: identity, Laplacian and composition") {
    const RadialGrid g(64.0, 4096);
    const auto u = gaussian(g);
    const auto same = apply_multiplier(u, [](double) { return cplx(1.0); });
    CHECK(rel_l2(same, u) <= 1e-12);

    const auto lap = apply_multiplier(u, [](double rho) { return cplx(rho * rho); });
    const auto r = g.radii();
    double worst = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k)
        worst = std::max(worst, std::abs(lap.values[k] - (3.0 - r[k] * r[k]) * std::exp(-0.5 * r[k] * r[k])));
    CHECK(worst <= 1e-6);

    const auto m1 = [](double rho) { return std::exp(cplx(-0.1 * rho, 0.3 * rho * rho)); };
    const auto m2 = [](double rho) { return cplx(1.0 / (1.0 + rho * rho), 0.0); };
    const auto both = apply_multiplier(apply_multiplier(u, m1), m2);
    const auto product = apply_multiplier(u, [&](double rho) { return m1(rho) * m2(rho); });
    CHECK(rel_l2(both, product) <= 1e-12);
}

TEST_CASE("real and complex multiplier overloads agree") {
    const RadialGrid g(40.0, 2048);
    const auto u = band_limited(g, 5);
    std::vector<double> mr(g.size());
    std::vector<cplx> mc(g.size());
    const auto rho = g.frequencies();
    for (std::size_t k = 0; k < mr.size(); ++k) {
        mr[k] = std::exp(-rho[k]);
        mc[k] = mr[k];
    }
    CHECK(rel_l2(apply_multiplier(u, std::span<const double>(mr)), apply_multiplier(u, std::span<const cplx>(mc))) <=
          1e-14);
    CHECK_THROWS_AS(apply_multiplier(u, std::span<const double>(mr.data(), 10)), ConfigError);
}

TEST_CASE("weighted sup norms") {
    const RadialGrid g(64.0, 4096);
    const auto u = gaussian(g);
    CHECK(weighted_sup(u, 0.0) == doctest::Approx(std::exp(-0.5 * g.dr() * g.dr())));
    CHECK(weighted_sup(u, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(weighted_sup(u, -0.5), RangeError);
}
