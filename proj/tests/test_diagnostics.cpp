#include "oracles.hpp"

#include "radnls/diagnostics.hpp"
#include "radnls/error.hpp"
#include "radnls/littlewood_paley.hpp"

#include <doctest.h>

#include <limits>

using namespace radnls;

namespace {

RadialField gaussian(const RadialGrid& g, double c = 1.0) {
    return RadialField::sample(g, [c](double r) { return c * std::exp(-0.5 * r * r); });
}

double rel_l2(const RadialField& a, const RadialField& b) { return oracle::l2((a - b).values) / oracle::l2(b.values); }

std::vector<PseudoconformalRecord> records_of(const RadialField& u0, double p, double t_end, double dt,
                                              std::size_t stride) {
    std::vector<PseudoconformalRecord> out;
    StepPolicy pol;
    pol.dt = dt;
    simulate(u0, p, t_end, pol, {}, [&](std::size_t step, double t, const RadialField& u) {
        if (step % stride == 0)
            out.push_back(pseudoconformal_energy(u, t, p));
    });
    return out;
}

} // namespace

TEST_CASE("conserved quantities of the Gaussian") {
    const auto u = gaussian(RadialGrid(64.0, 4096));
    CHECK(mass(u) == doctest::Approx(oracle::gaussian_mass).epsilon(1e-12));
    CHECK(kinetic_energy(u) == doctest::Approx(0.5 * oracle::gaussian_grad_sq).epsilon(1e-10));
    const double quartic = oracle::gaussian_integral(2.0);
    CHECK(energy(u, 3.0) == doctest::Approx(0.5 * oracle::gaussian_grad_sq + quartic / 4.0).epsilon(1e-10));
    CHECK_THROWS_AS(energy(u, 1.0), RangeError);
    const auto mom = momentum(u);
    for (double m : mom)
        CHECK(std::abs(m) <= 1e-12 * mass(u));
}

TEST_CASE("conserved quantities see boundary leakage") {
    const RadialGrid g(8.0, 256);
    const auto wide = RadialField::sample(g, [](double r) { return std::exp(-0.02 * r * r); });
    CHECK_THROWS_AS(mass(wide), TailLeakError);
    CHECK_NOTHROW(mass(wide, std::numeric_limits<double>::infinity()));
}

TEST_CASE("vector field at t = 0 is multiplication by r") {
    const RadialGrid g(64.0, 2048);
    const auto u = gaussian(g, 0.3);
    const auto xv = vector_field(u, 0.0);
    const auto r = g.radii();
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(xv.values[k] == r[k] * u.values[k]);
}

TEST_CASE("the vector field commutes with the free flow") {
    const RadialGrid g(64.0, 4096);
    // Smooth as a function of x, so the spectrum decays fast enough for the identity to hold to rounding.
    const auto f = RadialField::sample(g, [](double r) { return cplx(1.0, 0.5 * r * r) * std::exp(-0.5 * r * r); });
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        const auto lhs = vector_field(free_flow(f, t), t);
        const auto rhs = moment_free_flow(f, t);
        CHECK(rel_l2(lhs, rhs) <= 1e-8);
    }
    const auto xf = vector_field(f, 0.0);
    CHECK(rel_l2(moment_free_flow(f, 0.0), xf) <= 1e-8);
}

TEST_CASE("norm of the vector field along the free flow is constant") {
    const RadialGrid g(64.0, 4096);
    const auto f = gaussian(g);
    // ||r e^{-r^2/2}||^2 = 4 pi * 3 sqrt(pi) / 8.
    const double expected = 1.5 * std::pow(oracle::pi, 1.5);
    for (double t : {0.0, 1.0, 3.0}) {
        const auto rec = pseudoconformal_energy(free_flow(f, t), t, 3.0);
        CHECK(rec.part_vector == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("pseudoconformal energy parts") {
    const RadialGrid g(64.0, 4096);
    const auto u = gaussian(g);
    const double p = 3.0;
    const auto rec0 = pseudoconformal_energy(u, 0.0, p);
    CHECK(rec0.part_potential == 0.0);
    CHECK(rec0.energy == rec0.part_vector);
    CHECK(rec0.rhs == 0.0);

    const double t = 1.5;
    const auto v = free_flow(u, t);
    const auto rec = pseudoconformal_energy(v, t, p);
    CHECK(rec.energy == doctest::Approx(rec.part_vector + rec.part_potential).epsilon(1e-15));
    const double lp = oracle::free_gaussian_lq(t, p + 1.0);
    CHECK(rec.part_potential == doctest::Approx(8.0 / (p + 1.0) * t * t * lp).epsilon(1e-10));
    CHECK(rec.rhs == doctest::Approx(-pseudoconformal_rate(p) * t * lp).epsilon(1e-10));
    CHECK(rec.rhs_quoted == doctest::Approx(-4.0 / (p + 1.0) * t * lp).epsilon(1e-10));
    CHECK_THROWS_AS(pseudoconformal_energy(v, -1.0, p), RangeError);
}

TEST_CASE("pseudoconformal rate coefficient") {
    CHECK(pseudoconformal_rate(3.0) == doctest::Approx(2.0));
    CHECK(pseudoconformal_rate(7.0 / 3.0) == doctest::Approx(0.0));
    CHECK(pseudoconformal_rate(2.5) == doctest::Approx(4.0 / 7.0));
    // The quoted coefficient coincides with the exact one only at p = 8/3.
    CHECK(pseudoconformal_rate(8.0 / 3.0) == doctest::Approx(pseudoconformal_rate_quoted(8.0 / 3.0)));
    CHECK(pseudoconformal_rate_quoted(3.0) == doctest::Approx(1.0));
}

TEST_CASE("monotonicity defect of an actual solution") {
    const RadialGrid g(64.0, 2048);
    const double p = 3.0;
    const auto recs = records_of(gaussian(g), p, 1.0, 2e-3, 10);
    REQUIRE(recs.size() == 51);
    const auto exact = monotonicity_defect(recs, RateForm::Exact);
    const auto quoted = monotonicity_defect(recs, RateForm::Quoted);
    MESSAGE("exact-rate defect " << exact.max_relative_defect << ", quoted-rate defect "
                                 << quoted.max_relative_defect);
    CHECK(exact.t.size() == recs.size() - 2);
    CHECK(exact.max_relative_defect <= 0.01);
    CHECK(quoted.max_relative_defect >= 0.3);
    CHECK(exact.max_relative_increase <= 0.0);
    for (std::size_t i = 0; i < exact.t.size(); ++i)
        CHECK(exact.defect[i] == doctest::Approx(exact.dEdt[i] - exact.rhs[i]).epsilon(1e-14));
}

TEST_CASE("monotonicity defect of zero data") {
    std::vector<PseudoconformalRecord> recs(5);
    for (std::size_t i = 0; i < recs.size(); ++i)
        recs[i].t = 0.01 * static_cast<double>(i);
    const auto rep = monotonicity_defect(recs, RateForm::Exact);
    CHECK(rep.max_relative_defect == 0.0);
    CHECK(rep.max_relative_increase == 0.0);
    CHECK(rep.floor == 0.0);
}

TEST_CASE("monotonicity defect rejects unusable sample spacing") {
    std::vector<PseudoconformalRecord> recs(4);
    for (std::size_t i = 0; i < recs.size(); ++i)
        recs[i].t = 0.1 * static_cast<double>(i);
    CHECK_THROWS_AS(monotonicity_defect(recs, RateForm::Exact), StrideError);
    CHECK_NOTHROW(monotonicity_defect(recs, RateForm::Exact, 1e-8, 0.2));
    recs[2].t = 0.25;
    CHECK_THROWS_AS(monotonicity_defect(recs, RateForm::Exact, 1e-8, 0.2), StrideError);
    recs.resize(2);
    CHECK_THROWS_AS(monotonicity_defect(recs, RateForm::Exact), StrideError);
}

TEST_CASE("dispersive ratios") {
    const RadialGrid g(256.0, 4096);
    const auto u = gaussian(g);
    const double p = 3.0;
    const std::vector<double> times{1.0, 2.0, 4.0, 8.0};
    SUBCASE("zero data") {
        const auto s = dispersive_ratio(RadialField(g), p, times, 0.0);
        for (double x : s.sup_ratio)
            CHECK(x == 0.0);
    }
    SUBCASE("closed form of the sup ratio") {
        const double B = 2.0;
        const auto s = dispersive_ratio(u, p, times, B);
        REQUIRE(s.t == times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double t = times[i];
            const double sup = std::abs(oracle::free_gaussian(t, 0.0));
            // The supremum sits at the origin, one grid step inside the first sample.
            CHECK(s.sup_ratio[i] == doctest::Approx(std::sqrt(t) * sup / B).epsilon(1e-3));
            // max_r |d_r u| = max_r r/|a| |u(r)| with |u| = s^{-3/4} exp(-r^2 / (2 s)), s = 1 + 4 t^2.
            const double sq = 1.0 + 4.0 * t * t;
            const double grad = std::sqrt(sq) * std::pow(sq, -0.75) * std::exp(-0.5) / std::sqrt(sq);
            CHECK(s.gradient_ratio[i] == doctest::Approx(std::pow(t, 1.0) * grad / B).epsilon(1e-3));
            CHECK(s.fractional_ratio[i] > 0.0);
        }
    }
    CHECK_THROWS_AS(dispersive_ratio(u, p, {0.0}, 1.0), RangeError);
}

TEST_CASE("fractional dispersive ratio is independent of the amplitude normalization") {
    const RadialGrid g(256.0, 4096);
    const auto u = gaussian(g);
    const auto a = dispersive_ratio(u, 2.5, {1.0, 3.0}, 1.0);
    const auto b = dispersive_ratio(cplx(3.0) * u, 2.5, {1.0, 3.0}, 3.0);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(b.sup_ratio[i] == doctest::Approx(a.sup_ratio[i]).epsilon(1e-12));
        CHECK(b.gradient_ratio[i] == doctest::Approx(a.gradient_ratio[i]).epsilon(1e-12));
        CHECK(b.fractional_ratio[i] == doctest::Approx(a.fractional_ratio[i]).epsilon(1e-12));
    }
}

TEST_CASE("Morawetz right-hand side") {
    const RadialGrid g(64.0, 4096);
    CHECK(morawetz_rhs(RadialField(g)) == 0.0);
    const auto u = gaussian(g);
    const double h12 = oracle::gaussian_sobolev(0.5);
    const double h1 = oracle::gaussian_sobolev(1.0);
    const double l2 = std::pow(oracle::pi, 0.75);
    const double expected = (1.0 + std::pow(h12, 3)) * std::pow(h1, 3) * std::pow(l2, 3);
    CHECK(morawetz_rhs(u) == doctest::Approx(expected).epsilon(1e-5));
    const auto v = RadialField::sample(g, [](double r) { return cplx(0.2, 0.7 * r * r) * std::exp(-0.5 * r * r); });
    CHECK(morawetz_rhs(conj(v)) == doctest::Approx(morawetz_rhs(v)).epsilon(1e-12));
    // Closed form of the two-bump value; at lambda = 1 the bumps merge into a single Gaussian of amplitude c1 + c2.
    for (double lam : {1.0, 2.0, 4.0}) {
        const double h12 = oracle::two_bump_sobolev(0.5, 0.5, lam, 0.5);
        const double h1 = oracle::two_bump_sobolev(0.5, 0.5, lam, 1.0);
        const double l2 = oracle::two_bump_sobolev(0.5, 0.5, lam, 0.0);
        const double m = (1.0 + std::pow(h12, 3)) * std::pow(h1, 3) * std::pow(l2, 3);
        CHECK(morawetz_rhs(two_bump(g, 0.5, 0.5, lam)) == doctest::Approx(m).epsilon(1e-5));
    }
    // A single rescaled bump leaves the quantity invariant.
    CHECK(morawetz_rhs(two_bump(g, 0.0, 1.0, 4.0)) ==
          doctest::Approx(morawetz_rhs(two_bump(g, 0.0, 1.0, 1.0))).epsilon(1e-5));
}

TEST_CASE("Morawetz right-hand side of separated bumps eventually grows faster than lambda") {
    const RadialGrid g(16.0, 16384);
    const double m16 = morawetz_rhs(two_bump(g, 0.5, 0.5, 16.0));
    const double m64 = morawetz_rhs(two_bump(g, 0.5, 0.5, 64.0));
    const double exact = std::pow(oracle::two_bump_sobolev(0.5, 0.5, 64.0, 1.0) /
                                      oracle::two_bump_sobolev(0.5, 0.5, 16.0, 1.0), 3) *
                         std::pow(oracle::two_bump_sobolev(0.5, 0.5, 64.0, 0.0) /
                                      oracle::two_bump_sobolev(0.5, 0.5, 16.0, 0.0), 3) *
                         (1.0 + std::pow(oracle::two_bump_sobolev(0.5, 0.5, 64.0, 0.5), 3)) /
                         (1.0 + std::pow(oracle::two_bump_sobolev(0.5, 0.5, 16.0, 0.5), 3));
    CHECK(m64 / m16 == doctest::Approx(exact).epsilon(1e-4));
    CHECK(m64 / m16 >= 4.0);
}

TEST_CASE("local dyadic bound") {
    const RadialGrid g(64.0, 2048);
    StepPolicy pol;
    pol.dt = 1.0 / 1024.0;
    const auto zero = simulate(RadialField(g), 3.0, 1.0, pol, {kLocalGradientPair});
    for (const auto& o : local_dyadic_bound(zero, 1.0))
        CHECK(o.ratio == 0.0);

    const auto tr = simulate(gaussian(g), 3.0, 1.0, pol, {kLocalGradientPair});
    const double B = 3.0;
    const auto oct = local_dyadic_bound(tr, B);
    REQUIRE(oct.size() == 6);
    const double sc = critical_exponent(3.0);
    for (const auto& o : oct) {
        const double a = std::ldexp(1.0, o.j);
        CHECK(o.lhs == doctest::Approx(spacetime_norm(tr, kLocalGradientPair, a, 2.0 * a)).epsilon(1e-14));
        CHECK(o.normalizer == doctest::Approx(std::pow(2.0, o.j * (sc - 1.0) / 2.0) * B));
        CHECK(o.ratio == doctest::Approx(o.lhs / o.normalizer));
    }
    CHECK_THROWS_AS(local_dyadic_bound(tr, B, -6, -1, 32), StrideError);
    CHECK_THROWS_AS(local_dyadic_bound(tr, B, -2, 0), StrideError);
}

TEST_CASE("norm report") {
    const auto u = gaussian(RadialGrid(64.0, 4096));
    const auto rep = norm_report(u, 3.0);
    for (const char* key : {"mass", "energy", "momentum_residual", "L2", "L4", "Lp+1", "Linf", "H0.5", "Hsc",
                            "H1", "B11_crit", "B11_boundary_fraction", "wsup_1", "wsup_2/(p-1)"})
        CHECK(rep.values.count(key) == 1);
    CHECK(rep.values.at("mass") == mass(u));
    CHECK(rep.values.at("L2") * rep.values.at("L2") == doctest::Approx(mass(u)).epsilon(1e-12));
    CHECK(rep.values.at("Hsc") == doctest::Approx(rep.values.at("H0.5")).epsilon(1e-14));
    CHECK(rep.besov_truncated);
    CHECK(rep.n == 4096);
}

TEST_CASE("along the free flow only the potential part of the pseudoconformal energy changes") {
    const RadialGrid g(64.0, 4096);
    const auto u = gaussian(g);
    const double p = 2.5, q = p + 1.0;
    std::vector<PseudoconformalRecord> recs;
    for (int i = 0; i <= 20; ++i) {
        const double t = 1.0 + 0.01 * i;
        recs.push_back(pseudoconformal_energy(free_flow(u, t), t, p));
    }
    const auto rep = monotonicity_defect(recs, RateForm::Exact);
    // ||e^{it Laplacian} G||_q^q = (2 pi / q)^{3/2} s^{3/2 - 3q/4} with s = 1 + 4 t^2.
    const double c = std::pow(2.0 * oracle::pi / q, 1.5);
    const double e = 1.5 - 0.75 * q;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
        const double t = rep.t[i];
        const double s = 1.0 + 4.0 * t * t;
        const double lq = c * std::pow(s, e);
        const double dlq = c * e * std::pow(s, e - 1.0) * 8.0 * t;
        const double expected = 8.0 / q * (2.0 * t * lq + t * t * dlq);
        CHECK(rep.dEdt[i] == doctest::Approx(expected).epsilon(1e-4));
    }
}
