#include "radnls/evolution.hpp"

#include "grid_access.hpp"
#include "radnls/diagnostics.hpp"
#include "radnls/error.hpp"
#include "radnls/simd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace radnls {

namespace {

constexpr double kNoCheck = std::numeric_limits<double>::infinity();

} // namespace

RadialField free_flow(const RadialField& u0, double t, double boundary_tol) {
    if (!std::isfinite(t))
        throw ConfigError("free flow time must be finite");
    RadialField out = u0;
    if (t != 0.0) {
        const auto rho = u0.grid.frequencies();
        const double scale = 1.0 / (2.0 * static_cast<double>(u0.size()));
        std::vector<cplx> m(rho.size());
        for (std::size_t k = 0; k < rho.size(); ++k)
            m[k] = std::polar(scale, -rho[k] * rho[k] * t);
        detail::apply_scaled_multiplier(out.values, out.grid, m);
    }
    if (boundary_tol < kNoCheck)
        check_boundary(out, boundary_tol, "free_flow");
    return out;
}

double norm_power(const RadialField& u, const NormPair& pair) {
    const double integral = pair.gradient ? radial_integral_unchecked(radial_derivative(u), pair.r_x)
                                          : radial_integral_unchecked(u, pair.r_x);
    return integral == 0.0 ? 0.0 : std::pow(integral, pair.q_t / pair.r_x);
}

double max_stable_dt(const RadialGrid& g, double oversample) {
    return 2.0 * std::numbers::pi * oversample / (g.rho_max() * g.rho_max());
}

void check_step_policy(const StepPolicy& policy, const RadialGrid& g) {
    if (!(policy.dt > 0.0) || !std::isfinite(policy.dt))
        throw ConfigError("time step must be positive and finite");
    if (!(policy.oversample > 0.0))
        throw ConfigError("oversample factor must be positive");
    if (policy.log_stride == 0)
        throw ConfigError("log stride must be at least 1");
    const double limit = max_stable_dt(g, policy.oversample);
    if (policy.dt > limit * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "time step " << policy.dt << " violates the phase guard: dt * rho_max^2 = "
            << policy.dt * g.rho_max() * g.rho_max() << " > 2 pi * " << policy.oversample << " (max dt " << limit
            << ")";
        throw PhaseGuardError(msg.str());
    }
}

void SimpsonAccumulator::push(double f) {
    f2_ = f1_;
    f1_ = f0_;
    f0_ = f;
    ++count_;
    if (count_ >= 3 && count_ % 2 == 1)
        paired_sum_ += h_ / 3.0 * (f2_ + 4.0 * f1_ + f0_);
}

double SimpsonAccumulator::value() const {
    if (count_ < 2)
        return 0.0;
    if (count_ == 2)
        return 0.5 * h_ * (f1_ + f0_);
    if (count_ % 2 == 1)
        return paired_sum_;
    return paired_sum_ + h_ * (-f2_ + 8.0 * f1_ + 5.0 * f0_) / 12.0;
}

SimpsonAccumulator SimpsonAccumulator::from_state(const State& s) {
    SimpsonAccumulator acc(s.h);
    acc.count_ = s.count;
    acc.paired_sum_ = s.paired_sum;
    acc.f2_ = s.f2;
    acc.f1_ = s.f1;
    acc.f0_ = s.f0;
    return acc;
}

double simpson(std::span<const double> f, double h) {
    SimpsonAccumulator acc(h);
    for (double x : f)
        acc.push(x);
    return acc.value();
}

std::size_t Trajectory::pair_index(const NormPair& pair) const {
    const auto it = std::find(pairs.begin(), pairs.end(), pair);
    if (it == pairs.end()) {
        std::ostringstream msg;
        msg << "space-time pair (" << pair.q_t << ", " << pair.r_x << (pair.gradient ? ", gradient" : "")
            << ") was not configured for this run";
        throw ConfigError(msg.str());
    }
    return static_cast<std::size_t>(it - pairs.begin());
}

namespace {

double max_relative_drift(const std::vector<ConservedSample>& log, double ConservedSample::*field) {
    if (log.empty())
        return 0.0;
    const double ref = log.front().*field;
    double worst = 0.0;
    for (const auto& s : log) {
        const double d = std::abs(s.*field - ref);
        worst = std::max(worst, ref != 0.0 ? d / std::abs(ref) : d);
    }
    return worst;
}

} // namespace

double Trajectory::max_mass_drift() const { return max_relative_drift(conserved, &ConservedSample::mass); }
double Trajectory::max_energy_drift() const { return max_relative_drift(conserved, &ConservedSample::energy); }

Integrator::Integrator(RadialField u0, double p, StepPolicy policy, std::vector<NormPair> pairs, double t0)
    : u_(std::move(u0)), p_(p), policy_(std::move(policy)), pairs_(std::move(pairs)), t0_(t0),
      dealias_(policy_.dealias_for(p)) {
    if (!(p > 1.0))
        throw RangeError("nonlinearity power p must exceed 1");
    check_step_policy(policy_, u_.grid);
    if (!u_.all_finite())
        throw InstabilityError("initial data contains non-finite samples", 0);
    for (const auto& pr : pairs_)
        if (!(pr.q_t >= 1.0 && pr.r_x >= 1.0))
            throw RangeError("space-time exponents must be >= 1");
    build_propagator();
    refresh_norms();
    for (double f : norms_) {
        accumulators_.emplace_back(policy_.dt);
        accumulators_.back().push(f);
    }
}

void Integrator::build_propagator() {
    const auto rho = u_.grid.frequencies();
    const std::size_t n = rho.size();
    const double scale = 1.0 / (2.0 * static_cast<double>(n));
    propagator_.assign(n, cplx{});
    // 2/3 rule: modes k > 2n/3 (1-based) are removed.
    const std::size_t keep = dealias_ ? (2 * n) / 3 : n;
    for (std::size_t k = 0; k < keep; ++k)
        propagator_[k] = std::polar(scale, -rho[k] * rho[k] * policy_.dt);
    mod2_.resize(n);
    cos_.resize(n);
    sin_.resize(n);
}

void Integrator::kick(double tau) {
    if (policy_.linear)
        return;
    simd::abs2(u_.values, mod2_);
    const std::size_t n = mod2_.size();
    if (p_ == 3.0) {
        for (std::size_t k = 0; k < n; ++k) {
            const double phase = tau * mod2_[k];
            cos_[k] = std::cos(phase);
            sin_[k] = -std::sin(phase);
        }
    } else {
        const double half = 0.5 * (p_ - 1.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double phase = mod2_[k] > 0.0 ? tau * std::pow(mod2_[k], half) : 0.0;
            cos_[k] = std::cos(phase);
            sin_[k] = -std::sin(phase);
        }
    }
    simd::kernels().rotate(u_.values.data(), cos_.data(), sin_.data(), n);
}

void Integrator::step() {
    const double half = 0.5 * policy_.dt;
    kick(half);
    detail::apply_scaled_multiplier(u_.values, u_.grid, propagator_);
    kick(half);
    ++step_;
    refresh_norms();
    for (std::size_t i = 0; i < norms_.size(); ++i)
        accumulators_[i].push(norms_[i]);
}

void Integrator::refresh_norms() {
    norms_.resize(pairs_.size());
    for (std::size_t i = 0; i < pairs_.size(); ++i)
        norms_[i] = norm_power(u_, pairs_[i]);
}

void Integrator::run(std::size_t steps, const StepObserver& observer) {
    for (std::size_t s = 0; s < steps; ++s) {
        step();
        if (observer)
            observer(step_, time(), u_);
    }
}

Integrator::Snapshot Integrator::snapshot() const {
    Snapshot s{u_, p_, t0_, step_, policy_, pairs_, {}};
    for (const auto& a : accumulators_)
        s.accumulators.push_back(a.state());
    return s;
}

Integrator Integrator::restore(const Snapshot& s) {
    Integrator integ(s.u, s.p, s.policy, s.pairs, s.t0);
    integ.step_ = s.step;
    integ.refresh_norms();
    if (s.accumulators.size() != integ.accumulators_.size())
        throw ParseError("checkpoint accumulator count does not match its norm pairs", 0);
    for (std::size_t i = 0; i < s.accumulators.size(); ++i)
        integ.accumulators_[i] = SimpsonAccumulator::from_state(s.accumulators[i]);
    return integ;
}

namespace {

ConservedSample conserved_sample(const Integrator& integ) {
    const auto& u = integ.state();
    check_boundary(u, integ.policy().boundary_tol, "simulation");
    return {integ.step_index(), integ.time(), mass(u, kNoCheck),
            integ.policy().linear ? kinetic_energy(u, kNoCheck) : energy(u, integ.p(), kNoCheck)};
}

void require_finite(const Integrator& integ) {
    if (!integ.state().all_finite()) {
        std::ostringstream msg;
        msg << "non-finite field after step " << integ.step_index() << " (t = " << integ.time() << ")";
        throw InstabilityError(msg.str(), integ.step_index());
    }
}

} // namespace

Trajectory record(Integrator& integ, std::size_t steps, const StepObserver& observer) {
    const auto& pol = integ.policy();
    Trajectory tr{integ.state().grid, integ.p(), pol.dt, integ.time(), integ.dealias(), {}, {}, integ.pairs(),
                  {}, {}, {}};
    tr.norm_samples.resize(integ.pairs().size());
    auto push_samples = [&] {
        const auto& v = integ.current_norms();
        for (std::size_t i = 0; i < v.size(); ++i)
            tr.norm_samples[i].push_back(v[i]);
    };
    push_samples();
    tr.times.push_back(integ.time());
    tr.snapshots.push_back(integ.state());
    tr.conserved.push_back(conserved_sample(integ));
    if (observer)
        observer(integ.step_index(), integ.time(), integ.state());
    for (std::size_t s = 1; s <= steps; ++s) {
        integ.step();
        require_finite(integ);
        push_samples();
        const bool last = s == steps;
        if (s % pol.log_stride == 0 || last) {
            tr.conserved.push_back(conserved_sample(integ));
        }
        if (last || (pol.snapshot_stride > 0 && s % pol.snapshot_stride == 0)) {
            tr.times.push_back(integ.time());
            tr.snapshots.push_back(integ.state());
        }
        if (observer)
            observer(integ.step_index(), integ.time(), integ.state());
    }
    for (const auto& f : tr.norm_samples)
        tr.accumulators.push_back(simpson(f, pol.dt));
    return tr;
}

Trajectory simulate(const RadialField& u0, double p, double t_end, const StepPolicy& policy,
                    const std::vector<NormPair>& pairs, const StepObserver& observer, double t0) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw ConfigError("t_end must be finite and nonnegative");
    const double steps_real = t_end / policy.dt;
    const auto steps = static_cast<std::size_t>(std::llround(steps_real));
    if (std::abs(steps_real - static_cast<double>(steps)) > 1e-6) {
        std::ostringstream msg;
        msg << "t_end = " << t_end << " is not an integer multiple of dt = " << policy.dt;
        throw ConfigError(msg.str());
    }
    check_boundary(u0, policy.boundary_tol, "initial data");
    Integrator integ(u0, p, policy, pairs, t0);
    return record(integ, steps, observer);
}

double spacetime_norm(const Trajectory& traj, const NormPair& pair, double t_from, double t_to) {
    const auto& f = traj.norm_samples[traj.pair_index(pair)];
    if (f.empty() || !(t_to > t_from))
        return 0.0;
    const auto last = static_cast<long long>(f.size()) - 1;
    const auto k0 = std::clamp(std::llround((t_from - traj.t0) / traj.dt), 0LL, last);
    const auto k1 = std::clamp(std::llround((t_to - traj.t0) / traj.dt), 0LL, last);
    if (k1 <= k0)
        return 0.0;
    const double integral =
        simpson(std::span<const double>(f.data() + k0, static_cast<std::size_t>(k1 - k0 + 1)), traj.dt);
    return integral > 0.0 ? std::pow(integral, 1.0 / pair.q_t) : 0.0;
}

double spacetime_norm(const Trajectory& traj, const NormPair& pair) {
    const double integral = traj.accumulators[traj.pair_index(pair)];
    return integral > 0.0 ? std::pow(integral, 1.0 / pair.q_t) : 0.0;
}

RadialField spread(const RadialField& u0, double lambda, double p) {
    if (!(lambda > 0.0))
        throw RangeError("scale factor must be positive");
    const double amp = std::pow(lambda, -2.0 / (p - 1.0));
    RadialField out(u0.grid.scaled(lambda), u0.values);
    out *= amp;
    return out;
}

double rescale_norm_exponent(double p) { return 0.5 * (kDimension + 2) * (p - 1.0); }

RescaleResult rescale_initial_data(const RadialField& u0, double delta, double p, double oversample) {
    if (!(delta > 0.0 && delta < 1.0))
        throw RangeError("smallness target delta must lie in (0, 1)");
    const double q = rescale_norm_exponent(p);
    const NormPair pair{q, q, false};
    RescaleResult res{1.0, u0, {}, true};
    for (int k = 0; k <= 16; ++k) {
        const double lambda = std::ldexp(1.0, k);
        RadialField data = spread(u0, lambda, p);
        const double guard = max_stable_dt(data.grid, oversample);
        // Resolve the unit window with at least 256 steps.
        const double dt = 1.0 / std::ceil(std::max(256.0, 1.0 / guard));
        StepPolicy pol;
        pol.dt = dt;
        pol.oversample = oversample;
        pol.log_stride = static_cast<std::size_t>(std::llround(1.0 / dt));
        const auto tr = simulate(data, p, 1.0, pol, {pair});
        const double norm = spacetime_norm(tr, pair);
        if (!res.search.empty() && norm > res.search.back().norm)
            res.monotone = false;
        res.search.push_back({lambda, norm, dt});
        if (norm <= delta) {
            res.lambda = lambda;
            res.data = std::move(data);
            return res;
        }
    }
    std::ostringstream msg;
    msg << "no lambda <= 2^16 brings the space-time norm below " << delta << " (last value "
        << res.search.back().norm << ")";
    throw RescaleError(msg.str());
}

} // namespace radnls
