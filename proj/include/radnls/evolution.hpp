#pragma once

// Exact free propagator and Strang split-step integration of
//     i u_t + Laplacian u = |u|^(p-1) u
// for radial data, with running space-time norm accumulation.

#include "radnls/grid.hpp"
#include "radnls/transform.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace radnls {

/// e^{it Laplacian} u0 via the multiplier exp(-i rho^2 t). The output is
/// checked against the boundary invariant unless `boundary_tol` is infinite.
RadialField free_flow(const RadialField& u0, double t, double boundary_tol = kDefaultBoundaryTol);

/// A space-time Lebesgue pair: L^{q_t}_t L^{r_x}_x of u, or of the radial
/// derivative when `gradient` is set.
struct NormPair {
    double q_t = 0.0;
    double r_x = 0.0;
    bool gradient = false;

    bool operator==(const NormPair&) const = default;
};

/// ||u||_{L^r} or ||d_r u||_{L^r} raised to the power q.
double norm_power(const RadialField& u, const NormPair& pair);

struct StepPolicy {
    double dt = 1e-3;
    /// Keep every `snapshot_stride`-th state in the trajectory (0 keeps only the endpoints).
    std::size_t snapshot_stride = 0;
    /// 2/3-rule truncation after each linear substep. Unset means on exactly when p = 3.
    std::optional<bool> dealias;
    /// Phase guard: dt * rho_max^2 <= 2 pi * oversample.
    double oversample = 8.0;
    /// Boundary mass fraction tolerated at every conserved-quantity sample.
    double boundary_tol = kDefaultBoundaryTol;
    /// Mass and energy are logged every `log_stride` steps and at the end.
    std::size_t log_stride = 100;
    /// Switch off the nonlinearity to propagate freely with the same stepping.
    bool linear = false;

    bool dealias_for(double p) const { return dealias.value_or(p == 3.0); }
};

/// Throws PhaseGuardError if dt violates the phase guard on `g`, ConfigError if dt <= 0.
void check_step_policy(const StepPolicy& policy, const RadialGrid& g);

/// Largest dt satisfying the phase guard on `g`.
double max_stable_dt(const RadialGrid& g, double oversample = 8.0);

/// Running composite Simpson integral of uniformly spaced samples. With an odd
/// number of intervals the last one uses the three-point end correction.
class SimpsonAccumulator {
public:
    explicit SimpsonAccumulator(double h = 1.0) : h_(h) {}

    void push(double f);
    double value() const;
    std::size_t samples() const noexcept { return count_; }
    double spacing() const noexcept { return h_; }

    struct State {
        double h;
        std::uint64_t count;
        double paired_sum;
        double f2; ///< sample before f1
        double f1; ///< sample before f0
        double f0; ///< most recent sample
    };
    State state() const noexcept { return {h_, count_, paired_sum_, f2_, f1_, f0_}; }
    static SimpsonAccumulator from_state(const State& s);

private:
    double h_;
    std::uint64_t count_ = 0;
    double paired_sum_ = 0.0; ///< Simpson sum over completed interval pairs.
    double f2_ = 0.0;
    double f1_ = 0.0;
    double f0_ = 0.0;
};

/// Composite Simpson integral of uniformly spaced samples (end correction for odd interval counts).
double simpson(std::span<const double> f, double h);

struct ConservedSample {
    std::size_t step = 0;
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
};

struct Trajectory {
    RadialGrid grid;
    double p = 3.0;
    double dt = 0.0;
    double t0 = 0.0;
    bool dealias = false;
    std::vector<double> times; ///< snapshot instants
    std::vector<RadialField> snapshots;
    std::vector<NormPair> pairs;
    /// norm_samples[i][k] = norm_power(u(t0 + k dt), pairs[i]) for every step k.
    std::vector<std::vector<double>> norm_samples;
    /// Simpson integrals of norm_samples over the whole run.
    std::vector<double> accumulators;
    std::vector<ConservedSample> conserved;

    const RadialField& final_state() const { return snapshots.back(); }
    double t_end() const { return times.back(); }
    std::size_t pair_index(const NormPair& pair) const;
    /// Largest relative deviation of mass / energy from the first logged sample.
    double max_mass_drift() const;
    double max_energy_drift() const;
};

/// Observer called after every step (and once for the initial state with step 0).
using StepObserver = std::function<void(std::size_t step, double t, const RadialField& u)>;

/// Strang split-step integrator. The state after k steps lives at t0 + k*dt.
class Integrator {
public:
    Integrator(RadialField u0, double p, StepPolicy policy, std::vector<NormPair> pairs = {}, double t0 = 0.0);

    /// One step: half nonlinear phase, exact free flow, half nonlinear phase.
    void step();
    void run(std::size_t steps, const StepObserver& observer = {});

    const RadialField& state() const noexcept { return u_; }
    double time() const noexcept { return t0_ + static_cast<double>(step_) * policy_.dt; }
    std::size_t step_index() const noexcept { return step_; }
    double p() const noexcept { return p_; }
    double t0() const noexcept { return t0_; }
    const StepPolicy& policy() const noexcept { return policy_; }
    const std::vector<NormPair>& pairs() const noexcept { return pairs_; }
    const std::vector<SimpsonAccumulator>& accumulators() const noexcept { return accumulators_; }
    bool dealias() const noexcept { return dealias_; }

    /// norm_power of the current state for each configured pair.
    const std::vector<double>& current_norms() const noexcept { return norms_; }

    struct Snapshot {
        RadialField u;
        double p;
        double t0;
        std::size_t step;
        StepPolicy policy;
        std::vector<NormPair> pairs;
        std::vector<SimpsonAccumulator::State> accumulators;
    };
    Snapshot snapshot() const;
    static Integrator restore(const Snapshot& s);

private:
    void kick(double tau);
    void build_propagator();
    void refresh_norms();

    RadialField u_;
    double p_;
    StepPolicy policy_;
    std::vector<NormPair> pairs_;
    double t0_;
    std::size_t step_ = 0;
    bool dealias_;
    std::vector<cplx> propagator_;
    std::vector<SimpsonAccumulator> accumulators_;
    std::vector<double> norms_;
    std::vector<double> mod2_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// Run from u0 over [t0, t0 + t_end]. t_end must be an integer multiple of policy.dt.
Trajectory simulate(const RadialField& u0, double p, double t_end, const StepPolicy& policy,
                    const std::vector<NormPair>& pairs = {}, const StepObserver& observer = {}, double t0 = 0.0);

/// Continue an integrator for `steps` steps, recording a trajectory of that segment.
Trajectory record(Integrator& integ, std::size_t steps, const StepObserver& observer = {});

/// (\int_window ||u||^{q}_{L^r} dt)^{1/q} from the per-step samples of a configured pair.
/// The window is snapped to the step grid; an empty window gives 0.
double spacetime_norm(const Trajectory& traj, const NormPair& pair, double t_from, double t_to);
double spacetime_norm(const Trajectory& traj, const NormPair& pair);

/// Scale map u0 -> lambda^(-2/(p-1)) u0(r / lambda) on the grid with r_max * lambda and the same n.
/// A solution u(t, r) maps to lambda^(-2/(p-1)) u(t / lambda^2, r / lambda).
RadialField spread(const RadialField& u0, double lambda, double p);

struct RescaleStep {
    double lambda;
    double norm; ///< L^{(d+2)(p-1)/2}_{t,x}([0, 1]) of the rescaled solution
    double dt;
};

struct RescaleResult {
    double lambda = 1.0;
    RadialField data;
    std::vector<RescaleStep> search;
    bool monotone = true;
};

/// Doubling search for lambda = 2^k with the space-time norm on [0, 1] at most delta.
/// Throws RescaleError beyond lambda = 2^16 and RangeError for delta outside (0, 1).
RescaleResult rescale_initial_data(const RadialField& u0, double delta, double p, double oversample = 8.0);

/// Exponent (d+2)(p-1)/2 of the space-time norm controlled by the rescaling step.
double rescale_norm_exponent(double p);

} // namespace radnls
