#include "radnls/decomposition.hpp"

#include "radnls/error.hpp"
#include "radnls/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace radnls {

std::string_view split_mode_name(SplitMode mode) {
    return mode == SplitMode::TailSplit ? "tail-split" : "zero-v";
}

SplitData split_data(const RadialField& u0, double epsilon, double p) {
    const double R = tail_radius(u0, epsilon, p);
    SplitData out{u0, RadialField(u0.grid), R, epsilon, 0.0, 0.0};
    if (R > 0.0) {
        const auto r = u0.grid.radii();
        for (std::size_t k = 0; k < u0.size(); ++k) {
            const double c = chi(r[k] / R);
            out.core.values[k] = c * u0.values[k];
            out.tail.values[k] = u0.values[k] - out.core.values[k];
        }
        const auto [l2, l1] = TailSums(u0, p).at(R);
        out.tail_sum_l2 = l2;
        out.tail_sum_l1 = l1;
    }
    return out;
}

DecompositionRun evolve_decomposed(const RadialField& u0, double p, SplitMode mode, double t_end,
                                   const StepPolicy& policy, double epsilon) {
    DecompositionRun run;
    run.mode = mode;
    run.epsilon = epsilon;
    RadialField w0 = u0;
    if (mode == SplitMode::TailSplit) {
        auto split = split_data(u0, epsilon, p);
        run.R = split.R;
        w0 = std::move(split.tail);
    }
    const auto traj = simulate(u0, p, t_end, policy);
    constexpr double no_check = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const double t = traj.times[i] - traj.t0;
        const auto& u = traj.snapshots[i];
        RadialField w = free_flow(w0, t, no_check);
        RadialField v = u - w;
        const RadialField resid = u - (v + w);
        const double nu = lq_norm(u, 2.0);
        const double inc = nu > 0.0 ? lq_norm(resid, 2.0) / nu : lq_norm(resid, 2.0);
        run.max_inconsistency = std::max(run.max_inconsistency, inc);
        run.states.push_back({traj.times[i], std::move(v), std::move(w), inc});
    }
    return run;
}

std::vector<double> log_time_grid(double t_min, double t_max, std::size_t count) {
    if (!(t_min > 0.0 && t_max > t_min) || count < 2)
        throw RangeError("log time grid needs 0 < t_min < t_max and at least two points");
    std::vector<double> t(count);
    const double ratio = std::log(t_max / t_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        t[i] = t_min * std::exp(ratio * static_cast<double>(i));
    t.back() = t_max;
    return t;
}

WSmallness w_smallness_report(const RadialField& tail, const std::vector<double>& times) {
    WSmallness out;
    if (times.size() < 2)
        return out;
    std::vector<double> sup(times.size()), grad(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto w = free_flow(tail, times[i]);
        sup[i] = weighted_sup(w, 0.0);
        grad[i] = weighted_sup(radial_derivative(w, 1.0), 0.0);
        out.sup_sqrt_t_linf = std::max(out.sup_sqrt_t_linf, std::sqrt(times[i]) * sup[i]);
    }
    double l2 = 0.0, l1 = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double h = times[i] - times[i - 1];
        l2 += 0.5 * h * (sup[i] * sup[i] + sup[i - 1] * sup[i - 1]);
        l1 += 0.5 * h * (grad[i] + grad[i - 1]);
    }
    out.l2t_linf = std::sqrt(l2);
    out.l1t_grad_linf = l1;
    return out;
}

} // namespace radnls
