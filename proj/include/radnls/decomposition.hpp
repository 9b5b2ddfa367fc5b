#pragma once

// Splitting u = v + w in two modes:
//  TailSplit: w is the free flow of the cutoff tail (1 - chi(r/R)) u0, v carries the rest.
//  ZeroV:     w is the free flow of all of u0 and v(0) = 0.
// v is always formed as u - w from the full nonlinear run.

#include "radnls/evolution.hpp"

#include <string_view>
#include <vector>

namespace radnls {

enum class SplitMode { TailSplit, ZeroV };

std::string_view split_mode_name(SplitMode mode);

struct SplitData {
    RadialField core; ///< chi(r/R) u0, or u0 when R = 0
    RadialField tail; ///< (1 - chi(r/R)) u0, or 0 when R = 0
    double R = 0.0;
    double epsilon = 0.0;
    double tail_sum_l2 = 0.0; ///< weighted L^2 tail sum at R
    double tail_sum_l1 = 0.0; ///< weighted L^1 tail sum at R
};

/// Core/tail split at R = tail_radius(u0, epsilon, p). R = 0 gives tail = 0.
SplitData split_data(const RadialField& u0, double epsilon, double p = 3.0);

struct DecompositionState {
    double t = 0.0;
    RadialField v;
    RadialField w;
    /// ||u - (v + w)|| / ||u|| in L^2.
    double inconsistency = 0.0;
};

struct DecompositionRun {
    SplitMode mode = SplitMode::ZeroV;
    double R = 0.0;
    double epsilon = 0.0;
    std::vector<DecompositionState> states;
    double max_inconsistency = 0.0;
};

/// Run the full equation from u0 and split every recorded snapshot (policy.snapshot_stride) into v and w.
DecompositionRun evolve_decomposed(const RadialField& u0, double p, SplitMode mode, double t_end,
                                   const StepPolicy& policy, double epsilon = 1e-3);

struct WSmallness {
    double l2t_linf = 0.0;       ///< ||w||_{L^2_t L^inf_x}
    double sup_sqrt_t_linf = 0.0; ///< sup_t t^{1/2} ||w(t)||_inf
    double l1t_grad_linf = 0.0;  ///< \int ||grad w||_inf dt
};

/// Geometric time grid with `count` points from t_min to t_max inclusive.
std::vector<double> log_time_grid(double t_min, double t_max, std::size_t count);

/// The three smallness quantities of w = e^{it Laplacian} tail on the time grid (trapezoid in t).
WSmallness w_smallness_report(const RadialField& tail, const std::vector<double>& times);

} // namespace radnls
