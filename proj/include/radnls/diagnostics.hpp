#pragma once

// Scalar functionals of radial fields and trajectories: conserved quantities,
// the pseudoconformal energy and its monotonicity defect, dispersive decay
// ratios, and the comparison quantities used by the experiments.

#include "radnls/evolution.hpp"
#include "radnls/grid.hpp"
#include "radnls/transform.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace radnls {

/// \int |u|^2 dx.
double mass(const RadialField& u, double boundary_tol = kDefaultBoundaryTol);

/// (1/2) \int |grad u|^2 dx, evaluated spectrally.
double kinetic_energy(const RadialField& u, double boundary_tol = kDefaultBoundaryTol);

/// \int (1/2)|grad u|^2 + |u|^(p+1)/(p+1) dx.
double energy(const RadialField& u, double p, double boundary_tol = kDefaultBoundaryTol);

/// \int Im(conj(u) grad u) dx with the angular integral done by quadrature.
/// Vanishes for radial fields; the returned vector is the rounding residual.
std::array<double, 3> momentum(const RadialField& u, double boundary_tol = kDefaultBoundaryTol);

/// r v + 2 i t d_r v, the radial profile of (x + 2it grad) v along x/|x|.
RadialField vector_field(const RadialField& v, double t);

/// Radial profile g of e^{it Laplacian}(x f) = (x/|x|) g(|x|), computed through the
/// first-order spherical Bessel transform of the vector field x f. Independent of
/// vector_field; used to check the commutation identity.
RadialField moment_free_flow(const RadialField& f, double t);

/// Coefficient k(p) of the exact identity dE/dt = -k(p) t ||v||^{p+1}_{p+1} in three dimensions.
double pseudoconformal_rate(double p);
/// The coefficient 4/(p+1) in the commonly quoted general-p form of the identity.
double pseudoconformal_rate_quoted(double p);

struct PseudoconformalRecord {
    double t = 0.0;
    double energy = 0.0;         ///< part_vector + part_potential
    double part_vector = 0.0;    ///< ||(x + 2it grad) v||^2
    double part_potential = 0.0; ///< 8/(p+1) t^2 ||v||^{p+1}_{p+1}
    double rhs = 0.0;            ///< -pseudoconformal_rate(p) t ||v||^{p+1}_{p+1}
    double rhs_quoted = 0.0;     ///< -4/(p+1) t ||v||^{p+1}_{p+1}
};

/// Tolerance for the boundary check in the pseudoconformal energy (100x tighter than the default).
inline constexpr double kPseudoconformalBoundaryTol = kDefaultBoundaryTol / 100.0;

PseudoconformalRecord pseudoconformal_energy(const RadialField& v, double t, double p,
                                             double boundary_tol = kPseudoconformalBoundaryTol);

enum class RateForm { Exact, Quoted };

struct MonotonicityReport {
    std::vector<double> t;       ///< interior sample times
    std::vector<double> dEdt;    ///< centered differences
    std::vector<double> rhs;     ///< identity right-hand side at t
    std::vector<double> defect;  ///< dEdt - rhs
    double max_relative_defect = 0.0;
    /// Largest increase E(t_{i+1}) - E(t_i) relative to E at the first sample (<= 0 means nonincreasing).
    double max_relative_increase = 0.0;
    double floor = 0.0;
};

/// Centered-difference check of dE/dt against the identity for uniformly spaced records.
/// Relative defects are |defect| / max(|rhs|, floor) with floor = floor_rel * E(first).
/// Throws StrideError for fewer than three records, nonuniform spacing, or spacing above max_spacing.
MonotonicityReport monotonicity_defect(const std::vector<PseudoconformalRecord>& records, RateForm form,
                                       double floor_rel = 1e-8, double max_spacing = 0.05);

struct DispersiveSeries {
    std::vector<double> t;
    std::vector<double> sup_ratio;        ///< t^{1/(p-1)} ||e^{itL} u0||_inf / B
    std::vector<double> gradient_ratio;   ///< t^{1/(p-1)+1/2} ||grad e^{itL} u0||_inf / B
    std::vector<double> fractional_ratio; ///< t^{2/(p-1)} || |grad|^{2/(p-1)} e^{itL} u0 ||_inf / B
    double besov = 0.0;
};

/// Ratio series for the three dispersive decay bounds. `besov` is ||u0||_{B^{d/2+s_c}_{1,1}},
/// normally measured on a grid better suited to the dyadic sum than the dispersion grid.
DispersiveSeries dispersive_ratio(const RadialField& u0, double p, const std::vector<double>& times, double besov);

/// (1 + ||u0||^3_{H^{1/2}}) ||u0||^3_{H^1} ||u0||^3_{L^2}.
double morawetz_rhs(const RadialField& u0);

struct OctaveRatio {
    int j;
    double lhs;        ///< ||grad u||_{L^2_t L^6_x([2^j, 2^{j+1}])}
    double normalizer; ///< 2^{j (s_c - 1)/2} B
    double ratio;
};

/// Gradient space-time pair used by the local dyadic bound in three dimensions.
inline const NormPair kLocalGradientPair{2.0, 6.0, true};

/// Per-octave ratios over j in [j_lo, j_hi] from a trajectory that recorded kLocalGradientPair.
/// Throws StrideError if an octave window holds fewer than `min_steps` steps.
std::vector<OctaveRatio> local_dyadic_bound(const Trajectory& traj, double besov, int j_lo = -6, int j_hi = -1,
                                            std::size_t min_steps = 8);

/// Named scalar diagnostics of one field.
struct NormReport {
    double r_max = 0.0;
    std::size_t n = 0;
    double p = 3.0;
    std::map<std::string, double> values;
    /// Set when the Besov sum failed its boundary-shell check (the value is still reported).
    bool besov_truncated = false;
};

NormReport norm_report(const RadialField& u, double p);

} // namespace radnls
