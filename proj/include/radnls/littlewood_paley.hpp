#pragma once

// Littlewood-Paley shells, homogeneous Besov and Sobolev norms, and the
// core/tail radius used to split initial data.

#include "radnls/grid.hpp"

#include <utility>
#include <vector>

namespace radnls {

/// Smooth step: 1 on s <= 1, 0 on s >= 2, nonincreasing in between.
double eta(double s) noexcept;

/// Radial bump chi(x) = eta(|x|): 1 on |x| <= 1, supported in |x| <= 2.
inline double chi(double x) noexcept { return eta(x < 0.0 ? -x : x); }

/// s_c = d/2 - 2/(p-1). Throws RangeError for p <= 1 or d < 3.
double critical_exponent(double p, int d = kDimension);

/// Regularity d/2 + s_c of the scale-invariant B_{1,1} space.
double critical_besov_index(double p, int d = kDimension);

/// Dyadic shells phi_j(rho) = eta(rho/2^j) - eta(rho/2^(j-1)), j_min <= j <= j_max.
class DyadicPartition {
public:
    DyadicPartition(int j_min, int j_max);

    /// j_min = ceil(log2(2 pi / r_max)), j_max = floor(log2(rho_max / 2)).
    static DyadicPartition for_grid(const RadialGrid& g);

    int j_min() const noexcept { return j_min_; }
    int j_max() const noexcept { return j_max_; }
    bool contains(int j) const noexcept { return j >= j_min_ && j <= j_max_; }

    double phi(int j, double rho) const noexcept;
    /// phi_j tabulated on the grid frequencies. Throws RangeError outside the range.
    std::vector<double> multiplier(const RadialGrid& g, int j) const;

private:
    int j_min_;
    int j_max_;
};

/// P_j u with the grid's default partition. Throws RangeError for j outside it.
RadialField project(const RadialField& u, int j);
RadialField project(const RadialField& u, int j, const DyadicPartition& partition);

struct BesovShell {
    int j;
    double contribution; ///< 2^(j s) ||P_j u||_{L^1}
};

struct BesovReport {
    double s = 0.0;
    double value = 0.0;
    /// Share of the sum carried by the two lowest and two highest shells.
    double boundary_fraction = 0.0;
    std::vector<BesovShell> shells;
};

inline constexpr double kBesovBoundaryTol = 0.01;

/// Truncated sum over the grid partition together with per-shell contributions. Never throws on truncation.
BesovReport besov_report(const RadialField& u, double s);

/// sum_j 2^(j s) ||P_j u||_{L^1}. Throws TruncationError when boundary shells carry more than `boundary_tol`.
double besov_norm(const RadialField& u, double s, double boundary_tol = kBesovBoundaryTol);

/// ((2 pi)^-3 \int rho^(2s) |u^|^2 4 pi rho^2 drho)^(1/2) for s in [0, 2].
double sobolev_norm(const RadialField& u, double s);

/// Weighted tail sums for a cutoff radius R:
/// first  = sum_j 2^(j s_c) ||(1 - chi(r/R)) P_j u0||_{L^2},
/// second = sum_j 2^(j (d/2 + s_c)) ||(1 - chi(r/R)) P_j u0||_{L^1}.
/// R = 0 leaves the shells uncut.
class TailSums {
public:
    TailSums(const RadialField& u0, double p);
    std::pair<double, double> at(double R) const;

private:
    RadialGrid grid_;
    double s_l2_;
    double s_l1_;
    std::vector<int> js_;
    std::vector<RadialField> shells_;
};

/// Smallest grid-aligned R in {0, r_1, ..., r_max/4} with both tail sums <= epsilon.
/// Throws DomainTooSmallError if none exists.
double tail_radius(const RadialField& u0, double epsilon, double p = 3.0);

} // namespace radnls
