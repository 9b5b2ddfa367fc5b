#pragma once

// Radial 3D Fourier transform, spectral multipliers, differentiation, and
// quadrature on a RadialGrid.
//
// Convention: f^(xi) = \int f(x) exp(-i x.xi) dx, inverse with (2 pi)^-3.
// For radial f this is f^(rho) = (4 pi / rho) \int_0^inf sin(rho r) r f(r) dr,
// realised as a discrete sine series of psi = r f.

#include "radnls/grid.hpp"

#include <functional>
#include <span>
#include <string_view>

namespace radnls {

inline constexpr double kDefaultBoundaryTol = 1e-6;
inline constexpr double kDefaultTopOctaveTol = 1e-4;

Spectrum to_frequency(const RadialField& u);
RadialField from_frequency(const Spectrum& spectrum);

/// from_frequency(m(rho) * to_frequency(u)), evaluated without materialising the spectrum.
RadialField apply_multiplier(const RadialField& u, std::span<const double> m);
RadialField apply_multiplier(const RadialField& u, std::span<const cplx> m);
RadialField apply_multiplier(const RadialField& u, const std::function<cplx(double)>& m);

/// Tabulate a multiplier on the grid frequencies.
std::vector<cplx> tabulate(const RadialGrid& g, const std::function<cplx(double)>& m);

/// Fraction of the 4 pi r^2 mass sitting beyond 0.9 r_max (0 for the zero field).
double boundary_mass_fraction(const RadialField& u);

/// Throws TailLeakError when boundary_mass_fraction(u) > tol.
void check_boundary(const RadialField& u, double tol = kDefaultBoundaryTol, std::string_view context = {});

/// \int_0^{r_max} r^alpha |u|^q 4 pi r^2 dr (trapezoid). Checks the boundary invariant.
double radial_integral(const RadialField& u, double q, double alpha = 0.0, double boundary_tol = kDefaultBoundaryTol);

/// Same quadrature with no boundary check, for localized pieces such as dyadic
/// projections that legitimately extend to the domain edge.
double radial_integral_unchecked(const RadialField& u, double q, double alpha = 0.0);

/// L^q norm (unchecked quadrature).
double lq_norm(const RadialField& u, double q);

/// Fraction of the L^2 mass carried by rho > rho_max / 2.
double top_octave_fraction(const RadialField& u);

/// d/dr u via d/dr u = (psi' - u) / r with psi = r u and psi' from the cosine series.
/// Throws AliasingError when the top octave carries more than `top_octave_tol` of the mass.
RadialField radial_derivative(const RadialField& u, double top_octave_tol = kDefaultTopOctaveTol);

/// Max over the grid of r^alpha |u(r)|.
double weighted_sup(const RadialField& u, double alpha);

namespace detail {
/// In-place u <- inverse(m_scaled * forward(r u)) / r where m_scaled already includes 1/(2n).
void apply_scaled_multiplier(std::span<cplx> values, const RadialGrid& g, std::span<const cplx> m_scaled);
} // namespace detail

} // namespace radnls
