#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace radnls {

struct GridTables;

using cplx = std::complex<double>;

/// Spatial dimension. The radial reduction through psi = r*u is exact only in 3D.
inline constexpr int kDimension = 3;

/// Radial sample points r_k = k*dr (k = 1..n) and the conjugate sine-series
/// frequencies rho_k = k*pi/r_max. The origin is not a sample; the outermost
/// point r_n = r_max is a Dirichlet node of the sine series.
///
/// Grids are cheap to copy: all derived tables live in shared immutable storage.
class RadialGrid {
public:
    RadialGrid(double r_max, std::size_t n);

    double r_max() const noexcept;
    std::size_t size() const noexcept;
    double dr() const noexcept;
    double drho() const noexcept;
    double rho_max() const noexcept;

    std::span<const double> radii() const noexcept;
    std::span<const double> frequencies() const noexcept;
    /// Trapezoid weights for the measure 4*pi*r^2 dr.
    std::span<const double> volume_weights() const noexcept;
    /// Trapezoid weights for (2*pi)^-3 * 4*pi*rho^2 drho.
    std::span<const double> spectral_weights() const noexcept;

    /// Same sample count with r_max multiplied by `factor`.
    RadialGrid scaled(double factor) const;

    bool operator==(const RadialGrid& other) const noexcept;

private:
    std::shared_ptr<const GridTables> tables_;

    friend struct GridAccess;
};

/// Validating factory: n must be a power of two >= 256 and r_max > 0.
RadialGrid make_grid(double r_max, std::size_t n);

/// Complex samples u_k ~ u(r_k) on a grid.
struct RadialField {
    RadialGrid grid;
    std::vector<cplx> values;

    explicit RadialField(RadialGrid g);
    RadialField(RadialGrid g, std::vector<cplx> v);

    template <typename F>
    static RadialField sample(const RadialGrid& g, F&& f) {
        RadialField out(g);
        const auto r = g.radii();
        for (std::size_t k = 0; k < r.size(); ++k)
            out.values[k] = cplx(f(r[k]));
        return out;
    }

    std::size_t size() const noexcept { return values.size(); }
    bool all_finite() const noexcept;

    RadialField& operator+=(const RadialField& rhs);
    RadialField& operator-=(const RadialField& rhs);
    RadialField& operator*=(cplx c);
};

RadialField operator+(RadialField lhs, const RadialField& rhs);
RadialField operator-(RadialField lhs, const RadialField& rhs);
RadialField operator*(cplx c, RadialField f);
RadialField conj(RadialField f);

/// Radial Fourier coefficients on the rho-nodes of a grid.
struct Spectrum {
    RadialGrid grid;
    std::vector<cplx> values;

    explicit Spectrum(RadialGrid g);
    Spectrum(RadialGrid g, std::vector<cplx> v);
};

/// Gaussian recipe c1*exp(-r^2/2) + c2*lambda*exp(-lambda^2 r^2/2).
RadialField two_bump(const RadialGrid& g, double c1, double c2, double lambda);

} // namespace radnls
