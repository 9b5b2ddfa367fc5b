#include "radnls/grid.hpp"

#include "radnls/error.hpp"
#include "grid_access.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace radnls {

namespace {

std::shared_ptr<const GridTables> build_tables(double r_max, std::size_t n) {
    using std::numbers::pi;
    auto t = std::make_shared<GridTables>();
    t->r_max = r_max;
    t->n = n;
    t->dr = r_max / static_cast<double>(n);
    t->drho = pi / r_max;
    t->radii.resize(n);
    t->inv_radii.resize(n);
    t->freqs.resize(n);
    t->volume_w.resize(n);
    t->spectral_w.resize(n);
    t->forward_scale.resize(n);
    t->inverse_scale.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = static_cast<double>(k + 1) * t->dr;
        const double rho = static_cast<double>(k + 1) * t->drho;
        t->radii[k] = r;
        t->inv_radii[k] = 1.0 / r;
        t->freqs[k] = rho;
        t->volume_w[k] = 4.0 * pi * r * r * t->dr;
        t->spectral_w[k] = 4.0 * pi * rho * rho * t->drho / (8.0 * pi * pi * pi);
        // FFTW's RODFT00 returns twice the plain sine sum.
        t->forward_scale[k] = 2.0 * pi * t->dr / rho;
        t->inverse_scale[k] = 1.0 / (4.0 * pi * r_max * r);
    }
    // Trapezoid end weights at r_max and rho_max.
    t->volume_w[n - 1] *= 0.5;
    t->spectral_w[n - 1] *= 0.5;
    return t;
}

} // namespace

RadialGrid::RadialGrid(double r_max, std::size_t n) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw ConfigError("grid radius must be positive and finite, got " + std::to_string(r_max));
    if (n < 256 || !std::has_single_bit(n))
        throw ConfigError("grid size must be a power of two >= 256, got " + std::to_string(n));
    tables_ = build_tables(r_max, n);
}

double RadialGrid::r_max() const noexcept { return tables_->r_max; }
std::size_t RadialGrid::size() const noexcept { return tables_->n; }
double RadialGrid::dr() const noexcept { return tables_->dr; }
double RadialGrid::drho() const noexcept { return tables_->drho; }
double RadialGrid::rho_max() const noexcept { return tables_->freqs.back(); }
std::span<const double> RadialGrid::radii() const noexcept { return tables_->radii; }
std::span<const double> RadialGrid::frequencies() const noexcept { return tables_->freqs; }
std::span<const double> RadialGrid::volume_weights() const noexcept { return tables_->volume_w; }
std::span<const double> RadialGrid::spectral_weights() const noexcept { return tables_->spectral_w; }

RadialGrid RadialGrid::scaled(double factor) const { return RadialGrid(r_max() * factor, size()); }

bool RadialGrid::operator==(const RadialGrid& other) const noexcept {
    return tables_ == other.tables_ || (tables_->n == other.tables_->n && tables_->r_max == other.tables_->r_max);
}

RadialGrid make_grid(double r_max, std::size_t n) { return RadialGrid(r_max, n); }

RadialField::RadialField(RadialGrid g) : grid(std::move(g)), values(grid.size(), cplx{}) {}

RadialField::RadialField(RadialGrid g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw ConfigError("field has " + std::to_string(values.size()) + " samples but grid has " +
                          std::to_string(grid.size()));
}

bool RadialField::all_finite() const noexcept {
    return std::all_of(values.begin(), values.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

static void require_same_grid(const RadialField& a, const RadialField& b) {
    if (!(a.grid == b.grid))
        throw ConfigError("fields live on different grids");
}

RadialField& RadialField::operator+=(const RadialField& rhs) {
    require_same_grid(*this, rhs);
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] += rhs.values[k];
    return *this;
}

RadialField& RadialField::operator-=(const RadialField& rhs) {
    require_same_grid(*this, rhs);
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] -= rhs.values[k];
    return *this;
}

RadialField& RadialField::operator*=(cplx c) {
    for (auto& z : values)
        z *= c;
    return *this;
}

RadialField operator+(RadialField lhs, const RadialField& rhs) { return lhs += rhs; }
RadialField operator-(RadialField lhs, const RadialField& rhs) { return lhs -= rhs; }
RadialField operator*(cplx c, RadialField f) { return f *= c; }

RadialField conj(RadialField f) {
    for (auto& z : f.values)
        z = std::conj(z);
    return f;
}

Spectrum::Spectrum(RadialGrid g) : grid(std::move(g)), values(grid.size(), cplx{}) {}

Spectrum::Spectrum(RadialGrid g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw ConfigError("spectrum size does not match its grid");
}

RadialField two_bump(const RadialGrid& g, double c1, double c2, double lambda) {
    return RadialField::sample(g, [=](double r) {
        return c1 * std::exp(-0.5 * r * r) + c2 * lambda * std::exp(-0.5 * lambda * lambda * r * r);
    });
}

} // namespace radnls
