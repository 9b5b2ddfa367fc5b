#pragma once

// Library-private view of the precomputed grid tables.

#include "radnls/grid.hpp"

#include <vector>

namespace radnls {

struct GridTables {
    double r_max = 0.0;
    std::size_t n = 0;
    double dr = 0.0;
    double drho = 0.0;
    std::vector<double> radii;
    std::vector<double> inv_radii;
    std::vector<double> freqs;
    std::vector<double> volume_w;
    std::vector<double> spectral_w;
    std::vector<double> forward_scale;
    std::vector<double> inverse_scale;
};

struct GridAccess {
    static const GridTables& tables(const RadialGrid& g) { return *g.tables_; }
};

} // namespace radnls
