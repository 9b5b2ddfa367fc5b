#pragma once

// Odd/even real-to-real transforms applied to the real and imaginary parts of
// an interleaved complex array, backed by FFTW.

#include "radnls/grid.hpp"

#include <span>

namespace radnls::detail {

/// In place: y_k = 2 * sum_{j=1}^{n-1} x_j sin(pi j k / n) for k = 1..n-1.
/// Index i of the span holds sample i+1; the last entry (k = n) is set to 0.
void sine_series(std::span<cplx> data);

/// out_j = 2 * sum_{k=1}^{n-1} c_k cos(pi j k / n) for j = 1..n, where c has the
/// same indexing as sine_series (entry i holds c_{i+1}; the last entry is ignored).
void cosine_series(std::span<const cplx> coeffs, std::span<cplx> out);

} // namespace radnls::detail
