#pragma once

#include <vector>

#include "qgk/field.hpp"

namespace qgk {

/// Physical -> spectral. Coefficients are divided by n^2 so that they are
/// Fourier-series coefficients; Parseval then reads
///   (1/n^2) sum_x |f|^2 * L^2 = L^2 * sum_k |c(k)|^2.
/// Throws ValidationError on non-finite samples.
SpectralField forward_transform(const RealField& f);

/// Spectral -> physical on the field's own n x n lattice. Only the half
/// spectrum k2 in [0, n/2] is read, so the input is assumed Hermitian.
RealField inverse_transform(const SpectralField& u);

namespace detail {

/// Synthesize u on an m x m lattice (m >= n, even) using only the modes with
/// |k1|, |k2| < n/2. Output is row-major m x m.
void synthesize(const SpectralField& u, std::size_t m, std::vector<double>& out);

/// Analyze m x m samples and keep the modes |k1|, |k2| < n/2 of `grid`
/// (Nyquist row and column of the result are zero).
SpectralField analyze(const std::vector<double>& samples, std::size_t m, const GridSpec& grid);

/// Lattice size used for products under the grid's dealias policy.
std::size_t product_lattice(const GridSpec& grid);

}  // namespace detail

/// Number of FFT worker threads, from QGK_THREADS (unset or 0 means 1 on this build).
int fft_threads();

}  // namespace qgk
