#pragma once

#include <cstdint>

#include "qgk/field.hpp"

namespace qgk {

/// Seeded band-limited random field: |c(k)| = A (1 + |xi|^2)^(-(slope + 1))
/// for 0 < |k| <= band (integer-index radius), independent uniform phases from
/// std::mt19937_64(seed), Hermitian by construction, mean mode zero. When
/// h3_norm > 0 the field is rescaled so that its H^3 norm equals it.
struct RandomFieldSpec {
    std::uint64_t seed = 1;
    double band = 8.0;
    double slope = 1.0;
    double h3_norm = 1.0;
};

SpectralField random_band_limited(const GridSpec& grid, const RandomFieldSpec& spec);

/// amplitude * cos(xi_k . x) for integer wavevector (k1, k2).
SpectralField cosine_mode(const GridSpec& grid, int k1, int k2, double amplitude);

/// amplitude * exp(-|x - c|^2 / (2 width^2)) centred in the box, sampled and
/// transformed; the Nyquist cross is removed. Meaningful when width << L.
SpectralField gaussian_bump(const GridSpec& grid, double width, double amplitude);

}  // namespace qgk
