#include "qgk/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "qgk/operators.hpp"
#include "qgk/transform.hpp"

namespace qgk {

SpectralField random_band_limited(const GridSpec& grid, const RandomFieldSpec& spec) {
    grid.validate();
    if (!(spec.band > 0.0)) throw ValidationError("random field: band must be positive");
    if (spec.band > static_cast<double>(grid.n / 2) - 1.0) {
        throw ValidationError("random field: band exceeds the resolvable range |k| < n/2");
    }
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    SpectralField out(grid);
    const int kmax = static_cast<int>(std::floor(spec.band));
    const double unit = grid.wavenumber_unit();
    // Canonical half plane: k1 > 0, or k1 == 0 and k2 > 0.
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            const double r2 = static_cast<double>(k1 * k1 + k2 * k2);
            const double theta = phase(rng);
            if (r2 > spec.band * spec.band) continue;
            const double xi_sq = unit * unit * r2;
            const double amp = std::pow(1.0 + xi_sq, -(spec.slope + 1.0));
            const Complex c = std::polar(amp, theta);
            out.at(k1, k2) = c;
            out.at(-k1, -k2) = std::conj(c);
        }
    }
    if (spec.h3_norm > 0.0) {
        const double norm = sobolev_norm(out, 3.0);
        if (norm > 0.0) out *= spec.h3_norm / norm;
    }
    return out;
}

SpectralField cosine_mode(const GridSpec& grid, int k1, int k2, double amplitude) {
    grid.validate();
    const int half = static_cast<int>(grid.n / 2);
    if (std::abs(k1) >= half || std::abs(k2) >= half) throw ValidationError("cosine_mode: wavevector not resolvable");
    SpectralField out(grid);
    if (k1 == 0 && k2 == 0) {
        out.at(0, 0) = amplitude;
        return out;
    }
    out.at(k1, k2) = 0.5 * amplitude;
    out.at(-k1, -k2) = 0.5 * amplitude;
    return out;
}

SpectralField gaussian_bump(const GridSpec& grid, double width, double amplitude) {
    grid.validate();
    if (!(width > 0.0)) throw ValidationError("gaussian_bump: width must be positive");
    RealField f(grid);
    const double L = grid.box_length;
    const double h = L / static_cast<double>(grid.n);
    const double c = 0.5 * L;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double dx = h * static_cast<double>(i) - c;
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double dy = h * static_cast<double>(j) - c;
            f(i, j) = amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
        }
    }
    SpectralField out = forward_transform(f);
    out.zero_nyquist();
    return out;
}

}  // namespace qgk
