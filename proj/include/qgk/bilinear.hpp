#pragma once

#include "qgk/operators.hpp"

namespace qgk {

/// Transport operator Lambda(rho, zeta) = div(u * Delta^2 zeta) with the
/// divergence-free velocity u = perp_gradient((Id - Delta) rho).
///
/// Both evaluation routes are pseudo-spectral and use the grid's dealias
/// policy. Under three_halves_padding every pairing identity below holds to
/// round-off for fields without Nyquist content.
enum class LambdaRoute {
    divergence,  ///< div(P(u q)): two products, then a divergence
    advective,   ///< P(u . grad q): one fused product (default)
};

struct BilinearResult {
    SpectralField lambda;
    SpectralPair velocity;
};

/// u = perp_gradient((Id - Delta) rho)
SpectralPair velocity(const SpectralField& rho);

BilinearResult evaluate_lambda(const SpectralField& rho, const SpectralField& zeta,
                               LambdaRoute route = LambdaRoute::advective);

inline SpectralField lambda(const SpectralField& rho, const SpectralField& zeta,
                            LambdaRoute route = LambdaRoute::advective) {
    return evaluate_lambda(rho, zeta, route).lambda;
}

/// <Lambda(rho, zeta), (Id - Delta) rho>
double pairing_first(const SpectralField& rho, const SpectralField& zeta);
/// <Lambda(rho, zeta), Delta^2 zeta>
double pairing_second(const SpectralField& rho, const SpectralField& zeta);

/// Pairing divided by its Cauchy-Schwarz scale ||Lambda|| * ||test field||
/// (0 when that scale vanishes).
double pairing_first_relative(const SpectralField& rho, const SpectralField& zeta);
double pairing_second_relative(const SpectralField& rho, const SpectralField& zeta);

/// Compares <Lambda(rho, rho), phi> with -int u . grad(phi) (Id - Delta + Delta^2) rho.
/// Returns |lhs - rhs| / (||Lambda(rho, rho)|| ||phi||), or |lhs - rhs| when that scale is 0.
double antisymmetry_residual(const SpectralField& rho, const SpectralField& phi);

}  // namespace qgk
