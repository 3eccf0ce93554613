#include "qgk/bilinear.hpp"

#include <cmath>

namespace qgk {

SpectralPair velocity(const SpectralField& rho) { return perp_gradient(id_minus_laplacian(rho)); }

BilinearResult evaluate_lambda(const SpectralField& rho, const SpectralField& zeta, LambdaRoute route) {
    require_same_grid(rho.grid(), zeta.grid(), "lambda");
    SpectralPair u = velocity(rho);
    const SpectralField q = bilaplacian(zeta);
    SpectralField out;
    if (route == LambdaRoute::advective) {
        out = dealiased_dot(u, gradient(q));
    } else {
        SpectralPair flux{dealiased_product(u.x, q), dealiased_product(u.y, q)};
        out = divergence(flux);
    }
    out.zero_nyquist();
    // Divergence form: the mean coefficient is zero identically.
    out.at(0, 0) = 0.0;
    return {std::move(out), std::move(u)};
}

namespace {

double l2(const SpectralField& u) { return std::sqrt(inner_product(u, u)); }

double relative(double value, double scale) { return scale > 0.0 ? std::abs(value) / scale : 0.0; }

}  // namespace

double pairing_first(const SpectralField& rho, const SpectralField& zeta) {
    return inner_product(lambda(rho, zeta), id_minus_laplacian(rho));
}

double pairing_second(const SpectralField& rho, const SpectralField& zeta) {
    return inner_product(lambda(rho, zeta), bilaplacian(zeta));
}

double pairing_first_relative(const SpectralField& rho, const SpectralField& zeta) {
    const SpectralField lam = lambda(rho, zeta);
    const SpectralField test = id_minus_laplacian(rho);
    return relative(inner_product(lam, test), l2(lam) * l2(test));
}

double pairing_second_relative(const SpectralField& rho, const SpectralField& zeta) {
    const SpectralField lam = lambda(rho, zeta);
    const SpectralField test = bilaplacian(zeta);
    return relative(inner_product(lam, test), l2(lam) * l2(test));
}

double antisymmetry_residual(const SpectralField& rho, const SpectralField& phi) {
    require_same_grid(rho.grid(), phi.grid(), "antisymmetry_residual");
    const BilinearResult res = evaluate_lambda(rho, rho);
    const double lhs = inner_product(res.lambda, phi);
    SpectralField a_rho = id_minus_laplacian(rho);
    a_rho += bilaplacian(rho);
    const double rhs = -inner_product(dealiased_dot(res.velocity, gradient(phi)), a_rho);
    const double scale = l2(res.lambda) * l2(phi);
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
}

}  // namespace qgk
