#pragma once

#include <vector>

#include "qgk/field.hpp"

namespace qgk {

/// Per-mode real symbol, stored in the same slot order as SpectralField.
struct Symbol {
    GridSpec grid;
    std::vector<double> values;
};

/// Fourier symbols of the equation's diagonal operators:
///   a(xi) = 1 + |xi|^2 + |xi|^4     (the operator Id - Delta + Delta^2)
///   d(xi) = 1 / a(xi)
///   h(xi) = (1 + |xi|^2) |xi|^4 / a(xi)
/// plus the derivative symbols xi_1, xi_2 (gradient is i*xi).
class MultiplierTable {
public:
    explicit MultiplierTable(const GridSpec& grid);

    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] const Symbol& a() const { return a_; }
    [[nodiscard]] const Symbol& d() const { return d_; }
    [[nodiscard]] const Symbol& h() const { return h_; }
    [[nodiscard]] const Symbol& xi1() const { return xi1_; }
    [[nodiscard]] const Symbol& xi2() const { return xi2_; }
    [[nodiscard]] const Symbol& xi_squared() const { return xi2sum_; }

private:
    GridSpec grid_;
    Symbol a_, d_, h_, xi1_, xi2_, xi2sum_;
};

double symbol_a(double xi_sq);
double symbol_h(double xi_sq);

/// Build a symbol from a function of |xi|^2.
template <class F>
Symbol radial_symbol(const GridSpec& grid, F&& of_xi_sq) {
    Symbol s{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.n; ++i)
        for (std::size_t j = 0; j < grid.n; ++j) s.values[i * grid.n + j] = of_xi_sq(grid.xi_squared(i, j));
    return s;
}

SpectralField apply_multiplier(const SpectralField& u, const Symbol& m);

struct SpectralPair {
    SpectralField x;
    SpectralField y;
};

/// Derivatives act by i*xi; every result has its Nyquist row and column zeroed.
SpectralPair gradient(const SpectralField& u);
/// (-d2 u, d1 u)
SpectralPair perp_gradient(const SpectralField& u);
SpectralField divergence(const SpectralPair& v);
SpectralField laplacian(const SpectralField& u);
SpectralField bilaplacian(const SpectralField& u);
/// (Id - Delta) u, Nyquist zeroed.
SpectralField id_minus_laplacian(const SpectralField& u);

/// Sharp Galerkin cut: zero every mode with |xi|^2 > n_cut.
SpectralField project_jn(const SpectralField& u, double n_cut);

/// L2(torus) pairing through Parseval: L^2 * sum_k Re(c_u(k) conj(c_v(k))).
double inner_product(const SpectralField& u, const SpectralField& v);
/// (L^2 * sum_k (1 + |xi|^2)^s |c(k)|^2)^(1/2)
double sobolev_norm(const SpectralField& u, double s);
/// L^2 * sum_k w(k) |c(k)|^2 for a nonnegative weight symbol.
double weighted_square_sum(const SpectralField& u, const Symbol& weight);

/// Product of two fields evaluated in physical space under the grid's dealias
/// policy. With three_halves_padding the retained coefficients (|k_i| < n/2)
/// are the exact convolution of the inputs restricted to that band; with
/// two_thirds_truncation inputs and output are truncated to |k_i| <= n/3.
SpectralField dealiased_product(const SpectralField& u, const SpectralField& v);

/// sum_i dealiased_product(a_i, b_i), sharing one forward transform.
SpectralField dealiased_dot(const SpectralPair& a, const SpectralPair& b);

/// Zero modes with |k1| > n/3 or |k2| > n/3.
SpectralField truncate_two_thirds(const SpectralField& u);

}  // namespace qgk
