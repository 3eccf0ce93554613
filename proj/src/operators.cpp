#include "qgk/operators.hpp"

#include <cmath>

#include "qgk/transform.hpp"

namespace qgk {

double symbol_a(double xi_sq) { return 1.0 + xi_sq + xi_sq * xi_sq; }

double symbol_h(double xi_sq) { return (1.0 + xi_sq) * xi_sq * xi_sq / symbol_a(xi_sq); }

MultiplierTable::MultiplierTable(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    a_ = radial_symbol(grid_, symbol_a);
    d_ = radial_symbol(grid_, [](double q) { return 1.0 / symbol_a(q); });
    h_ = radial_symbol(grid_, symbol_h);
    xi2sum_ = radial_symbol(grid_, [](double q) { return q; });
    xi1_ = Symbol{grid_, std::vector<double>(grid_.size())};
    xi2_ = Symbol{grid_, std::vector<double>(grid_.size())};
    const double unit = grid_.wavenumber_unit();
    for (std::size_t i = 0; i < grid_.n; ++i) {
        for (std::size_t j = 0; j < grid_.n; ++j) {
            xi1_.values[i * grid_.n + j] = unit * grid_.index_of(i);
            xi2_.values[i * grid_.n + j] = unit * grid_.index_of(j);
        }
    }
}

SpectralField apply_multiplier(const SpectralField& u, const Symbol& m) {
    require_same_grid(u.grid(), m.grid, "apply_multiplier");
    SpectralField out(u);
    auto c = out.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m.values[k];
    return out;
}

namespace {

// Multiply by i * xi_axis (axis 0 -> k1, axis 1 -> k2) and zero the Nyquist cross.
SpectralField derivative(const SpectralField& u, int axis) {
    const GridSpec& g = u.grid();
    const double unit = g.wavenumber_unit();
    SpectralField out(g);
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            const double xi = unit * (axis == 0 ? g.index_of(i) : g.index_of(j));
            out.at_slot(i, j) = Complex(0.0, xi) * u.at_slot(i, j);
        }
    }
    out.zero_nyquist();
    return out;
}

template <class F>
SpectralField radial_apply(const SpectralField& u, F&& of_xi_sq) {
    const GridSpec& g = u.grid();
    SpectralField out(g);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) out.at_slot(i, j) = of_xi_sq(g.xi_squared(i, j)) * u.at_slot(i, j);
    return out;
}

}  // namespace

SpectralPair gradient(const SpectralField& u) { return {derivative(u, 0), derivative(u, 1)}; }

SpectralPair perp_gradient(const SpectralField& u) {
    SpectralField minus_d2 = derivative(u, 1);
    minus_d2 *= -1.0;
    return {std::move(minus_d2), derivative(u, 0)};
}

SpectralField divergence(const SpectralPair& v) {
    require_same_grid(v.x.grid(), v.y.grid(), "divergence");
    SpectralField out = derivative(v.x, 0);
    out += derivative(v.y, 1);
    return out;
}

SpectralField laplacian(const SpectralField& u) {
    SpectralField out = radial_apply(u, [](double q) { return -q; });
    out.zero_nyquist();
    return out;
}

SpectralField bilaplacian(const SpectralField& u) {
    SpectralField out = radial_apply(u, [](double q) { return q * q; });
    out.zero_nyquist();
    return out;
}

SpectralField id_minus_laplacian(const SpectralField& u) {
    SpectralField out = radial_apply(u, [](double q) { return 1.0 + q; });
    out.zero_nyquist();
    return out;
}

SpectralField project_jn(const SpectralField& u, double n_cut) {
    if (!(n_cut > 0.0)) throw ValidationError("project_jn: n_cut must be positive");
    return radial_apply(u, [n_cut](double q) { return q <= n_cut ? 1.0 : 0.0; });
}

double inner_product(const SpectralField& u, const SpectralField& v) {
    require_same_grid(u.grid(), v.grid(), "inner_product");
    const auto cu = u.coeffs();
    const auto cv = v.coeffs();
    double sum = 0.0;
    for (std::size_t k = 0; k < cu.size(); ++k) sum += cu[k].real() * cv[k].real() + cu[k].imag() * cv[k].imag();
    const double L = u.grid().box_length;
    return L * L * sum;
}

double weighted_square_sum(const SpectralField& u, const Symbol& weight) {
    require_same_grid(u.grid(), weight.grid, "weighted_square_sum");
    const auto c = u.coeffs();
    double sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) sum += weight.values[k] * std::norm(c[k]);
    const double L = u.grid().box_length;
    return L * L * sum;
}

double sobolev_norm(const SpectralField& u, double s) {
    const GridSpec& g = u.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            const double w = s == 0.0 ? 1.0 : std::pow(1.0 + g.xi_squared(i, j), s);
            sum += w * std::norm(u.at_slot(i, j));
        }
    }
    return g.box_length * std::sqrt(sum);
}

SpectralField truncate_two_thirds(const SpectralField& u) {
    const GridSpec& g = u.grid();
    const int n = static_cast<int>(g.n);
    SpectralField out(u);
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            if (3 * std::abs(g.index_of(i)) >= n || 3 * std::abs(g.index_of(j)) >= n) out.at_slot(i, j) = 0.0;
        }
    }
    return out;
}

namespace {

// Physical-space product of pairs, sum_i a_i * b_i, on the policy lattice.
SpectralField product_sum(std::span<const SpectralField* const> a, std::span<const SpectralField* const> b) {
    const GridSpec& g = a[0]->grid();
    const std::size_t m = detail::product_lattice(g);
    std::vector<double> acc(m * m, 0.0);
    std::vector<double> pa, pb;
    for (std::size_t t = 0; t < a.size(); ++t) {
        require_same_grid(g, a[t]->grid(), "dealiased_product");
        require_same_grid(g, b[t]->grid(), "dealiased_product");
        detail::synthesize(*a[t], m, pa);
        detail::synthesize(*b[t], m, pb);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += pa[k] * pb[k];
    }
    SpectralField out = detail::analyze(acc, m, g);
    if (g.dealias == DealiasPolicy::two_thirds_truncation) out = truncate_two_thirds(out);
    return out;
}

}  // namespace

SpectralField dealiased_product(const SpectralField& u, const SpectralField& v) {
    const SpectralField* a[] = {&u};
    const SpectralField* b[] = {&v};
    return product_sum(a, b);
}

SpectralField dealiased_dot(const SpectralPair& a, const SpectralPair& b) {
    const SpectralField* pa[] = {&a.x, &a.y};
    const SpectralField* pb[] = {&b.x, &b.y};
    return product_sum(pa, pb);
}

}  // namespace qgk
