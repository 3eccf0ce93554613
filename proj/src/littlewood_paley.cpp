#include "qgk/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgk {
namespace {

double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double dyadic_weight(int j, double s) { return std::pow(2.0, 2.0 * j * s); }

}  // namespace

double lp_chi(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double up = psi(2.0 - r);
    return up / (up + psi(r - 1.0));
}

double lp_phi(double r) { return lp_chi(0.5 * r) - lp_chi(r); }

DyadicPartition::DyadicPartition(const GridSpec& grid) : grid_(grid), lambda0_(grid.wavenumber_unit()) {
    grid_.validate();
    const double r_max = std::sqrt(2.0) * static_cast<double>(grid_.n / 2);
    j_max_ = 0;
    while (std::ldexp(1.0, j_max_ + 1) < r_max) ++j_max_;

    blocks_.reserve(static_cast<std::size_t>(j_max_ + 2));
    const double inv = 1.0 / lambda0_;
    blocks_.push_back(radial_symbol(grid_, [inv](double q) { return lp_chi(std::sqrt(q) * inv); }));
    for (int j = 0; j <= j_max_; ++j) {
        const double scale = std::ldexp(inv, -j);
        blocks_.push_back(radial_symbol(grid_, [scale](double q) { return lp_phi(std::sqrt(q) * scale); }));
    }
}

void DyadicPartition::require_block(int j) const {
    if (j < -1 || j > j_max_) {
        throw ValidationError("dyadic block index " + std::to_string(j) + " outside [-1, " +
                              std::to_string(j_max_) + "] for this grid");
    }
}

const Symbol& DyadicPartition::block_symbol(int block) const {
    require_block(block);
    return blocks_[static_cast<std::size_t>(block + 1)];
}

double DyadicPartition::partition_defect() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        double sum = 0.0;
        for (const auto& b : blocks_) sum += b.values[k];
        worst = std::max(worst, std::abs(1.0 - sum));
    }
    return worst;
}

SpectralField DyadicPartition::dyadic_block(const SpectralField& u, int j) const {
    require_same_grid(u.grid(), grid_, "dyadic_block");
    return apply_multiplier(u, block_symbol(j));
}

SpectralField DyadicPartition::low_cut(const SpectralField& u, int j) const {
    require_same_grid(u.grid(), grid_, "low_cut");
    SpectralField out(u.grid());
    for (int k = -1; k <= std::min(j - 1, j_max_); ++k) out += dyadic_block(u, k);
    return out;
}

double DyadicPartition::besov_norm(const SpectralField& u, double s) const {
    require_same_grid(u.grid(), grid_, "besov_norm");
    double sum = 0.0;
    for (int j = -1; j <= j_max_; ++j) {
        const SpectralField b = dyadic_block(u, j);
        sum += dyadic_weight(j, s) * inner_product(b, b);
    }
    return std::sqrt(sum);
}

DyadicPartition::Equivalence DyadicPartition::equivalence_constants(double s) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < grid_.n; ++i) {
        for (std::size_t jj = 0; jj < grid_.n; ++jj) {
            const std::size_t k = i * grid_.n + jj;
            double w = 0.0;
            for (int j = -1; j <= j_max_; ++j) {
                const double phi = blocks_[static_cast<std::size_t>(j + 1)].values[k];
                w += dyadic_weight(j, s) * phi * phi;
            }
            const double ratio = w / std::pow(1.0 + grid_.xi_squared(i, jj), s);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    return {std::sqrt(lo), std::sqrt(hi)};
}

SpectralField DyadicPartition::paraproduct_term(const SpectralField& u, const SpectralField& v, int j) const {
    require_block(j);
    return dealiased_product(low_cut(u, j - 1), dyadic_block(v, j));
}

SpectralField DyadicPartition::paraproduct(const SpectralField& u, const SpectralField& v) const {
    require_same_grid(u.grid(), v.grid(), "paraproduct");
    SpectralField out(grid_);
    // S_{j-1} vanishes for j <= 0.
    for (int j = 1; j <= j_max_; ++j) out += paraproduct_term(u, v, j);
    return out;
}

SpectralField DyadicPartition::remainder(const SpectralField& u, const SpectralField& v) const {
    require_same_grid(u.grid(), v.grid(), "remainder");
    SpectralField out(grid_);
    for (int j = -1; j <= j_max_; ++j) {
        SpectralField near(grid_);
        for (int jp = std::max(-1, j - 1); jp <= std::min(j_max_, j + 1); ++jp) near += dyadic_block(v, jp);
        out += dealiased_product(dyadic_block(u, j), near);
    }
    return out;
}

double DyadicPartition::bernstein_ratio(const SpectralField& u, int j, int k) const {
    require_same_grid(u.grid(), grid_, "bernstein_ratio");
    require_block(j);
    if (k < 0) throw ValidationError("bernstein_ratio: derivative order must be nonnegative");
    const double base = inner_product(u, u);
    if (base == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const Symbol weight = radial_symbol(grid_, [k](double q) { return std::pow(q, k); });
    const double deriv = weighted_square_sum(u, weight);
    return std::sqrt(deriv / base) / std::pow(std::ldexp(lambda0_, j), k);
}

std::vector<DyadicPartition::BlockEnergy> DyadicPartition::block_spectrum(const SpectralField& u, double s) const {
    std::vector<BlockEnergy> rows;
    for (int j = -1; j <= j_max_; ++j) {
        const SpectralField b = dyadic_block(u, j);
        const double l2 = std::sqrt(inner_product(b, b));
        rows.push_back({j, l2, std::pow(2.0, j * s) * l2});
    }
    return rows;
}

}  // namespace qgk
