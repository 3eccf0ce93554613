#pragma once

#include <vector>

#include "qgk/operators.hpp"

namespace qgk {

/// Smooth radial cut-off: chi(r) = 1 for r <= 1, 0 for r >= 2, and on the
/// transition annulus the monotone blend psi(2 - r) / (psi(2 - r) + psi(r - 1))
/// with psi(t) = exp(-1/t). Profile version 1.
double lp_chi(double r);

/// phi(r) = chi(r / 2) - chi(r); supported in 1 <= r <= 4.
double lp_phi(double r);

/// Non-homogeneous dyadic partition on a grid, in units of the lowest
/// nonzero wavenumber lambda0 = 2 pi / L:
///   Delta_{-1} = chi(|xi| / lambda0)
///   Delta_j    = phi(2^-j |xi| / lambda0),   j = 0 .. j_max
/// Block j >= 0 lives on 2^j <= |xi| / lambda0 <= 2^(j+2); the mean mode is
/// carried by j = -1. j_max is the smallest index for which the blocks cover
/// every stored mode.
class DyadicPartition {
public:
    explicit DyadicPartition(const GridSpec& grid);

    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] int j_max() const { return j_max_; }
    [[nodiscard]] double frequency_unit() const { return lambda0_; }

    /// Block weight of storage position (i, j) in block `block`.
    [[nodiscard]] const Symbol& block_symbol(int block) const;

    /// max over modes of |1 - sum_j weight_j|
    [[nodiscard]] double partition_defect() const;

    [[nodiscard]] SpectralField dyadic_block(const SpectralField& u, int j) const;
    /// S_j u = sum_{k <= j-1} Delta_k u  (zero for j <= -1)
    [[nodiscard]] SpectralField low_cut(const SpectralField& u, int j) const;

    /// (sum_j 2^(2 j s) ||Delta_j u||^2)^(1/2), p = r = 2.
    [[nodiscard]] double besov_norm(const SpectralField& u, double s) const;

    /// Sharp constants (c, C) with c ||u||_{H^s} <= besov_norm(u, s) <= C ||u||_{H^s}
    /// for every field on this grid (extremes of the per-mode weight ratio).
    struct Equivalence {
        double lower;
        double upper;
    };
    [[nodiscard]] Equivalence equivalence_constants(double s) const;

    /// T_u v = sum_j S_{j-1} u * Delta_j v (dealiased products).
    [[nodiscard]] SpectralField paraproduct(const SpectralField& u, const SpectralField& v) const;
    /// R(u, v) = sum_j sum_{|j'-j| <= 1} Delta_j u * Delta_j' v.
    [[nodiscard]] SpectralField remainder(const SpectralField& u, const SpectralField& v) const;
    /// Single paraproduct term S_{j-1} u * Delta_j v.
    [[nodiscard]] SpectralField paraproduct_term(const SpectralField& u, const SpectralField& v, int j) const;

    /// ||grad^k u|| / (2^(j k) lambda0^k ||u||) for u already localized to block j.
    /// Returns NaN for a zero block.
    [[nodiscard]] double bernstein_ratio(const SpectralField& u, int j, int k) const;

    struct BlockEnergy {
        int j;
        double l2;
        double weighted;  ///< 2^(j s) * l2
    };
    [[nodiscard]] std::vector<BlockEnergy> block_spectrum(const SpectralField& u, double s) const;

private:
    void require_block(int j) const;

    GridSpec grid_;
    double lambda0_;
    int j_max_;
    std::vector<Symbol> blocks_;  // index j + 1
};

}  // namespace qgk
