#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qgk/grid.hpp"

namespace qgk {

using Complex = std::complex<double>;

/// Real samples on the n x n lattice; sample (i, j) sits at (L i / n, L j / n)
/// and is stored at i * n + j.
class RealField {
public:
    RealField() = default;
    explicit RealField(const GridSpec& grid);
    RealField(const GridSpec& grid, std::vector<double> samples);

    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] std::span<double> samples() { return samples_; }
    [[nodiscard]] std::span<const double> samples() const { return samples_; }

    double& operator()(std::size_t i, std::size_t j) { return samples_[i * grid_.n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return samples_[i * grid_.n + j]; }

    [[nodiscard]] bool all_finite() const;

private:
    GridSpec grid_;
    std::vector<double> samples_;
};

/// Fourier coefficients c(k) of a real field, normalized as Fourier-series
/// coefficients: f(x) = sum_k c(k) exp(i xi_k . x). Storage is n x n in FFT
/// order (see GridSpec), row index k1, column index k2.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid);
    SpectralField(const GridSpec& grid, std::vector<Complex> coeffs);

    [[nodiscard]] const GridSpec& grid() const { return grid_; }
    [[nodiscard]] std::span<Complex> coeffs() { return coeffs_; }
    [[nodiscard]] std::span<const Complex> coeffs() const { return coeffs_; }

    Complex& at_slot(std::size_t i, std::size_t j) { return coeffs_[i * grid_.n + j]; }
    [[nodiscard]] Complex at_slot(std::size_t i, std::size_t j) const { return coeffs_[i * grid_.n + j]; }
    /// Coefficient at signed integer wavevector (k1, k2).
    Complex& at(int k1, int k2) { return at_slot(grid_.slot_of(k1), grid_.slot_of(k2)); }
    [[nodiscard]] Complex at(int k1, int k2) const { return at_slot(grid_.slot_of(k1), grid_.slot_of(k2)); }

    [[nodiscard]] Complex mean() const { return coeffs_.empty() ? Complex{} : coeffs_[0]; }

    /// max_k |c(-k) - conj(c(k))|, relative to max_k |c(k)| (0 for the zero field).
    [[nodiscard]] double hermitian_defect() const;
    /// Replace c by (c(k) + conj(c(-k)))/2 and drop the imaginary part of self-conjugate modes.
    void symmetrize();
    /// Zero every coefficient whose k1 or k2 equals the Nyquist index -n/2.
    void zero_nyquist();
    [[nodiscard]] bool all_finite() const;
    /// Largest coefficient modulus.
    [[nodiscard]] double max_abs() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);
    /// this += s * other
    SpectralField& axpy(double s, const SpectralField& other);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

private:
    GridSpec grid_;
    std::vector<Complex> coeffs_;
};

/// Relative L2 distance ||a - b|| / max(||a||, ||b||) over coefficients; 0 when both vanish.
double relative_difference(const SpectralField& a, const SpectralField& b);

}  // namespace qgk
