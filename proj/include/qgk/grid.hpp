#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgk {

/// Thrown for any violated precondition on inputs (bad grid, mismatched operands, bad config).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a numerical procedure cannot produce a trustworthy result
/// (non-finite state, quadrature that fails to converge).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DealiasPolicy { three_halves_padding, two_thirds_truncation };

std::string to_string(DealiasPolicy policy);
DealiasPolicy parse_dealias(const std::string& name);

/// Periodic square box [0, L)^2 sampled with n points per side.
///
/// Integer wavevectors (k1, k2) live in [-n/2, n/2)^2 and are stored in FFT
/// order: storage slot i holds index i for i < n/2 and i - n otherwise.
/// The physical wavevector is (2 pi / L) * (k1, k2).
struct GridSpec {
    std::size_t n = 64;
    double box_length = 2.0 * std::numbers::pi;
    DealiasPolicy dealias = DealiasPolicy::three_halves_padding;

    /// Throws ValidationError unless n is even, n >= 8 and L > 0 is finite.
    void validate() const;

    [[nodiscard]] std::size_t size() const { return n * n; }
    [[nodiscard]] double wavenumber_unit() const { return 2.0 * std::numbers::pi / box_length; }
    [[nodiscard]] int nyquist() const { return -static_cast<int>(n / 2); }

    /// Signed integer index of storage slot i.
    [[nodiscard]] int index_of(std::size_t slot) const {
        const auto half = n / 2;
        return slot < half ? static_cast<int>(slot) : static_cast<int>(slot) - static_cast<int>(n);
    }
    /// Storage slot of signed integer index k (k taken modulo n).
    [[nodiscard]] std::size_t slot_of(int k) const {
        const auto nn = static_cast<int>(n);
        return static_cast<std::size_t>(((k % nn) + nn) % nn);
    }
    [[nodiscard]] bool is_nyquist_slot(std::size_t slot) const { return slot == n / 2; }

    /// Physical |xi|^2 of storage position (i, j).
    [[nodiscard]] double xi_squared(std::size_t i, std::size_t j) const {
        const double u = wavenumber_unit();
        const double x1 = u * index_of(i);
        const double x2 = u * index_of(j);
        return x1 * x1 + x2 * x2;
    }

    /// Same box, resolution and policy.
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws ValidationError naming `what` when the two grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace qgk
