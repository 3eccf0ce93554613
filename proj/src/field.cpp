#include "qgk/field.hpp"

#include <algorithm>
#include <cmath>

namespace qgk {

std::string to_string(DealiasPolicy policy) {
    switch (policy) {
    case DealiasPolicy::three_halves_padding: return "three_halves_padding";
    case DealiasPolicy::two_thirds_truncation: return "two_thirds_truncation";
    }
    return "unknown";
}

DealiasPolicy parse_dealias(const std::string& name) {
    if (name == "three_halves_padding" || name == "three_halves") return DealiasPolicy::three_halves_padding;
    if (name == "two_thirds_truncation" || name == "two_thirds") return DealiasPolicy::two_thirds_truncation;
    throw ValidationError("unknown dealias policy '" + name + "'");
}

void GridSpec::validate() const {
    if (n < 8 || n % 2 != 0) {
        throw ValidationError("grid.n must be an even integer >= 8 (got " + std::to_string(n) + ")");
    }
    if (!(box_length > 0.0) || !std::isfinite(box_length)) {
        throw ValidationError("grid.box_length must be positive and finite");
    }
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (a.n != b.n || a.box_length != b.box_length) {
        throw ValidationError(std::string("grid mismatch in ") + what);
    }
}

RealField::RealField(const GridSpec& grid) : grid_(grid), samples_(grid.size(), 0.0) { grid_.validate(); }

RealField::RealField(const GridSpec& grid, std::vector<double> samples) : grid_(grid), samples_(std::move(samples)) {
    grid_.validate();
    if (samples_.size() != grid_.size()) throw ValidationError("RealField: sample count does not match grid");
}

bool RealField::all_finite() const {
    return std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); });
}

SpectralField::SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.size()) { grid_.validate(); }

SpectralField::SpectralField(const GridSpec& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    grid_.validate();
    if (coeffs_.size() != grid_.size()) throw ValidationError("SpectralField: coefficient count does not match grid");
}

double SpectralField::hermitian_defect() const {
    const std::size_t n = grid_.n;
    double defect = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mi = (n - i) % n;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t mj = (n - j) % n;
            defect = std::max(defect, std::abs(at_slot(mi, mj) - std::conj(at_slot(i, j))));
            scale = std::max(scale, std::abs(at_slot(i, j)));
        }
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

void SpectralField::symmetrize() {
    const std::size_t n = grid_.n;
    std::vector<Complex> out(coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t mi = (n - i) % n;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t mj = (n - j) % n;
            out[i * n + j] = 0.5 * (at_slot(i, j) + std::conj(at_slot(mi, mj)));
        }
    }
    coeffs_ = std::move(out);
}

void SpectralField::zero_nyquist() {
    const std::size_t n = grid_.n;
    const std::size_t q = n / 2;
    for (std::size_t j = 0; j < n; ++j) at_slot(q, j) = 0.0;
    for (std::size_t i = 0; i < n; ++i) at_slot(i, q) = 0.0;
}

bool SpectralField::all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_, "SpectralField::operator+=");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_, "SpectralField::operator-=");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
    require_same_grid(grid_, other.grid_, "SpectralField::axpy");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += s * other.coeffs_[k];
    return *this;
}

double relative_difference(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid(), b.grid(), "relative_difference");
    double diff = 0.0, na = 0.0, nb = 0.0;
    const auto ca = a.coeffs();
    const auto cb = b.coeffs();
    for (std::size_t k = 0; k < ca.size(); ++k) {
        diff += std::norm(ca[k] - cb[k]);
        na += std::norm(ca[k]);
        nb += std::norm(cb[k]);
    }
    const double scale = std::sqrt(std::max(na, nb));
    return scale > 0.0 ? std::sqrt(diff) / scale : 0.0;
}

}  // namespace qgk
