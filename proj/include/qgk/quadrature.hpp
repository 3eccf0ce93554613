#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qgk {

struct QuadratureResult {
    double value;
    double error;
};

/// Adaptive Gauss-Kronrod (7/15) on a finite interval. Throws NumericalError
/// when the error estimate stays above rel_tol * |value| (plus a tiny absolute floor).
QuadratureResult adaptive_integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                    double abs_floor = 1e-300);

/// Adaptive integration over consecutive sub-intervals delimited by `breaks`
/// (sorted ascending); each piece gets the same relative tolerance.
QuadratureResult adaptive_integrate_pieces(const std::function<double(double)>& f, std::span<const double> breaks,
                                           double rel_tol);

/// Composite Simpson rule with `intervals` (rounded up to even) equal steps.
double simpson_fixed(const std::function<double(double)>& f, double a, double b, std::size_t intervals);

/// Integral of samples y over uniformly spaced abscissae with step h, using
/// composite Simpson (with a 3/8 panel when the interval count is odd, and a
/// quadratic-interpolation panel for a single interval). Returns the running
/// integral from the first sample to each sample.
std::vector<double> cumulative_simpson(std::span<const double> y, double h);

}  // namespace qgk
