#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qgk::decay {

/// Radial modulus |w0^|(rho) of the Fourier transform of a datum on R^2.
class RadialProfile {
public:
    enum class Kind { gaussian, compact_indicator, tabulated };

    /// exp(-rho^2 / (2 width^2))
    static RadialProfile gaussian(double width);
    /// 1 on [0, radius], 0 beyond.
    static RadialProfile compact_indicator(double radius);
    /// Piecewise-linear through (rho_i, value_i), zero beyond the last node.
    static RadialProfile tabulated(std::vector<std::pair<double, double>> samples);
    /// "gaussian:1.0", "indicator:1.0"
    static RadialProfile parse(const std::string& text);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double operator()(double rho) const;
    /// Radius beyond which the profile is zero or below exp(-745).
    [[nodiscard]] double support_radius() const;
    /// Interior points where the profile is not smooth.
    [[nodiscard]] std::vector<double> kinks() const;
    [[nodiscard]] std::string describe() const;

private:
    Kind kind_ = Kind::gaussian;
    double scale_ = 1.0;
    std::vector<std::pair<double, double>> samples_;
};

/// h(rho) = rho^4 (1 + rho^2) / (1 + rho^2 + rho^4)
double h_symbol(double rho);

/// M_k(t) = 2 pi int_0^inf exp(-mu h(rho) t) rho^k |w0^(rho)| rho d rho,
/// adaptive quadrature to relative 1e-9.
double moment_integral(const RadialProfile& profile, int k, double mu, double t);

/// Same integral by uniform composite Simpson with `intervals` steps on the
/// effective support; independent of the adaptive route.
double moment_integral_simpson(const RadialProfile& profile, int k, double mu, double t, std::size_t intervals);

/// 2 pi int rho^(k+1) d(rho) |f^(rho)| int_0^t exp(-mu h(rho)(t - tau)) K (1 + tau)^(-1-eta) d tau d rho
/// with d = 1 / (1 + rho^2 + rho^4); nested adaptive quadrature to relative 1e-8.
double duhamel_moment(const RadialProfile& profile_f, int k, double mu, double eta, double amplitude, double t);

/// int_0^t exp(-lambda (t - tau)) K (1 + tau)^(-1-eta) d tau by adaptive
/// quadrature (relative 1e-10), refined near tau = t and on the scale 1/lambda.
double forcing_memory(double lambda, double eta, double amplitude, double t);

/// Log-spaced samples with count >= 2, both ends included.
std::vector<double> log_spaced(double t0, double t1, std::size_t count);

struct DecaySeries {
    std::vector<double> times;
    std::vector<double> values;
    double envelope_rate = 0.0;
    /// (1 + t)^rate * value
    [[nodiscard]] std::vector<double> envelope() const;
};

struct ExponentFit {
    double slope;
    double stderr_slope;
    std::size_t samples;
};

/// Ordinary least squares of log(value) against log(t) over samples with
/// t in [window_lo, window_hi]. Requires >= 8 samples, all positive.
ExponentFit fit_exponent(const DecaySeries& series, double window_lo, double window_hi);

/// True when each entry is <= the previous one times (1 + slack).
bool non_increasing(const std::vector<double>& values, double slack = 0.0);

}  // namespace qgk::decay
