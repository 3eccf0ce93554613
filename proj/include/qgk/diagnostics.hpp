#pragma once

#include <vector>

#include "qgk/decay_lab.hpp"
#include "qgk/energy.hpp"

namespace qgk {

/// Every energy functional of one state.
struct EnergyReport {
    double E_first = 0.0;
    double E_second = 0.0;
    std::vector<double> E_sigma;
    std::vector<double> Etilde_s;
    double X = 0.0;
    double Y = 0.0;
};

EnergyReport energy_report(const SpectralField& r, const std::vector<double>& sigmas,
                           const std::vector<double>& tilde_s);

/// A state sampled at time t.
struct TimedField {
    double t;
    SpectralField field;
};

struct EnvelopeCheck {
    double sup_ratio = 0.0;     // sup of (1 + t)^rate * value over the window
    bool non_increasing = true;  // ratio non-increasing over the window (with slack)
    std::size_t samples = 0;
};

/// Evaluate the one-sided envelope (1 + t)^rate * value on [t_lo, t_hi].
EnvelopeCheck envelope_check(const decay::DecaySeries& series, double t_lo, double t_hi, double slack = 0.0);

/// ||r(t)||_{H^s} with envelope rate `rate` attached.
decay::DecaySeries norm_series(const std::vector<TimedField>& states, double s, double rate);

struct CompareReport {
    decay::DecaySeries difference;  ///< ||r(t) - w(t)||_{H^3}, envelope rate eta - 1/2
    double sup_ratio = 0.0;         ///< sup over all samples of ||z|| / (1 + t)^(1/2 - eta)
};

/// Nonlinear run against the linear run from the same data. Sample times and
/// grids must agree (ValidationError otherwise).
CompareReport compare_h3(const std::vector<TimedField>& nonlinear, const std::vector<TimedField>& linear, double eta);

/// sup over t > 0 and xi != 0 of (|r^(t, xi)| - |r^0(xi)|) a(xi) / (|xi| sqrt(t) ||r0||_{H^3}^2),
/// with r^ the continuum transform L^2 c(k). Samples at t = 0 are skipped.
double pointwise_bound_fr(const std::vector<TimedField>& states, const SpectralField& r0);

/// sup over t > 0 and xi != 0 of |z^(t, xi)| a(xi) / (|xi| sqrt(t) ||r0||_{H^3}^2), z = r - w.
double pointwise_bound_fz(const std::vector<TimedField>& nonlinear, const std::vector<TimedField>& linear,
                          const SpectralField& r0);

}  // namespace qgk
