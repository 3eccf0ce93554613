#pragma once

#include <vector>

#include "qgk/field.hpp"

namespace qgk {

// Energy functionals, evaluated exactly as weighted coefficient sums
// (L^2 * sum_k w(|xi|^2) |c(k)|^2). In the weights q = |xi|^2.

/// (||f||^2 + 2||grad f||^2 + 2||Lap f||^2 + ||grad Lap f||^2) / 2
double energy_first(const SpectralField& f);
/// (||f||^2 + 2||grad f||^2 + 3||Lap f||^2 + 2||grad Lap f||^2 + ||Lap^2 f||^2) / 2
double energy_second(const SpectralField& f);
/// ||Lap f||_{H^sigma}^2 + ||grad Lap f||_{H^sigma}^2 + ||Lap^2 f||_{H^sigma}^2
double energy_sigma(const SpectralField& f, double sigma);
/// ||f||_{H^s}^2 + ||grad f||_{H^s}^2 + ||Lap f||_{H^s}^2 + ||grad Lap f||_{H^s}^2
double energy_tilde_s(const SpectralField& f, double s);
/// ||f||^2 + ||grad f||^2 + ||Lap f||^2 + ||grad Lap f||^2
double x_of(const SpectralField& f);
/// ||Lap f||^2 + ||grad Lap f||^2 + ||Lap^2 f||^2
double y_of(const SpectralField& f);

/// mu (||Lap f||^2 + 2||grad Lap f||^2 + ||Lap^2 f||^2)
double dissipation_first(const SpectralField& f, double mu);
/// mu (||Lap f||^2 + 2||grad Lap f||^2 + 2||Lap^2 f||^2 + ||grad Lap^2 f||^2)
double dissipation_second(const SpectralField& f, double mu);
/// <g, (Id - Lap) f>
double forcing_work_first(const SpectralField& g, const SpectralField& f);
/// <g, (Id - Lap + Lap^2) f>
double forcing_work_second(const SpectralField& g, const SpectralField& f);

/// One diagnostics row.
struct TimeSeriesRecord {
    double t = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double E_first = 0.0;
    double E_second = 0.0;
    std::vector<double> E_sigma;
    std::vector<double> Etilde_s;
    double H3 = 0.0;
    double H4 = 0.0;
    double first_balance_residual = 0.0;
    double second_balance_residual = 0.0;
    double dissipation_first = 0.0;
    double dissipation_second = 0.0;
    double forcing_work_first = 0.0;
    double forcing_work_second = 0.0;
};

/// Evaluate every functional of a record at one instant; balance residuals
/// are left at zero (they need the whole series).
TimeSeriesRecord make_record(double t, const SpectralField& r, const SpectralField& forcing, double mu,
                             const std::vector<double>& sigmas, const std::vector<double>& tilde_s);

/// Energy-law residual of the first kind at every row:
///   E[r(t)] - E[r0] + int_0^t dissipation_first - int_0^t forcing_work_first,
/// divided by E[r0] + int_0^T |forcing_work_first| (no division when that is 0).
/// Time integrals use cumulative Simpson on the row cadence, which must be
/// uniform; throws ValidationError otherwise or when fewer than two rows exist.
std::vector<double> first_balance_series(const std::vector<TimeSeriesRecord>& series);
/// Same with E_second, dissipation_second and forcing_work_second.
std::vector<double> second_balance_series(const std::vector<TimeSeriesRecord>& series);

/// Largest absolute normalized residual over the series.
double first_balance_residual(const std::vector<TimeSeriesRecord>& series);
double second_balance_residual(const std::vector<TimeSeriesRecord>& series);

/// Write both residual series into the rows.
void fill_balance_residuals(std::vector<TimeSeriesRecord>& series);

}  // namespace qgk
