#include "qgk/energy.hpp"

#include <algorithm>
#include <cmath>

#include "qgk/operators.hpp"
#include "qgk/quadrature.hpp"

namespace qgk {
namespace {

template <class W>
double weighted(const SpectralField& f, W&& weight) {
    const GridSpec& g = f.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) sum += weight(g.xi_squared(i, j)) * std::norm(f.at_slot(i, j));
    return g.box_length * g.box_length * sum;
}

template <class W>
double weighted_pairing(const SpectralField& a, const SpectralField& b, W&& weight) {
    require_same_grid(a.grid(), b.grid(), "forcing work");
    const GridSpec& g = a.grid();
    double sum = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t j = 0; j < g.n; ++j) {
            const Complex x = a.at_slot(i, j);
            const Complex y = b.at_slot(i, j);
            sum += weight(g.xi_squared(i, j)) * (x.real() * y.real() + x.imag() * y.imag());
        }
    }
    return g.box_length * g.box_length * sum;
}

}  // namespace

double energy_first(const SpectralField& f) {
    return 0.5 * weighted(f, [](double q) { return 1.0 + 2.0 * q + 2.0 * q * q + q * q * q; });
}

double energy_second(const SpectralField& f) {
    return 0.5 * weighted(f, [](double q) {
               const double q2 = q * q;
               return 1.0 + 2.0 * q + 3.0 * q2 + 2.0 * q2 * q + q2 * q2;
           });
}

double energy_sigma(const SpectralField& f, double sigma) {
    return weighted(f, [sigma](double q) {
        const double q2 = q * q;
        return std::pow(1.0 + q, sigma) * (q2 + q2 * q + q2 * q2);
    });
}

double energy_tilde_s(const SpectralField& f, double s) {
    return weighted(f, [s](double q) { return std::pow(1.0 + q, s) * (1.0 + q + q * q + q * q * q); });
}

double x_of(const SpectralField& f) {
    return weighted(f, [](double q) { return 1.0 + q + q * q + q * q * q; });
}

double y_of(const SpectralField& f) {
    return weighted(f, [](double q) {
        const double q2 = q * q;
        return q2 + q2 * q + q2 * q2;
    });
}

double dissipation_first(const SpectralField& f, double mu) {
    return mu * weighted(f, [](double q) {
               const double q2 = q * q;
               return q2 + 2.0 * q2 * q + q2 * q2;
           });
}

double dissipation_second(const SpectralField& f, double mu) {
    return mu * weighted(f, [](double q) {
               const double q2 = q * q;
               return q2 + 2.0 * q2 * q + 2.0 * q2 * q2 + q2 * q2 * q;
           });
}

double forcing_work_first(const SpectralField& g, const SpectralField& f) {
    return weighted_pairing(g, f, [](double q) { return 1.0 + q; });
}

double forcing_work_second(const SpectralField& g, const SpectralField& f) {
    return weighted_pairing(g, f, [](double q) { return symbol_a(q); });
}

TimeSeriesRecord make_record(double t, const SpectralField& r, const SpectralField& forcing, double mu,
                             const std::vector<double>& sigmas, const std::vector<double>& tilde_s) {
    TimeSeriesRecord rec;
    rec.t = t;
    rec.X = x_of(r);
    rec.Y = y_of(r);
    rec.E_first = energy_first(r);
    rec.E_second = energy_second(r);
    for (double s : sigmas) rec.E_sigma.push_back(energy_sigma(r, s));
    for (double s : tilde_s) rec.Etilde_s.push_back(energy_tilde_s(r, s));
    rec.H3 = sobolev_norm(r, 3.0);
    rec.H4 = sobolev_norm(r, 4.0);
    rec.dissipation_first = dissipation_first(r, mu);
    rec.dissipation_second = dissipation_second(r, mu);
    rec.forcing_work_first = forcing_work_first(forcing, r);
    rec.forcing_work_second = forcing_work_second(forcing, r);
    return rec;
}

namespace {

double uniform_step(const std::vector<TimeSeriesRecord>& series) {
    if (series.size() < 2) throw ValidationError("balance residual: series needs at least two rows");
    const double h = series[1].t - series[0].t;
    if (!(h > 0.0)) throw ValidationError("balance residual: times must increase");
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double step = series[i].t - series[i - 1].t;
        if (std::abs(step - h) > 1e-9 * h) throw ValidationError("balance residual: rows are not uniformly spaced");
    }
    return h;
}

template <class Energy, class Dissipation, class Work>
std::vector<double> balance_series(const std::vector<TimeSeriesRecord>& series, Energy energy, Dissipation diss,
                                   Work work) {
    const double h = uniform_step(series);
    std::vector<double> d, w, aw;
    for (const auto& r : series) {
        d.push_back(diss(r));
        w.push_back(work(r));
        aw.push_back(std::abs(work(r)));
    }
    const auto int_d = cumulative_simpson(d, h);
    const auto int_w = cumulative_simpson(w, h);
    const auto int_aw = cumulative_simpson(aw, h);
    const double e0 = energy(series.front());
    const double scale = e0 + int_aw.back();
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double r = energy(series[i]) - e0 + int_d[i] - int_w[i];
        out[i] = scale > 0.0 ? r / scale : r;
    }
    return out;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

std::vector<double> first_balance_series(const std::vector<TimeSeriesRecord>& series) {
    return balance_series(
        series, [](const TimeSeriesRecord& r) { return r.E_first; },
        [](const TimeSeriesRecord& r) { return r.dissipation_first; },
        [](const TimeSeriesRecord& r) { return r.forcing_work_first; });
}

std::vector<double> second_balance_series(const std::vector<TimeSeriesRecord>& series) {
    return balance_series(
        series, [](const TimeSeriesRecord& r) { return r.E_second; },
        [](const TimeSeriesRecord& r) { return r.dissipation_second; },
        [](const TimeSeriesRecord& r) { return r.forcing_work_second; });
}

double first_balance_residual(const std::vector<TimeSeriesRecord>& series) {
    return max_abs(first_balance_series(series));
}

double second_balance_residual(const std::vector<TimeSeriesRecord>& series) {
    return max_abs(second_balance_series(series));
}

void fill_balance_residuals(std::vector<TimeSeriesRecord>& series) {
    if (series.size() < 2) return;
    const auto first = first_balance_series(series);
    const auto second = second_balance_series(series);
    for (std::size_t i = 0; i < series.size(); ++i) {
        series[i].first_balance_residual = first[i];
        series[i].second_balance_residual = second[i];
    }
}

}  // namespace qgk
