#include "qgk/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qgk/operators.hpp"

namespace qgk {

EnergyReport energy_report(const SpectralField& r, const std::vector<double>& sigmas,
                           const std::vector<double>& tilde_s) {
    EnergyReport rep;
    rep.E_first = energy_first(r);
    rep.E_second = energy_second(r);
    for (double s : sigmas) rep.E_sigma.push_back(energy_sigma(r, s));
    for (double s : tilde_s) rep.Etilde_s.push_back(energy_tilde_s(r, s));
    rep.X = x_of(r);
    rep.Y = y_of(r);
    return rep;
}

EnvelopeCheck envelope_check(const decay::DecaySeries& series, double t_lo, double t_hi, double slack) {
    const auto env = series.envelope();
    EnvelopeCheck out;
    std::vector<double> window;
    for (std::size_t i = 0; i < env.size(); ++i) {
        if (series.times[i] < t_lo || series.times[i] > t_hi) continue;
        if (!std::isfinite(env[i])) throw NumericalError("envelope_check: non-finite envelope value");
        window.push_back(env[i]);
        out.sup_ratio = std::max(out.sup_ratio, env[i]);
    }
    out.samples = window.size();
    out.non_increasing = decay::non_increasing(window, slack);
    return out;
}

decay::DecaySeries norm_series(const std::vector<TimedField>& states, double s, double rate) {
    decay::DecaySeries out;
    out.envelope_rate = rate;
    for (const auto& st : states) {
        out.times.push_back(st.t);
        out.values.push_back(sobolev_norm(st.field, s));
    }
    return out;
}

namespace {

void require_matching(const std::vector<TimedField>& a, const std::vector<TimedField>& b) {
    if (a.size() != b.size()) throw ValidationError("run mismatch: different number of samples");
    for (std::size_t i = 0; i < a.size(); ++i) {
        require_same_grid(a[i].field.grid(), b[i].field.grid(), "run comparison");
        if (std::abs(a[i].t - b[i].t) > 1e-9 * std::max(1.0, std::abs(a[i].t))) {
            throw ValidationError("run mismatch: sample times differ at row " + std::to_string(i));
        }
    }
}

// |xi| / a(xi) for one storage slot.
double fz_weight(const GridSpec& g, std::size_t i, std::size_t j) {
    const double q = g.xi_squared(i, j);
    return std::sqrt(q) / symbol_a(q);
}

}  // namespace

CompareReport compare_h3(const std::vector<TimedField>& nonlinear, const std::vector<TimedField>& linear, double eta) {
    require_matching(nonlinear, linear);
    if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("compare_h3: eta must lie in (0, 1)");
    CompareReport rep;
    rep.difference.envelope_rate = eta - 0.5;
    for (std::size_t i = 0; i < nonlinear.size(); ++i) {
        rep.difference.times.push_back(nonlinear[i].t);
        rep.difference.values.push_back(sobolev_norm(nonlinear[i].field - linear[i].field, 3.0));
    }
    for (double v : rep.difference.envelope()) rep.sup_ratio = std::max(rep.sup_ratio, v);
    return rep;
}

double pointwise_bound_fr(const std::vector<TimedField>& states, const SpectralField& r0) {
    const GridSpec& g = r0.grid();
    const double norm2 = std::pow(sobolev_norm(r0, 3.0), 2);
    if (norm2 == 0.0) return 0.0;
    const double area = g.box_length * g.box_length;
    double sup = 0.0;
    for (const auto& st : states) {
        if (st.t <= 0.0) continue;
        require_same_grid(g, st.field.grid(), "pointwise bound");
        const double scale = area / (std::sqrt(st.t) * norm2);
        for (std::size_t i = 0; i < g.n; ++i) {
            for (std::size_t j = 0; j < g.n; ++j) {
                if (i == 0 && j == 0) continue;
                const double excess = std::abs(st.field.at_slot(i, j)) - std::abs(r0.at_slot(i, j));
                sup = std::max(sup, excess * scale / fz_weight(g, i, j));
            }
        }
    }
    return sup;
}

double pointwise_bound_fz(const std::vector<TimedField>& nonlinear, const std::vector<TimedField>& linear,
                          const SpectralField& r0) {
    require_matching(nonlinear, linear);
    const GridSpec& g = r0.grid();
    const double norm2 = std::pow(sobolev_norm(r0, 3.0), 2);
    if (norm2 == 0.0) return 0.0;
    const double area = g.box_length * g.box_length;
    double sup = 0.0;
    for (std::size_t s = 0; s < nonlinear.size(); ++s) {
        const double t = nonlinear[s].t;
        if (t <= 0.0) continue;
        const double scale = area / (std::sqrt(t) * norm2);
        for (std::size_t i = 0; i < g.n; ++i) {
            for (std::size_t j = 0; j < g.n; ++j) {
                if (i == 0 && j == 0) continue;
                const double z = std::abs(nonlinear[s].field.at_slot(i, j) - linear[s].field.at_slot(i, j));
                sup = std::max(sup, z * scale / fz_weight(g, i, j));
            }
        }
    }
    return sup;
}

}  // namespace qgk
