#include "qgk/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qgk/decay_lab.hpp"
#include "qgk/quadrature.hpp"
#include "qgk/transform.hpp"

namespace qgk {

// ---------------------------------------------------------------------------
// Forcing

ForcingSpec ForcingSpec::zero() { return {}; }

ForcingSpec ForcingSpec::separable(SpectralField profile, double amplitude, double eta) {
    ForcingSpec f;
    f.kind = Kind::separable_decaying;
    f.profile = std::move(profile);
    f.amplitude = amplitude;
    f.eta = eta;
    return f;
}

ForcingSpec ForcingSpec::tabulated_from(std::vector<std::pair<double, SpectralField>> nodes) {
    ForcingSpec f;
    f.kind = Kind::tabulated;
    f.table = std::move(nodes);
    return f;
}

void ForcingSpec::validate(const GridSpec& grid) const {
    switch (kind) {
    case Kind::zero: return;
    case Kind::separable_decaying:
        require_same_grid(grid, profile.grid(), "forcing profile");
        if (!(amplitude >= 0.0)) throw ValidationError("forcing.k must be nonnegative");
        if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("forcing.eta must lie in (0, 1)");
        return;
    case Kind::tabulated:
        if (table.empty()) throw ValidationError("tabulated forcing needs at least one node");
        for (std::size_t i = 0; i < table.size(); ++i) {
            require_same_grid(grid, table[i].second.grid(), "tabulated forcing node");
            if (i > 0 && !(table[i].first > table[i - 1].first)) {
                throw ValidationError("tabulated forcing times must be strictly increasing");
            }
        }
        return;
    }
}

double ForcingSpec::time_factor(double t) const { return amplitude * std::pow(1.0 + t, -1.0 - eta); }

SpectralField ForcingSpec::at(double t, const GridSpec& grid) const {
    switch (kind) {
    case Kind::zero: return SpectralField(grid);
    case Kind::separable_decaying: return time_factor(t) * profile;
    case Kind::tabulated: {
        if (t <= table.front().first) return table.front().second;
        if (t >= table.back().first) return table.back().second;
        auto it = std::upper_bound(table.begin(), table.end(), t,
                                   [](double x, const auto& node) { return x < node.first; });
        const auto& [t1, f1] = *it;
        const auto& [t0, f0] = *(it - 1);
        const double w = (t - t0) / (t1 - t0);
        SpectralField out = (1.0 - w) * f0;
        out.axpy(w, f1);
        return out;
    }
    }
    return SpectralField(grid);
}

std::string to_string(ForcingSpec::Kind kind) {
    switch (kind) {
    case ForcingSpec::Kind::zero: return "zero";
    case ForcingSpec::Kind::separable_decaying: return "separable_decaying";
    case ForcingSpec::Kind::tabulated: return "tabulated";
    }
    return "unknown";
}

std::string to_string(Stepper s) { return s == Stepper::if_rk4 ? "if_rk4" : "if_rk2"; }

Stepper parse_stepper(const std::string& name) {
    if (name == "if_rk4") return Stepper::if_rk4;
    if (name == "if_rk2") return Stepper::if_rk2;
    throw ValidationError("unknown stepper '" + name + "' (expected if_rk4 or if_rk2)");
}

// ---------------------------------------------------------------------------
// Run configuration

void RunConfig::validate() const {
    grid.validate();
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be >= 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("t_end must be > 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be > 0");
    if (galerkin_cut && !(*galerkin_cut > 0.0)) throw ValidationError("galerkin_cut must be > 0");
    if (diagnostics_every == 0) throw ValidationError("diagnostics_every must be >= 1");
    require_same_grid(grid, initial.grid(), "initial condition");
    if (!initial.all_finite()) throw ValidationError("initial condition has non-finite coefficients");
    forcing.validate(grid);
    const auto [steps, h] = step_plan();
    if (steps % diagnostics_every != 0) {
        throw ValidationError("diagnostics_every must divide the number of steps (" + std::to_string(steps) + ")");
    }
}

std::pair<std::size_t, double> RunConfig::step_plan() const {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t_end / dt)));
    return {steps, t_end / static_cast<double>(steps)};
}

double cfl_number(const SpectralField& r, double dt) {
    const SpectralPair u = velocity(r);
    const RealField ux = inverse_transform(u.x);
    const RealField uy = inverse_transform(u.y);
    double vmax = 0.0;
    for (std::size_t k = 0; k < ux.samples().size(); ++k) {
        vmax = std::max(vmax, std::hypot(ux.samples()[k], uy.samples()[k]));
    }
    const GridSpec& g = r.grid();
    return dt * vmax * static_cast<double>(g.n) / g.box_length;
}

// ---------------------------------------------------------------------------
// Integrator

Integrator::Integrator(const RunConfig& cfg) : cfg_(cfg), table_(cfg.grid), dt_(cfg.step_plan().second) {
    cfg_.validate();
    const auto& h = table_.h().values;
    e_full_.resize(h.size());
    e_half_.resize(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        e_full_[k] = std::exp(-cfg_.mu * h[k] * dt_);
        e_half_[k] = std::exp(-0.5 * cfg_.mu * h[k] * dt_);
    }
}

SpectralField Integrator::project(SpectralField u) const {
    if (cfg_.galerkin_cut) return project_jn(u, *cfg_.galerkin_cut);
    return u;
}

SpectralField Integrator::damp(const SpectralField& u, const std::vector<double>& factor) const {
    SpectralField out(u);
    auto c = out.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= factor[k];
    return out;
}

SpectralField Integrator::forcing_at(double t) const { return project(cfg_.forcing.at(t, cfg_.grid)); }

SpectralField Integrator::prepared_initial() const { return project(cfg_.initial); }

SpectralField Integrator::nonlinear_part(const SpectralField& r, double t) const {
    SpectralField rhs = cfg_.forcing.at(t, cfg_.grid);
    if (cfg_.nonlinear) rhs -= lambda(r, r);
    return project(apply_multiplier(rhs, table_.d()));
}

SpectralField Integrator::tendency(const SpectralField& r, double t) const {
    SpectralField out = nonlinear_part(r, t);
    out -= project(apply_multiplier(r, table_.h())) *= cfg_.mu;
    return out;
}

SpectralField Integrator::step(const SpectralField& r, double t) const {
    const double dt = dt_;
    if (cfg_.stepper == Stepper::if_rk2) {
        const SpectralField k1 = nonlinear_part(r, t);
        SpectralField stage = r;
        stage.axpy(dt, k1);
        const SpectralField k2 = nonlinear_part(damp(stage, e_full_), t + dt);
        SpectralField next = damp(r, e_full_);
        next.axpy(0.5 * dt, damp(k1, e_full_));
        next.axpy(0.5 * dt, k2);
        return next;
    }
    const SpectralField k1 = nonlinear_part(r, t);
    SpectralField a = r;
    a.axpy(0.5 * dt, k1);
    const SpectralField k2 = nonlinear_part(damp(a, e_half_), t + 0.5 * dt);
    SpectralField b = damp(r, e_half_);
    b.axpy(0.5 * dt, k2);
    const SpectralField k3 = nonlinear_part(b, t + 0.5 * dt);
    SpectralField c = damp(r, e_full_);
    c.axpy(dt, damp(k3, e_half_));
    const SpectralField k4 = nonlinear_part(c, t + dt);

    SpectralField mid = k2;
    mid += k3;
    SpectralField next = damp(r, e_full_);
    next.axpy(dt / 6.0, damp(k1, e_full_));
    next.axpy(dt / 3.0, damp(mid, e_half_));
    next.axpy(dt / 6.0, k4);
    return next;
}

SpectralField tendency(const SpectralField& r, double t, const RunConfig& cfg) {
    require_same_grid(r.grid(), cfg.grid, "tendency");
    if (!r.all_finite()) throw NumericalError("tendency: non-finite state");
    return Integrator(cfg).tendency(r, t);
}

SpectralField step(const SpectralField& r, double t, const RunConfig& cfg) {
    require_same_grid(r.grid(), cfg.grid, "step");
    return Integrator(cfg).step(r, t);
}

// ---------------------------------------------------------------------------
// Simulation driver

SimulationResult simulate(const RunConfig& cfg, const StateObserver& observer) {
    const Integrator integ(cfg);
    const auto [steps, dt] = cfg.step_plan();
    SimulationResult result;
    if (std::abs(dt - cfg.dt) > 1e-12 * cfg.dt) {
        std::ostringstream w;
        w << "dt adjusted from " << cfg.dt << " to " << dt << " so that t_end is hit exactly";
        result.warnings.push_back(w.str());
    }
    if (cfg.mu == 0.0) result.warnings.push_back("inviscid run (mu = 0): results are recorded, not certified");

    SpectralField r = integ.prepared_initial();
    if (const double cfl = cfl_number(r, dt); cfl > kCflLimit) {
        std::ostringstream w;
        w << "initial CFL number " << cfl << " exceeds " << kCflLimit;
        result.warnings.push_back(w.str());
    }

    auto record = [&](double t) {
        result.records.push_back(make_record(t, r, integ.forcing_at(t), cfg.mu, cfg.sigmas, cfg.tilde_s));
        if (observer) observer(t, r);
    };
    record(0.0);
    for (std::size_t s = 1; s <= steps; ++s) {
        const double t = static_cast<double>(s - 1) * dt;
        SpectralField next = integ.step(r, t);
        if (!next.all_finite()) {
            std::ostringstream w;
            w << "non-finite state at step " << s << " (t = " << t + dt << ")";
            throw InstabilityError(w.str(), std::move(r), t);
        }
        r = std::move(next);
        if (s % cfg.diagnostics_every == 0) record(static_cast<double>(s) * dt);
    }
    fill_balance_residuals(result.records);
    result.final_state = std::move(r);
    result.final_time = static_cast<double>(steps) * dt;
    return result;
}

// ---------------------------------------------------------------------------
// Exact linear solver

namespace {

// phi1 = int_0^l e^{-lambda (l - s)} ds,  phi2 = int_0^l s e^{-lambda (l - s)} ds
std::pair<double, double> segment_kernels(double lambda, double l) {
    const double x = lambda * l;
    if (x < 0.5) {
        double p1 = 0.0, p2 = 0.0, term = 1.0;  // term = (-x)^m / m!
        for (int m = 0; m < 20; ++m) {
            p1 += term / (m + 1);
            p2 += term / ((m + 1) * (m + 2));
            term *= -x / (m + 1);
        }
        return {l * p1, l * l * p2};
    }
    const double em = -std::expm1(-x);  // 1 - e^{-x}
    return {em / lambda, (x - em) / (lambda * lambda)};
}

}  // namespace

std::vector<SpectralField> linear_evolve(const SpectralField& w0, const ForcingSpec& forcing, double mu,
                                         const std::vector<double>& times) {
    const GridSpec& g = w0.grid();
    forcing.validate(g);
    if (!(mu >= 0.0)) throw ValidationError("linear_evolve: mu must be >= 0");
    const MultiplierTable table(g);
    const auto& h = table.h().values;
    const auto& d = table.d().values;
    std::vector<SpectralField> out;
    out.reserve(times.size());

    for (double t : times) {
        if (t < 0.0) throw ValidationError("linear_evolve: times must be nonnegative");
        SpectralField w(g);
        auto wc = w.coeffs();
        const auto c0 = w0.coeffs();
        for (std::size_t k = 0; k < wc.size(); ++k) wc[k] = std::exp(-mu * h[k] * t) * c0[k];

        if (forcing.kind == ForcingSpec::Kind::separable_decaying && forcing.amplitude != 0.0) {
            // One scalar Duhamel integral per distinct |k|^2.
            std::map<long, double> memory;
            const auto gc = forcing.profile.coeffs();
            for (std::size_t i = 0; i < g.n; ++i) {
                for (std::size_t j = 0; j < g.n; ++j) {
                    const std::size_t k = i * g.n + j;
                    if (gc[k] == Complex{}) continue;
                    const long key = static_cast<long>(g.index_of(i)) * g.index_of(i) +
                                     static_cast<long>(g.index_of(j)) * g.index_of(j);
                    auto it = memory.find(key);
                    if (it == memory.end()) {
                        double value = 0.0;
                        try {
                            value = decay::forcing_memory(mu * h[k], forcing.eta, forcing.amplitude, t);
                        } catch (const NumericalError& e) {
                            std::ostringstream msg;
                            msg << "linear_evolve: mode |k|^2 = " << key << " at t = " << t << ": " << e.what();
                            throw NumericalError(msg.str());
                        }
                        it = memory.emplace(key, value).first;
                    }
                    wc[k] += d[k] * it->second * gc[k];
                }
            }
        } else if (forcing.kind == ForcingSpec::Kind::tabulated) {
            // Piecewise-linear f on the breakpoints inside [0, t], constant outside the table.
            std::vector<double> knots{0.0};
            for (const auto& node : forcing.table)
                if (node.first > 0.0 && node.first < t) knots.push_back(node.first);
            knots.push_back(t);
            for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
                const double a = knots[s], b = knots[s + 1];
                if (!(b > a)) continue;
                const SpectralField fa = forcing.at(a, g);
                const SpectralField fb = forcing.at(b, g);
                const auto ca = fa.coeffs();
                const auto cb = fb.coeffs();
                for (std::size_t k = 0; k < wc.size(); ++k) {
                    const double lam = mu * h[k];
                    const auto [p1, p2] = segment_kernels(lam, b - a);
                    const double tail = std::exp(-lam * (t - b));
                    const Complex slope = (cb[k] - ca[k]) / (b - a);
                    wc[k] += d[k] * tail * (ca[k] * p1 + slope * p2);
                }
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Twin-run stability

double gradient_l4_fourth(const SpectralField& r) {
    const GridSpec& g = r.grid();
    const SpectralPair grad = gradient(id_minus_laplacian(r));
    const std::size_t m = detail::product_lattice(g);
    std::vector<double> gx, gy;
    detail::synthesize(grad.x, m, gx);
    detail::synthesize(grad.y, m, gy);
    double sum = 0.0;
    for (std::size_t k = 0; k < gx.size(); ++k) {
        const double s = gx[k] * gx[k] + gy[k] * gy[k];
        sum += s * s;
    }
    return sum * g.box_length * g.box_length / static_cast<double>(m * m);
}

StabilityReport compare_runs(const RunConfig& cfg, const SpectralField& perturbation) {
    require_same_grid(cfg.grid, perturbation.grid(), "compare_runs perturbation");
    RunConfig perturbed = cfg;
    perturbed.initial += perturbation;
    const Integrator one(perturbed);
    const Integrator two(cfg);
    const auto [steps, dt] = cfg.step_plan();

    SpectralField r1 = one.prepared_initial();
    SpectralField r2 = two.prepared_initial();
    StabilityReport rep;
    std::vector<double> g_rate;
    auto record = [&](double t) {
        const SpectralField delta = r1 - r2;
        rep.times.push_back(t);
        rep.energy_delta.push_back(energy_first(delta));
        rep.h3_delta.push_back(sobolev_norm(delta, 3.0));
        g_rate.push_back(gradient_l4_fourth(r2));
    };
    record(0.0);
    for (std::size_t s = 1; s <= steps; ++s) {
        const double t = static_cast<double>(s - 1) * dt;
        r1 = one.step(r1, t);
        r2 = two.step(r2, t);
        if (!r1.all_finite() || !r2.all_finite()) {
            throw NumericalError("compare_runs: twin run diverged at t = " + std::to_string(t + dt));
        }
        if (s % cfg.diagnostics_every == 0) record(static_cast<double>(s) * dt);
    }
    const double h = dt * static_cast<double>(cfg.diagnostics_every);
    rep.gronwall_integral = cumulative_simpson(g_rate, h);

    const double e0 = rep.energy_delta.front();
    rep.envelope_ratio.assign(rep.times.size(), 0.0);
    if (e0 == 0.0) return rep;

    // Fit on the first half: log(E/E0) ~ log C + K G.
    const std::size_t half = std::max<std::size_t>(2, rep.times.size() / 2);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < half && i < rep.times.size(); ++i) {
        if (rep.energy_delta[i] <= 0.0) continue;
        x.push_back(rep.gronwall_integral[i]);
        y.push_back(std::log(rep.energy_delta[i] / e0));
    }
    double K = 0.0;
    if (x.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= static_cast<double>(x.size());
        my /= static_cast<double>(x.size());
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (sxx > 0.0) K = std::max(0.0, sxy / sxx);
    }
    double logC = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) logC = std::max(logC, y[i] - K * x[i]);
    rep.fitted_K = K;
    rep.fitted_C = std::exp(logC);
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        rep.envelope_ratio[i] = rep.energy_delta[i] / (rep.fitted_C * e0 * std::exp(K * rep.gronwall_integral[i]));
        rep.max_envelope_ratio = std::max(rep.max_envelope_ratio, rep.envelope_ratio[i]);
    }
    return rep;
}

}  // namespace qgk
