#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgk/bilinear.hpp"
#include "qgk/energy.hpp"

namespace qgk {

/// External force f(t, x).
struct ForcingSpec {
    enum class Kind { zero, separable_decaying, tabulated };

    Kind kind = Kind::zero;
    /// separable_decaying: f(t) = amplitude (1 + t)^(-1-eta) profile
    SpectralField profile;
    double amplitude = 0.0;
    double eta = 0.5;
    /// tabulated: (time, field) nodes in increasing time, piecewise linear in
    /// between and held constant outside the tabulated range.
    std::vector<std::pair<double, SpectralField>> table;

    static ForcingSpec zero();
    static ForcingSpec separable(SpectralField profile, double amplitude, double eta);
    static ForcingSpec tabulated_from(std::vector<std::pair<double, SpectralField>> nodes);

    /// Throws ValidationError on inconsistent data for `grid`.
    void validate(const GridSpec& grid) const;
    /// f^(t) on `grid`.
    [[nodiscard]] SpectralField at(double t, const GridSpec& grid) const;
    /// K (1 + t)^(-1-eta) for separable forcing.
    [[nodiscard]] double time_factor(double t) const;
};

std::string to_string(ForcingSpec::Kind kind);

enum class Stepper { if_rk4, if_rk2 };

std::string to_string(Stepper s);
Stepper parse_stepper(const std::string& name);

/// Full experiment description with a resolved initial condition.
struct RunConfig {
    GridSpec grid;
    double mu = 1.0;
    double t_end = 1.0;
    double dt = 1e-3;
    Stepper stepper = Stepper::if_rk4;
    std::optional<double> galerkin_cut;
    ForcingSpec forcing;
    SpectralField initial;
    std::uint64_t seed = 0;
    std::size_t diagnostics_every = 1;
    /// Switch off Lambda (used for cross-checks against the linear solver).
    bool nonlinear = true;
    std::vector<double> sigmas;
    std::vector<double> tilde_s;

    void validate() const;
    /// Number of steps and the step actually taken (t_end / steps).
    [[nodiscard]] std::pair<std::size_t, double> step_plan() const;
};

/// Advective CFL number dt * max|u| / (L / n) of a state.
double cfl_number(const SpectralField& r, double dt);
inline constexpr double kCflLimit = 0.5;

/// Raised when a step produces a non-finite state; carries the last finite one.
class InstabilityError : public NumericalError {
public:
    InstabilityError(const std::string& what, SpectralField last_good, double last_time)
        : NumericalError(what), last_good_(std::move(last_good)), last_time_(last_time) {}
    [[nodiscard]] const SpectralField& last_good() const { return last_good_; }
    [[nodiscard]] double last_time() const { return last_time_; }

private:
    SpectralField last_good_;
    double last_time_;
};

/// Integrating-factor Runge-Kutta for
///   d_t r = -d(xi) Lambda(r, r) + d(xi) f - mu h(xi) r   (optionally with J_n applied),
/// the diagonal part e^{-mu h dt} being applied exactly.
class Integrator {
public:
    explicit Integrator(const RunConfig& cfg);

    /// Full right-hand side d(-Lambda(r, r) + f(t)) - mu h r (projected when a Galerkin cut is set).
    [[nodiscard]] SpectralField tendency(const SpectralField& r, double t) const;
    /// Everything but the diagonal damping: d(-Lambda(r, r) + f(t)), projected when configured.
    [[nodiscard]] SpectralField nonlinear_part(const SpectralField& r, double t) const;
    /// Forcing actually seen by the system at time t (projected when configured).
    [[nodiscard]] SpectralField forcing_at(double t) const;
    /// One step of size dt (must equal the size the integrator was built with).
    [[nodiscard]] SpectralField step(const SpectralField& r, double t) const;
    /// Initial state as integrated (J_n r0 when a cut is set).
    [[nodiscard]] SpectralField prepared_initial() const;

    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] const MultiplierTable& symbols() const { return table_; }
    [[nodiscard]] const RunConfig& config() const { return cfg_; }

private:
    SpectralField project(SpectralField u) const;
    SpectralField damp(const SpectralField& u, const std::vector<double>& factor) const;

    RunConfig cfg_;
    MultiplierTable table_;
    double dt_;
    std::vector<double> e_full_;
    std::vector<double> e_half_;
};

/// Free function forms.
SpectralField tendency(const SpectralField& r, double t, const RunConfig& cfg);
SpectralField step(const SpectralField& r, double t, const RunConfig& cfg);

struct SimulationResult {
    SpectralField final_state;
    double final_time = 0.0;
    std::vector<TimeSeriesRecord> records;
    std::vector<std::string> warnings;
};

/// Called at t = 0 and at every diagnostics row with the current state.
using StateObserver = std::function<void(double t, const SpectralField& r)>;

/// Advance cfg.initial to cfg.t_end. Records carry balance residuals filled
/// in from the whole series. Throws InstabilityError on a non-finite state.
SimulationResult simulate(const RunConfig& cfg, const StateObserver& observer = {});

/// Exact per-mode solution of d_t w + mu h w = d f: e^{-mu h t} w0 plus the
/// Duhamel integral (adaptive quadrature for separable forcing, closed form
/// per segment for tabulated forcing).
std::vector<SpectralField> linear_evolve(const SpectralField& w0, const ForcingSpec& forcing, double mu,
                                         const std::vector<double>& times);

/// Twin-run stability measurement.
struct StabilityReport {
    std::vector<double> times;
    std::vector<double> energy_delta;       ///< E_first[delta r(t)]
    std::vector<double> h3_delta;           ///< ||delta r(t)||_{H^3}
    std::vector<double> gronwall_integral;  ///< int_0^t ||grad (Id - Lap) r2||_{L^4}^4
    std::vector<double> envelope_ratio;     ///< E[delta r] / (C E[delta r0] exp(K G))
    double fitted_C = 1.0;
    double fitted_K = 0.0;
    double max_envelope_ratio = 0.0;
};

/// ||grad (Id - Lap) r||_{L^4}^4 evaluated on the product lattice.
double gradient_l4_fourth(const SpectralField& r);

/// Runs r1 from r0 + perturbation and r2 from r0 in lockstep. (C, K) are
/// fitted on the first half of the run (K by least squares of log ratio
/// against G, C as the smallest constant covering that half); the envelope
/// ratio is then reported on the whole run.
StabilityReport compare_runs(const RunConfig& cfg, const SpectralField& perturbation);

}  // namespace qgk
