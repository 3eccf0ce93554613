#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qgk/diagnostics.hpp"
#include "qgk/evolution.hpp"
#include "qgk/initial_data.hpp"

using namespace qgk;

namespace {

GridSpec grid(std::size_t n = 32, double L = 2.0 * std::numbers::pi) {
    return GridSpec{n, L, DealiasPolicy::three_halves_padding};
}

RunConfig base(const GridSpec& g, SpectralField r0) {
    RunConfig c;
    c.grid = g;
    c.mu = 1.0;
    c.t_end = 1.0;
    c.dt = 0.01;
    c.initial = std::move(r0);
    return c;
}

SpectralField exact_linear(const SpectralField& r0, double mu, double t) {
    MultiplierTable tab(r0.grid());
    auto out = r0;
    for (std::size_t k = 0; k < out.coeffs().size(); ++k) out.coeffs()[k] *= std::exp(-mu * tab.h().values[k] * t);
    return out;
}

}  // namespace

TEST_CASE("tendency examples") {
    const auto g = grid();
    MultiplierTable tab(g);
    const auto m = cosine_mode(g, 2, 1, 0.7);
    auto cfg = base(g, m);
    cfg.mu = 0.6;
    const auto t = tendency(m, 0.0, cfg);
    const auto expect = -0.6 * apply_multiplier(m, tab.h());
    CHECK(relative_difference(t, expect) <= 1e-13);

    auto prof = random_band_limited(g, {3, 8.0, 1.0, 1.0});
    prof.at(0, 0) = 0.0;
    cfg.forcing = ForcingSpec::separable(prof, 2.0, 0.5);
    const auto t0 = tendency(SpectralField(g), 3.0, cfg);
    const auto expect0 = apply_multiplier(cfg.forcing.at(3.0, g), tab.d());
    CHECK(relative_difference(t0, expect0) <= 1e-15);

    SpectralField mean_only(g);
    mean_only.at(0, 0) = 4.0;
    CHECK(tendency(mean_only, 1.0, cfg).mean() == Complex(0.0, 0.0));

    auto nonzero_mean = prof;
    nonzero_mean.at(0, 0) = 0.25;
    cfg.forcing = ForcingSpec::separable(nonzero_mean, 1.0, 0.5);
    const auto r = random_band_limited(g, {4, 8.0, 1.0, 1.0});
    const double f0 = cfg.forcing.time_factor(0.5) * 0.25;
    CHECK(tendency(r, 0.5, cfg).mean().real() == doctest::Approx(f0).epsilon(1e-14));
}

TEST_CASE("forcing time factor and validation") {
    const auto g = grid(16);
    const auto prof = cosine_mode(g, 1, 0, 1.0);
    const auto f = ForcingSpec::separable(prof, 3.0, 0.8);
    CHECK(f.time_factor(1.0) == doctest::Approx(3.0 * std::pow(2.0, -1.8)));
    CHECK_THROWS_AS(ForcingSpec::separable(prof, 1.0, 1.5).validate(g), ValidationError);
    CHECK_THROWS_AS(ForcingSpec::separable(prof, -1.0, 0.5).validate(g), ValidationError);
    CHECK_THROWS_AS(f.validate(grid(32)), ValidationError);
    const auto tab = ForcingSpec::tabulated_from({{0.0, prof}, {2.0, 3.0 * prof}});
    CHECK(relative_difference(tab.at(1.0, g), 2.0 * prof) <= 1e-15);
    CHECK(relative_difference(tab.at(5.0, g), 3.0 * prof) <= 1e-15);
    CHECK_THROWS_AS(ForcingSpec::tabulated_from({{1.0, prof}, {1.0, prof}}).validate(g), ValidationError);
}

TEST_CASE("run config validation") {
    const auto g = grid(16);
    auto c = base(g, cosine_mode(g, 1, 0, 1.0));
    CHECK_NOTHROW(c.validate());
    auto bad = c;
    bad.mu = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.dt = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.diagnostics_every = 7;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.initial = SpectralField(grid(32));
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = c;
    bad.t_end = 1.0;
    bad.dt = 0.3;
    const auto [steps, h] = bad.step_plan();
    CHECK(steps == 3);
    CHECK(h == doctest::Approx(1.0 / 3.0));
    CHECK(parse_stepper("if_rk2") == Stepper::if_rk2);
    CHECK_THROWS_AS(parse_stepper("euler"), ValidationError);
}

TEST_CASE("single mode is exact for any step") {
    const auto g = grid(32, 5.0);
    const auto m = cosine_mode(g, 3, 2, 1.3);
    for (double dt : {0.5, 0.1, 0.01}) {
        auto c = base(g, m);
        c.dt = dt;
        std::vector<TimedField> states;
        simulate(c, [&](double t, const SpectralField& r) { states.push_back({t, r}); });
        for (const auto& s : states)
            CHECK(sobolev_norm(s.field - exact_linear(m, 1.0, s.t), 0.0) <= 1e-12 * sobolev_norm(m, 0.0));
    }
    auto c = base(g, SpectralField(g));
    c.dt = 0.1;
    CHECK(simulate(c).final_state.max_abs() == 0.0);
}

TEST_CASE("inviscid step preserves the second energy to fifth order") {
    const auto g = grid(32);
    // amplitude keeps the drift above round-off down to the smallest dt
    const auto r = random_band_limited(g, {5, 10.0, 1.0, 20.0});
    auto c = base(g, r);
    c.mu = 0.0;
    double prev = 0.0;
    for (double dt : {8e-3, 4e-3, 2e-3}) {
        c.dt = dt;
        const double drift = std::abs(energy_second(step(r, 0.0, c)) - energy_second(r));
        if (prev > 0.0) CHECK(prev / drift >= 24.0);
        prev = drift;
    }
}

TEST_CASE("free decay: energies non-increasing, mean and symmetry conserved") {
    const auto g = grid(32, 6.0);
    auto r0 = random_band_limited(g, {6, 12.0, 1.0, 2.0});
    r0.at(0, 0) = 0.4;
    auto c = base(g, r0);
    c.dt = 2e-3;
    c.t_end = 0.2;
    c.diagnostics_every = 10;
    std::vector<SpectralField> states;
    const auto res = simulate(c, [&](double, const SpectralField& r) { states.push_back(r); });
    REQUIRE(res.records.size() == 11);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        CHECK(res.records[i].E_first <= res.records[i - 1].E_first);
        CHECK(res.records[i].E_second <= res.records[i - 1].E_second);
    }
    for (const auto& s : states) {
        CHECK(s.hermitian_defect() <= 1e-13);
        CHECK(std::abs(s.mean() - Complex(0.4, 0.0)) <= 1e-15);
    }
}

TEST_CASE("determinism") {
    const auto g = grid(32);
    auto c = base(g, random_band_limited(g, {7, 10.0, 1.0, 1.0}));
    c.t_end = 0.05;
    const auto a = simulate(c).final_state;
    const auto b = simulate(c).final_state;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) CHECK(a.coeffs()[k] == b.coeffs()[k]);
}

TEST_CASE("linear_evolve examples") {
    const auto g = grid(16, 4.0);
    const auto m = cosine_mode(g, 1, 1, 1.0);
    const auto w = linear_evolve(m, ForcingSpec::zero(), 0.7, {0.0, 0.5, 2.0});
    CHECK(relative_difference(w[0], m) == 0.0);
    CHECK(relative_difference(w[2], exact_linear(m, 0.7, 2.0)) <= 1e-15);

    // constant forcing: each mode tends to d f / (mu h)
    const auto f = cosine_mode(g, 1, 0, 1.0);
    const auto constant = ForcingSpec::tabulated_from({{0.0, f}});
    const double mu = 2.0;
    const double q = std::pow(g.wavenumber_unit(), 2);
    const double limit = 0.5 / symbol_a(q) / (mu * symbol_h(q));
    const auto far = linear_evolve(SpectralField(g), constant, mu, {1e5});
    CHECK(far[0].at(1, 0).real() == doctest::Approx(limit).epsilon(1e-12));
    CHECK_THROWS_AS(linear_evolve(m, ForcingSpec::zero(), -1.0, {1.0}), ValidationError);
}

TEST_CASE("linear run matches linear_evolve") {
    const auto g = grid(32, 2.0 * std::numbers::pi);
    const auto r0 = random_band_limited(g, {8, 10.0, 1.0, 1.0});
    auto prof = gaussian_bump(g, 1.0, 1.0);
    prof.at(0, 0) = 0.0;
    for (const auto& forcing : {ForcingSpec::zero(), ForcingSpec::separable(project_jn(prof, 9.0), 0.5, 0.8)}) {
        auto c = base(g, r0);
        c.nonlinear = false;
        c.forcing = forcing;
        c.dt = 5e-3;
        c.t_end = 0.5;
        c.diagnostics_every = 50;
        std::vector<double> times;
        std::vector<SpectralField> states;
        simulate(c, [&](double t, const SpectralField& r) {
            times.push_back(t);
            states.push_back(r);
        });
        const auto lin = linear_evolve(r0, forcing, c.mu, times);
        for (std::size_t i = 0; i < times.size(); ++i) CHECK(relative_difference(states[i], lin[i]) <= 1e-10);
    }
}

TEST_CASE("cut below the lowest shell leaves the mean ODE") {
    const auto g = grid(16, 2.0 * std::numbers::pi);
    auto prof = cosine_mode(g, 1, 0, 1.0);
    prof.at(0, 0) = 0.5;
    auto r0 = random_band_limited(g, {9, 6.0, 1.0, 1.0});
    r0.at(0, 0) = 0.1;
    auto c = base(g, r0);
    c.galerkin_cut = 0.5;
    c.forcing = ForcingSpec::separable(prof, 2.0, 0.5);
    c.dt = 0.05;
    const auto res = simulate(c);
    // mean' = K (1 + t)^(-1-eta) f0
    const double expect = 0.1 + 0.5 * 2.0 / 0.5 * (1.0 - std::pow(2.0, -0.5));
    CHECK(res.final_state.at(0, 0).real() == doctest::Approx(expect).epsilon(1e-7));
    auto rest = res.final_state;
    rest.at(0, 0) = 0.0;
    CHECK(rest.max_abs() == 0.0);
}

TEST_CASE("instability is reported with the last good state") {
    const auto g = grid(32);
    auto c = base(g, random_band_limited(g, {10, 14.0, 0.0, 1e6}));
    c.mu = 0.0;
    c.dt = 0.5;
    c.t_end = 50.0;
    c.diagnostics_every = 100;
    bool caught = false;
    try {
        simulate(c);
    } catch (const InstabilityError& e) {
        caught = true;
        CHECK(e.last_good().all_finite());
        CHECK(e.last_time() >= 0.0);
    }
    CHECK(caught);
}

TEST_CASE("compare_runs") {
    const auto g = grid(32);
    auto c = base(g, random_band_limited(g, {11, 10.0, 1.0, 1.0}));
    c.t_end = 0.2;
    c.dt = 5e-3;
    c.diagnostics_every = 4;
    const auto zero = compare_runs(c, SpectralField(g));
    for (double e : zero.energy_delta) CHECK(e == 0.0);

    const auto p = random_band_limited(g, {12, 10.0, 1.0, 1e-6});
    const auto a = compare_runs(c, p);
    const auto b = compare_runs(c, 0.5 * p);
    CHECK(a.max_envelope_ratio <= 1.0 + 1e-9);
    double sup_a = 0.0, sup_b = 0.0;
    for (double v : a.h3_delta) sup_a = std::max(sup_a, v);
    for (double v : b.h3_delta) sup_b = std::max(sup_b, v);
    CHECK(sup_b / sup_a == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("cfl number") {
    const auto g = grid(32);
    CHECK(cfl_number(SpectralField(g), 0.1) == 0.0);
    const auto r = random_band_limited(g, {13, 10.0, 1.0, 1.0});
    CHECK(cfl_number(r, 0.2) == doctest::Approx(2.0 * cfl_number(r, 0.1)));
}
