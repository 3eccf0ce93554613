#include "qgk/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qgk/decay_lab.hpp"
#include "qgk/diagnostics.hpp"
#include "qgk/initial_data.hpp"
#include "qgk/littlewood_paley.hpp"
#include "qgk/report.hpp"
#include "qgk/snapshot.hpp"

namespace qgk {
namespace {

namespace fs = std::filesystem;

ExperimentManifest manifest_for(const std::string& command, const ExperimentConfig& cfg) {
    ExperimentManifest m;
    m.command = command;
    m.settings = cfg.resolved;
    m.seed = cfg.seed;
    return m;
}

std::string snapshot_name(std::size_t index) {
    std::ostringstream s;
    s << "snap_" << std::setw(6) << std::setfill('0') << index << ".qgk";
    return s.str();
}

void write_snapshot_with_sidecar(const fs::path& path, const SpectralField& field, double t,
                                 const ExperimentManifest& manifest) {
    write_snapshot(path, field, t);
    fs::path side = path;
    side += ".txt";
    manifest.write_sidecar(side);
}

std::vector<TimedField> load_series(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw ValidationError("not a run directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".qgk") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<TimedField> out;
    for (const auto& f : files) {
        Snapshot s = read_snapshot(f);
        out.push_back({s.time, std::move(s.field)});
    }
    std::sort(out.begin(), out.end(), [](const TimedField& a, const TimedField& b) { return a.t < b.t; });
    if (out.empty()) throw ValidationError("no snapshots in " + dir.string());
    return out;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string(what) + ": bad list entry '" + item + "'");
        }
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty list");
    return out;
}

// ---------------------------------------------------------------------------

int cmd_run(const std::string& config_path, const std::string& out_override, std::ostream& out) {
    ExperimentConfig cfg = parse_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    const RunConfig run = to_run_config(cfg);
    fs::create_directories(cfg.output_dir);
    ExperimentManifest manifest = manifest_for("run", cfg);
    manifest.inputs.push_back(config_path);

    std::size_t row = 0, snap = 0;
    std::vector<std::pair<double, SpectralField>> pending;
    auto observer = [&](double t, const SpectralField& r) {
        if (cfg.snapshots_every > 0 && row % cfg.snapshots_every == 0) pending.emplace_back(t, r);
        ++row;
    };
    SimulationResult res = simulate(run, observer);
    manifest.warnings = res.warnings;
    const fs::path csv = cfg.output_dir / "timeseries.csv";
    manifest.outputs.push_back(csv.string());
    for (const auto& [t, r] : pending) {
        const fs::path p = cfg.output_dir / snapshot_name(snap++);
        write_snapshot_with_sidecar(p, r, t, manifest);
    }
    if (cfg.snapshots_every == 0) {
        write_snapshot_with_sidecar(cfg.output_dir / snapshot_name(0), res.final_state, res.final_time, manifest);
    }
    CsvWriter w(csv, manifest, timeseries_columns(cfg.sigmas, cfg.tilde_s));
    for (const auto& rec : res.records) w.row(timeseries_values(rec));
    for (const auto& warn : res.warnings) out << "warning: " << warn << '\n';
    out << "run finished at t = " << res.final_time << ", " << res.records.size() << " rows, first balance residual "
        << first_balance_residual(res.records) << ", second " << second_balance_residual(res.records) << '\n';
    return kExitOk;
}

int cmd_linear(const std::string& config_path, const std::string& out_override, std::ostream& out) {
    ExperimentConfig cfg = parse_config(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    const RunConfig run = to_run_config(cfg);
    fs::create_directories(cfg.output_dir);
    ExperimentManifest manifest = manifest_for("linear", cfg);
    manifest.inputs.push_back(config_path);

    const auto [steps, dt] = run.step_plan();
    std::vector<double> times;
    for (std::size_t s = 0; s <= steps; s += run.diagnostics_every) times.push_back(static_cast<double>(s) * dt);
    const SpectralField w0 = run.galerkin_cut ? project_jn(run.initial, *run.galerkin_cut) : run.initial;
    const auto states = linear_evolve(w0, run.forcing, run.mu, times);

    const fs::path csv = cfg.output_dir / "linear.csv";
    manifest.outputs.push_back(csv.string());
    std::size_t snap = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (cfg.snapshots_every > 0 ? i % cfg.snapshots_every == 0 : i + 1 == states.size())
            write_snapshot_with_sidecar(cfg.output_dir / snapshot_name(snap++), states[i], times[i], manifest);
    }
    CsvWriter w(csv, manifest, {"t", "E_first", "E_second", "H3", "H4"});
    for (std::size_t i = 0; i < states.size(); ++i) {
        w.row({times[i], energy_first(states[i]), energy_second(states[i]), sobolev_norm(states[i], 3.0),
               sobolev_norm(states[i], 4.0)});
    }
    out << "linear solution written at " << states.size() << " times\n";
    return kExitOk;
}

struct DecayOptions {
    std::string profile = "gaussian:1.0";
    double mu = 1.0;
    std::string moments = "0,1,3";
    std::string out = "decay.csv";
    double t0 = 1e2;
    double t1 = 1e6;
    std::size_t samples = 32;
    double eta = 0.0;  // > 0 adds Duhamel columns
    double k = 1.0;
};

int cmd_decay(const DecayOptions& o, std::ostream& out) {
    const auto profile = decay::RadialProfile::parse(o.profile);
    if (!(o.mu > 0.0)) throw ValidationError("decay: --mu must be > 0");
    std::vector<int> ks;
    for (double v : parse_list(o.moments, "--moments")) {
        if (v < 0.0 || v != std::floor(v)) throw ValidationError("decay: moments must be nonnegative integers");
        ks.push_back(static_cast<int>(v));
    }
    const auto times = decay::log_spaced(o.t0, o.t1, o.samples);

    ExperimentManifest manifest;
    manifest.command = "decay";
    manifest.settings = {{"profile", profile.describe()}, {"mu", format_number(o.mu)},
                         {"moments", o.moments},          {"t0", format_number(o.t0)},
                         {"t1", format_number(o.t1)},     {"samples", std::to_string(o.samples)},
                         {"eta", format_number(o.eta)},   {"k", format_number(o.k)}};
    manifest.outputs.push_back(o.out);

    std::vector<std::string> cols{"t"};
    for (int k : ks) cols.push_back("M" + std::to_string(k));
    for (int k : ks) cols.push_back("env_M" + std::to_string(k));
    if (o.eta > 0.0)
        for (int k : ks) cols.push_back("D" + std::to_string(k));

    std::vector<decay::DecaySeries> series(ks.size());
    std::vector<std::vector<double>> duhamel(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        series[i].times = times;
        series[i].envelope_rate = (ks[i] + 1) / 4.0;
        for (double t : times) {
            series[i].values.push_back(decay::moment_integral(profile, ks[i], o.mu, t));
            if (o.eta > 0.0) duhamel[i].push_back(decay::duhamel_moment(profile, ks[i], o.mu, o.eta, o.k, t));
        }
    }
    CsvWriter w(o.out, manifest, cols);
    std::vector<std::vector<double>> env;
    for (const auto& s : series) env.push_back(s.envelope());
    for (std::size_t r = 0; r < times.size(); ++r) {
        std::vector<double> row{times[r]};
        for (const auto& s : series) row.push_back(s.values[r]);
        for (const auto& e : env) row.push_back(e[r]);
        for (const auto& d : duhamel)
            if (!d.empty()) row.push_back(d[r]);
        w.row(row);
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const auto fit = decay::fit_exponent(series[i], o.t0, o.t1);
        std::ostringstream line;
        line << "fit M" << ks[i] << " slope " << format_number(fit.slope) << " stderr "
             << format_number(fit.stderr_slope) << " samples " << fit.samples << " envelope_non_increasing "
             << (decay::non_increasing(env[i]) ? "yes" : "no");
        w.comment(line.str());
        out << line.str() << '\n';
    }
    return kExitOk;
}

int cmd_compare(const std::string& a, const std::string& b, double eta, const std::string& out_path,
                std::ostream& out) {
    const auto ra = load_series(a);
    const auto rb = load_series(b);
    const CompareReport rep = compare_h3(ra, rb, eta);
    ExperimentManifest manifest;
    manifest.command = "compare";
    manifest.settings = {{"run_a", a}, {"run_b", b}, {"eta", format_number(eta)}};
    manifest.inputs = {a, b};
    manifest.outputs = {out_path};
    CsvWriter w(out_path, manifest, {"t", "h3_difference", "envelope_ratio"});
    const auto env = rep.difference.envelope();
    for (std::size_t i = 0; i < env.size(); ++i) w.row({rep.difference.times[i], rep.difference.values[i], env[i]});
    w.comment("sup_envelope_ratio " + format_number(rep.sup_ratio));
    out << "sup ||z||_H3 (1+t)^(eta-1/2) = " << rep.sup_ratio << '\n';
    return kExitOk;
}

int cmd_stability(const std::string& config_path, const std::string& perturb, double scale,
                  const std::string& out_path, std::ostream& out) {
    const ExperimentConfig cfg = parse_config(config_path);
    const RunConfig run = to_run_config(cfg);
    Snapshot p = read_snapshot(perturb);
    require_same_grid(run.grid, p.field.grid(), "perturbation");
    SpectralField delta(run.grid, std::vector<Complex>(p.field.coeffs().begin(), p.field.coeffs().end()));
    delta *= scale;
    const StabilityReport rep = compare_runs(run, delta);

    ExperimentManifest manifest = manifest_for("stability", cfg);
    manifest.settings["perturb"] = perturb;
    manifest.settings["perturb_scale"] = format_number(scale);
    manifest.inputs = {config_path, perturb};
    manifest.outputs = {out_path};
    CsvWriter w(out_path, manifest, {"t", "energy_delta", "h3_delta", "gronwall_integral", "envelope_ratio"});
    for (std::size_t i = 0; i < rep.times.size(); ++i)
        w.row({rep.times[i], rep.energy_delta[i], rep.h3_delta[i], rep.gronwall_integral[i], rep.envelope_ratio[i]});
    std::ostringstream summary;
    summary << "fitted_C " << format_number(rep.fitted_C) << " fitted_K " << format_number(rep.fitted_K)
            << " max_envelope_ratio " << format_number(rep.max_envelope_ratio);
    w.comment(summary.str());
    out << summary.str() << '\n';
    return kExitOk;
}

int cmd_convergence(const std::string& config_path, const std::string& dts_text, const std::string& out_path,
                    std::ostream& out) {
    const ExperimentConfig cfg = parse_config(config_path);
    RunConfig run = to_run_config(cfg);
    const auto dts = parse_list(dts_text, "--dts");
    ExperimentManifest manifest = manifest_for("convergence", cfg);
    manifest.settings["dts"] = dts_text;
    manifest.inputs = {config_path};
    manifest.outputs = {out_path};
    CsvWriter w(out_path, manifest, {"dt", "first_residual", "second_residual", "order_first", "order_second"});
    std::vector<double> lx, ly1, ly2;
    double prev1 = 0.0, prev2 = 0.0, prev_dt = 0.0;
    for (double dt : dts) {
        if (!(dt > 0.0)) throw ValidationError("--dts entries must be > 0");
        run.dt = dt;
        run.validate();
        const auto res = simulate(run);
        const double r1 = first_balance_residual(res.records);
        const double r2 = second_balance_residual(res.records);
        double o1 = std::nan(""), o2 = std::nan("");
        if (prev_dt > 0.0) {
            o1 = std::log(prev1 / r1) / std::log(prev_dt / dt);
            o2 = std::log(prev2 / r2) / std::log(prev_dt / dt);
        }
        w.row({dt, r1, r2, o1, o2});
        lx.push_back(std::log(dt));
        ly1.push_back(std::log(r1));
        ly2.push_back(std::log(r2));
        prev1 = r1;
        prev2 = r2;
        prev_dt = dt;
        out << "dt " << format_number(dt) << " residuals " << format_number(r1) << " " << format_number(r2) << '\n';
    }
    auto slope = [&lx](const std::vector<double>& y) {
        const double n = static_cast<double>(lx.size());
        double mx = 0, my = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i] / n;
            my += y[i] / n;
        }
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (y[i] - my);
        }
        return sxx > 0 ? sxy / sxx : std::nan("");
    };
    std::ostringstream summary;
    summary << "fitted_order_first " << format_number(slope(ly1)) << " fitted_order_second "
            << format_number(slope(ly2));
    w.comment(summary.str());
    out << summary.str() << '\n';
    return kExitOk;
}

int cmd_lp_spectrum(const std::string& config_path, const std::string& snapshot, double s,
                    const std::string& out_path, std::ostream& out) {
    SpectralField u;
    ExperimentManifest manifest;
    manifest.command = "lp-spectrum";
    if (!snapshot.empty()) {
        u = read_snapshot(snapshot).field;
        manifest.settings["snapshot"] = snapshot;
        manifest.inputs.push_back(snapshot);
    } else {
        const ExperimentConfig cfg = parse_config(config_path);
        u = materialize(cfg.ic, cfg.grid, cfg.seed);
        manifest = manifest_for("lp-spectrum", cfg);
        manifest.inputs.push_back(config_path);
    }
    manifest.settings["s"] = format_number(s);
    manifest.outputs = {out_path};
    const DyadicPartition lp(u.grid());
    CsvWriter w(out_path, manifest, {"j", "l2", "weighted"});
    for (const auto& b : lp.block_spectrum(u, s)) w.row({static_cast<double>(b.j), b.l2, b.weighted});
    const auto eq = lp.equivalence_constants(s);
    const double besov = lp.besov_norm(u, s);
    const double sob = sobolev_norm(u, s);
    std::ostringstream summary;
    summary << "besov " << format_number(besov) << " sobolev " << format_number(sob) << " ratio "
            << format_number(sob > 0 ? besov / sob : 0.0) << " constants " << format_number(eq.lower) << " "
            << format_number(eq.upper);
    w.comment(summary.str());
    out << summary.str() << '\n';
    return kExitOk;
}

int cmd_invariants(const std::string& config_path, std::ostream& out) {
    const ExperimentConfig cfg = parse_config(config_path);
    const auto checks = invariant_battery(cfg);
    bool ok = true;
    out << std::left << std::setw(34) << "check" << std::setw(14) << "value" << std::setw(14) << "threshold"
        << "result\n";
    for (const auto& c : checks) {
        out << std::left << std::setw(34) << c.name << std::setw(14) << format_number(c.value) << std::setw(14)
            << format_number(c.threshold) << (c.pass ? "PASS" : "FAIL") << '\n';
        ok = ok && c.pass;
    }
    return ok ? kExitOk : kExitValidation;
}

}  // namespace

std::vector<CheckResult> invariant_battery(const ExperimentConfig& cfg) {
    const RunConfig run = to_run_config(cfg);
    const GridSpec& g = run.grid;
    std::vector<CheckResult> out;
    auto check = [&out](std::string name, double value, double threshold) {
        out.push_back({std::move(name), value, threshold, std::isfinite(value) && value <= threshold});
    };

    const SpectralField rho = run.initial.max_abs() > 0.0 ? run.initial : random_band_limited(g, {cfg.seed, 4.0, 1.0, 1.0});
    const SpectralField zeta = random_band_limited(g, {cfg.seed + 7, std::min(8.0, g.n / 2.0 - 1.0), 1.0, 1.0});
    check("lambda_pairing_first", pairing_first_relative(rho, zeta), 1e-12);
    check("lambda_pairing_second", pairing_second_relative(rho, zeta), 1e-12);
    check("lambda_antisymmetry", antisymmetry_residual(rho, zeta), 1e-12);

    {
        RunConfig single = run;
        single.initial = cosine_mode(g, 1, 1, 1.0);
        single.forcing = ForcingSpec::zero();
        single.galerkin_cut.reset();
        single.t_end = 10.0 * run.dt;
        single.diagnostics_every = 1;
        const auto res = simulate(single);
        const SpectralField exact = linear_evolve(single.initial, ForcingSpec::zero(), run.mu, {res.final_time})[0];
        check("single_mode_exactness",
              sobolev_norm(res.final_state - exact, 0.0) / sobolev_norm(single.initial, 0.0), 1e-12);
        const SpectralField lam = lambda(single.initial, single.initial);
        const double scale = sobolev_norm(single.initial, 3.0) * sobolev_norm(single.initial, 5.0) / g.box_length;
        check("single_mode_lambda", std::sqrt(inner_product(lam, lam)) / scale, 1e-13);
    }

    const double e1 = energy_first(rho);
    check("energy_homogeneity", std::abs(energy_first(2.0 * rho) - 4.0 * e1) / e1, 1e-14);
    {
        const double lhs = energy_second(rho) - e1;
        const double rhs = 0.5 * (inner_product(laplacian(rho), laplacian(rho)) +
                                  inner_product(bilaplacian(rho), bilaplacian(rho)) +
                                  [&] {
                                      const SpectralPair gl = gradient(laplacian(rho));
                                      return inner_product(gl.x, gl.x) + inner_product(gl.y, gl.y);
                                  }());
        check("energy_second_minus_first", std::abs(lhs - rhs) / std::max(lhs, 1e-300), 1e-12);
    }

    const DyadicPartition lp(g);
    check("lp_partition_of_unity", lp.partition_defect(), 1e-14);
    {
        const SpectralField uv = dealiased_product(rho, zeta);
        SpectralField bony = lp.paraproduct(rho, zeta);
        bony += lp.paraproduct(zeta, rho);
        bony += lp.remainder(rho, zeta);
        check("bony_reconstruction", relative_difference(bony, uv), 1e-12);
    }

    {
        RunConfig shortrun = run;
        shortrun.t_end = 20.0 * run.dt;
        shortrun.diagnostics_every = 1;
        const auto res = simulate(shortrun);
        const SpectralField start = run.galerkin_cut ? project_jn(run.initial, *run.galerkin_cut) : run.initial;
        check("hermitian_after_run", res.final_state.hermitian_defect(), 1e-13);
        const double f_mean = std::abs(run.forcing.at(0.0, g).mean());
        if (f_mean == 0.0) {
            check("mean_conservation", std::abs(res.final_state.mean() - start.mean()), 1e-13);
        }
        if (run.forcing.kind == ForcingSpec::Kind::zero && run.mu > 0.0) {
            std::vector<double> e_first, e_second;
            for (const auto& r : res.records) {
                e_first.push_back(r.E_first);
                e_second.push_back(r.E_second);
            }
            check("energy_first_non_increasing", decay::non_increasing(e_first, 1e-13) ? 0.0 : 1.0, 0.0);
            check("energy_second_non_increasing", decay::non_increasing(e_second, 1e-13) ? 0.0 : 1.0, 0.0);
        }
    }
    return out;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qgk: spectral experiments for a higher-order quasi-geostrophic equation"};
    app.require_subcommand(0, 1);

    std::string config, out_dir, out_file, perturb, run_a, run_b, dts, snapshot;
    double eta = 0.8, scale = 1.0, s = 3.0;
    DecayOptions decay;

    auto* run = app.add_subcommand("run", "integrate the nonlinear equation");
    run->add_option("--config", config, "config file")->required();
    run->add_option("--out", out_dir, "output directory (overrides output.dir)");

    auto* linear = app.add_subcommand("linear", "exact solution of the linear parabolic problem");
    linear->add_option("--config", config, "config file")->required();
    linear->add_option("--out", out_dir, "output directory (overrides output.dir)");

    auto* dec = app.add_subcommand("decay", "radial moment decay on the whole plane");
    dec->add_option("--profile", decay.profile, "gaussian:<width> or indicator:<radius>");
    dec->add_option("--mu", decay.mu, "viscosity");
    dec->add_option("--moments", decay.moments, "comma list of moment orders");
    dec->add_option("--out", decay.out, "CSV output");
    dec->add_option("--t0", decay.t0, "window start");
    dec->add_option("--t1", decay.t1, "window end");
    dec->add_option("--samples", decay.samples, "log-spaced samples");
    dec->add_option("--eta", decay.eta, "forcing exponent; adds Duhamel columns when > 0");
    dec->add_option("--k", decay.k, "forcing amplitude for the Duhamel columns");

    auto* cmp = app.add_subcommand("compare", "H^3 distance between two runs' snapshots");
    cmp->add_option("--run-a", run_a, "nonlinear run directory")->required();
    cmp->add_option("--run-b", run_b, "linear run directory")->required();
    cmp->add_option("--eta", eta, "forcing exponent");
    cmp->add_option("--out", out_file, "CSV output")->required();

    auto* stab = app.add_subcommand("stability", "twin runs from r0 and r0 + perturbation");
    stab->add_option("--config", config, "config file")->required();
    stab->add_option("--perturb", perturb, "perturbation snapshot")->required();
    stab->add_option("--scale", scale, "factor applied to the perturbation");
    stab->add_option("--out", out_file, "CSV output")->default_val("stability.csv");

    auto* inv = app.add_subcommand("invariants", "property battery, nonzero exit on failure");
    inv->add_option("--config", config, "config file")->required();

    auto* conv = app.add_subcommand("convergence", "balance residuals under dt refinement");
    conv->add_option("--config", config, "config file")->required();
    conv->add_option("--dts", dts, "comma list of time steps")->required();
    conv->add_option("--out", out_file, "CSV output")->default_val("convergence.csv");

    auto* lps = app.add_subcommand("lp-spectrum", "dyadic block energies of a field");
    lps->add_option("--config", config, "config file (initial condition)");
    lps->add_option("--snapshot", snapshot, "snapshot file");
    lps->add_option("--s", s, "Sobolev index");
    lps->add_option("--out", out_file, "CSV output")->default_val("lp_spectrum.csv");

    const std::string keys = "\nconfig keys (key = default  # meaning):\n" + config_reference();
    for (auto* sub : {run, linear, stab, inv, conv}) sub->footer(keys);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return kExitValidation;
    }

    try {
        if (run->parsed()) return cmd_run(config, out_dir, out);
        if (linear->parsed()) return cmd_linear(config, out_dir, out);
        if (dec->parsed()) return cmd_decay(decay, out);
        if (cmp->parsed()) return cmd_compare(run_a, run_b, eta, out_file, out);
        if (stab->parsed()) return cmd_stability(config, perturb, scale, out_file, out);
        if (inv->parsed()) return cmd_invariants(config, out);
        if (conv->parsed()) return cmd_convergence(config, dts, out_file, out);
        if (lps->parsed()) {
            if (config.empty() == snapshot.empty()) throw ValidationError("lp-spectrum: give exactly one of --config, --snapshot");
            return cmd_lp_spectrum(config, snapshot, s, out_file, out);
        }
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "file error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace qgk
