#include "qgk/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "qgk/initial_data.hpp"
#include "qgk/snapshot.hpp"

namespace qgk {
namespace {

struct KeyInfo {
    const char* key;
    const char* fallback;  // nullptr: required
    const char* meaning;
};

// Order here is the order of config_reference().
constexpr KeyInfo kKeys[] = {
    {"grid.n", nullptr, "grid points per side, even, >= 8"},
    {"grid.box_length", nullptr, "side L of the periodic box, > 0"},
    {"grid.dealias", "three_halves_padding", "three_halves_padding | two_thirds_truncation"},
    {"mu", nullptr, "viscosity, >= 0 (0 runs are recorded, not certified)"},
    {"dt", nullptr, "time step, > 0 (adjusted down so t_end is hit exactly)"},
    {"t_end", nullptr, "final time, > 0"},
    {"stepper", "if_rk4", "if_rk4 | if_rk2"},
    {"galerkin_cut", "none", "sharp cut |xi|^2 <= value, or none"},
    {"seed", "0", "seed of every random field in the run"},
    {"ic.kind", "random", "zero | mode | gaussian | random | file"},
    {"ic.amplitude", "1", "mode/gaussian: peak amplitude; random or vanishing_moments: H^3 norm"},
    {"ic.kx", "1", "mode: integer wavevector x component"},
    {"ic.ky", "0", "mode: integer wavevector y component"},
    {"ic.width", "1", "gaussian: width in box units"},
    {"ic.band", "8", "random: integer-radius band limit"},
    {"ic.slope", "1", "random: spectral slope s in (1 + |xi|^2)^-(s + 1)"},
    {"ic.mean_free", "true", "gaussian/file: drop the mean coefficient"},
    {"ic.vanishing_moments", "false", "gaussian/random: apply Lap^2 before scaling to the amplitude"},
    {"ic.file", "", "file: snapshot path (relative to the config file)"},
    {"forcing.kind", "zero", "zero | separable_decaying"},
    {"forcing.k", "1", "amplitude K of K (1 + t)^(-1-eta) g(x), >= 0"},
    {"forcing.eta", "0.5", "decay exponent eta in (0, 1)"},
    {"forcing.shape", "gaussian", "profile g: mode | gaussian | random | file"},
    {"forcing.amplitude", "1", "profile amplitude (as ic.amplitude)"},
    {"forcing.kx", "1", "mode profile x wavenumber"},
    {"forcing.ky", "0", "mode profile y wavenumber"},
    {"forcing.width", "1", "gaussian profile width"},
    {"forcing.band", "8", "random profile band"},
    {"forcing.slope", "1", "random profile slope"},
    {"forcing.mean_free", "true", "drop the mean coefficient of g"},
    {"forcing.vanishing_moments", "false", "apply Lap^2 to g before scaling"},
    {"forcing.file", "", "file profile snapshot path"},
    {"diagnostics_every", "1", "steps between diagnostics rows, must divide the step count"},
    {"diagnostics.sigma", "", "comma list of sigma for E_sigma columns"},
    {"diagnostics.tilde_s", "", "comma list of s for Etilde_s columns"},
    {"output.dir", ".", "output directory (relative to the config file)"},
    {"snapshots_every", "0", "diagnostics rows between snapshots, 0 = final state only"},
    {"physics.nonlinear", "true", "false switches Lambda off"},
};

const KeyInfo* find_key(const std::string& key) {
    for (const auto& k : kKeys)
        if (key == k.key) return &k;
    return nullptr;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line = 0;  // 0: default
};

[[noreturn]] void fail(const std::string& key, int line, const std::string& why) {
    std::ostringstream msg;
    msg << "config";
    if (line > 0) msg << " line " << line;
    msg << ": " << key << ": " << why;
    throw ValidationError(msg.str());
}

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    const Entry& entry(const std::string& key) const { return entries_.at(key); }

    std::string text(const std::string& key) const { return entry(key).value; }

    double real(const std::string& key) const {
        const Entry& e = entry(key);
        double v = 0.0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || !std::isfinite(v)) fail(key, e.line, "expected a finite number, got '" + e.value + "'");
        return v;
    }

    long long integer(const std::string& key) const {
        const Entry& e = entry(key);
        long long v = 0;
        const char* first = e.value.data();
        const char* last = first + e.value.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last) fail(key, e.line, "expected an integer, got '" + e.value + "'");
        return v;
    }

    bool boolean(const std::string& key) const {
        const Entry& e = entry(key);
        if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
        if (e.value == "false" || e.value == "0" || e.value == "no") return false;
        fail(key, e.line, "expected true or false, got '" + e.value + "'");
    }

    std::vector<double> list(const std::string& key) const {
        const Entry& e = entry(key);
        std::vector<double> out;
        std::stringstream ss(e.value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc{} || ptr != item.data() + item.size()) fail(key, e.line, "bad list entry '" + item + "'");
            out.push_back(v);
        }
        return out;
    }

    void require(bool ok, const std::string& key, const std::string& why) const {
        if (!ok) fail(key, entry(key).line, why);
    }

private:
    std::map<std::string, Entry> entries_;
};

FieldSource read_source(const Reader& r, const std::string& prefix, const std::string& kind_key,
                        const std::filesystem::path& base_dir) {
    FieldSource s;
    s.kind = r.text(kind_key);
    static const std::set<std::string> kinds{"zero", "mode", "gaussian", "random", "file"};
    r.require(kinds.count(s.kind) > 0, kind_key, "unknown kind '" + s.kind + "'");
    s.amplitude = r.real(prefix + ".amplitude");
    r.require(s.amplitude >= 0.0, prefix + ".amplitude", "must be >= 0");
    s.kx = static_cast<int>(r.integer(prefix + ".kx"));
    s.ky = static_cast<int>(r.integer(prefix + ".ky"));
    s.width = r.real(prefix + ".width");
    r.require(s.width > 0.0, prefix + ".width", "must be > 0");
    s.band = r.real(prefix + ".band");
    r.require(s.band >= 1.0, prefix + ".band", "must be >= 1");
    s.slope = r.real(prefix + ".slope");
    s.mean_free = r.boolean(prefix + ".mean_free");
    s.vanishing_moments = r.boolean(prefix + ".vanishing_moments");
    const std::string file = r.text(prefix + ".file");
    if (s.kind == "file") {
        r.require(!file.empty(), prefix + ".file", "required when the kind is file");
        s.file = base_dir / file;
    }
    return s;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": expected key = value";
            throw ValidationError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!find_key(key)) fail(key, line_no, "unknown key");
        if (entries.count(key)) fail(key, line_no, "duplicate key (first set on line " + std::to_string(entries[key].line) + ")");
        entries[key] = {value, line_no};
    }
    for (const auto& k : kKeys) {
        if (entries.count(k.key)) continue;
        if (!k.fallback) fail(k.key, 0, "missing required key");
        entries[k.key] = {k.fallback, 0};
    }

    ExperimentConfig cfg;
    for (const auto& [key, e] : entries) cfg.resolved[key] = e.value;
    const Reader r(std::move(entries));

    const long long n = r.integer("grid.n");
    r.require(n >= 8 && n % 2 == 0 && n <= 8192, "grid.n", "must be even and in [8, 8192]");
    cfg.grid.n = static_cast<std::size_t>(n);
    cfg.grid.box_length = r.real("grid.box_length");
    r.require(cfg.grid.box_length > 0.0, "grid.box_length", "must be > 0");
    try {
        cfg.grid.dealias = parse_dealias(r.text("grid.dealias"));
    } catch (const ValidationError& e) {
        r.require(false, "grid.dealias", e.what());
    }

    cfg.mu = r.real("mu");
    r.require(cfg.mu >= 0.0, "mu", "must be >= 0");
    cfg.dt = r.real("dt");
    r.require(cfg.dt > 0.0, "dt", "must be > 0");
    cfg.t_end = r.real("t_end");
    r.require(cfg.t_end > 0.0, "t_end", "must be > 0");
    try {
        cfg.stepper = parse_stepper(r.text("stepper"));
    } catch (const ValidationError& e) {
        r.require(false, "stepper", e.what());
    }
    if (r.text("galerkin_cut") != "none") {
        cfg.galerkin_cut = r.real("galerkin_cut");
        r.require(*cfg.galerkin_cut > 0.0, "galerkin_cut", "must be > 0 or none");
    }
    const long long seed = r.integer("seed");
    r.require(seed >= 0, "seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);

    cfg.ic = read_source(r, "ic", "ic.kind", base_dir);
    cfg.forcing_kind = r.text("forcing.kind");
    r.require(cfg.forcing_kind == "zero" || cfg.forcing_kind == "separable_decaying", "forcing.kind",
              "expected zero or separable_decaying");
    cfg.forcing_k = r.real("forcing.k");
    r.require(cfg.forcing_k >= 0.0, "forcing.k", "must be >= 0");
    cfg.forcing_eta = r.real("forcing.eta");
    r.require(cfg.forcing_eta > 0.0 && cfg.forcing_eta < 1.0, "forcing.eta", "must lie in (0, 1)");
    cfg.forcing_shape = read_source(r, "forcing", "forcing.shape", base_dir);

    const long long every = r.integer("diagnostics_every");
    r.require(every >= 1, "diagnostics_every", "must be >= 1");
    cfg.diagnostics_every = static_cast<std::size_t>(every);
    cfg.sigmas = r.list("diagnostics.sigma");
    cfg.tilde_s = r.list("diagnostics.tilde_s");
    cfg.output_dir = base_dir / r.text("output.dir");
    const long long snaps = r.integer("snapshots_every");
    r.require(snaps >= 0, "snapshots_every", "must be >= 0");
    cfg.snapshots_every = static_cast<std::size_t>(snaps);
    cfg.nonlinear = r.boolean("physics.nonlinear");

    // Cross-key checks that need the full picture.
    const double steps = std::max(1.0, std::round(cfg.t_end / cfg.dt));
    if (std::fmod(steps, static_cast<double>(cfg.diagnostics_every)) != 0.0) {
        r.require(false, "diagnostics_every",
                  "must divide the step count " + std::to_string(static_cast<long long>(steps)));
    }
    if (cfg.ic.kind == "random") {
        r.require(cfg.ic.band <= static_cast<double>(cfg.grid.n / 2 - 1), "ic.band", "exceeds n/2 - 1");
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path.parent_path().empty() ? "." : path.parent_path());
}

std::string config_reference() {
    std::ostringstream out;
    for (const auto& k : kKeys) {
        out << k.key << " = " << (k.fallback ? (*k.fallback ? k.fallback : "\"\"") : "<required>") << "  # "
            << k.meaning << '\n';
    }
    return out.str();
}

SpectralField materialize(const FieldSource& src, const GridSpec& grid, std::uint64_t seed) {
    SpectralField f(grid);
    if (src.kind == "zero") return f;
    if (src.kind == "mode") {
        const int kmax = static_cast<int>(grid.n / 2) - 1;
        if (std::abs(src.kx) > kmax || std::abs(src.ky) > kmax) throw ValidationError("mode wavevector outside the grid band");
        return cosine_mode(grid, src.kx, src.ky, src.amplitude);
    }
    if (src.kind == "file") {
        Snapshot snap = read_snapshot(src.file);
        require_same_grid(grid, snap.field.grid(), "snapshot field");
        f = SpectralField(grid, std::vector<Complex>(snap.field.coeffs().begin(), snap.field.coeffs().end()));
        if (src.mean_free) f.at(0, 0) = 0.0;
        return f;
    }
    if (src.kind == "gaussian") {
        f = gaussian_bump(grid, src.width, 1.0);
    } else {
        f = random_band_limited(grid, {seed, src.band, src.slope, 1.0});
    }
    if (src.mean_free) f.at(0, 0) = 0.0;
    if (src.vanishing_moments) f = bilaplacian(f);
    if (src.kind == "gaussian" && !src.vanishing_moments) {
        f *= src.amplitude;
    } else {
        const double norm = sobolev_norm(f, 3.0);
        if (norm > 0.0) f *= src.amplitude / norm;
    }
    return f;
}

RunConfig to_run_config(const ExperimentConfig& cfg) {
    RunConfig run;
    run.grid = cfg.grid;
    run.mu = cfg.mu;
    run.t_end = cfg.t_end;
    run.dt = cfg.dt;
    run.stepper = cfg.stepper;
    run.galerkin_cut = cfg.galerkin_cut;
    run.seed = cfg.seed;
    run.diagnostics_every = cfg.diagnostics_every;
    run.nonlinear = cfg.nonlinear;
    run.sigmas = cfg.sigmas;
    run.tilde_s = cfg.tilde_s;
    run.initial = materialize(cfg.ic, cfg.grid, cfg.seed);
    if (cfg.forcing_kind == "separable_decaying") {
        run.forcing = ForcingSpec::separable(materialize(cfg.forcing_shape, cfg.grid, cfg.seed + 1), cfg.forcing_k,
                                             cfg.forcing_eta);
    }
    run.validate();
    return run;
}

}  // namespace qgk
