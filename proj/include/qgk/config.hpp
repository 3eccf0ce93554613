#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "qgk/evolution.hpp"

namespace qgk {

/// Description of a field built from config keys under one prefix ("ic" or "forcing").
struct FieldSource {
    std::string kind = "zero";  // zero | mode | gaussian | random | file
    double amplitude = 1.0;
    int kx = 1;
    int ky = 0;
    double width = 1.0;
    double band = 8.0;
    double slope = 1.0;
    bool mean_free = true;
    bool vanishing_moments = false;  // apply Lap^2 before normalizing
    std::filesystem::path file;
};

/// Config file as parsed, before fields are materialized.
struct ExperimentConfig {
    GridSpec grid;
    double mu = 1.0;
    double dt = 1e-3;
    double t_end = 1.0;
    Stepper stepper = Stepper::if_rk4;
    std::optional<double> galerkin_cut;
    std::string forcing_kind = "zero";  // zero | separable_decaying
    double forcing_k = 1.0;
    double forcing_eta = 0.5;
    FieldSource forcing_shape;
    FieldSource ic;
    std::uint64_t seed = 0;
    std::size_t diagnostics_every = 1;
    std::vector<double> sigmas;
    std::vector<double> tilde_s;
    std::filesystem::path output_dir = ".";
    std::size_t snapshots_every = 0;
    bool nonlinear = true;

    /// Resolved key = value lines (every key, defaults included), sorted.
    std::map<std::string, std::string> resolved;
};

/// Parse a flat "key = value" file ('#' starts a comment). Unknown keys,
/// duplicates, malformed values and out-of-range values are ValidationErrors
/// naming the key and the line. Required: grid.n, grid.box_length, mu, dt, t_end.
ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = ".");
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Documented key set with defaults, one "key = default  # meaning" line each.
std::string config_reference();

/// Build the field described by `src`; randomness comes from `seed`.
SpectralField materialize(const FieldSource& src, const GridSpec& grid, std::uint64_t seed);

/// Full run configuration with the initial condition and forcing built.
RunConfig to_run_config(const ExperimentConfig& cfg);

}  // namespace qgk
