#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qgk/config.hpp"

namespace qgk {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumerical = 2 };

/// Parse argv and run one subcommand. Never throws; library errors map to
/// kExitValidation / kExitNumerical with a message on `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// One line of the property battery.
struct CheckResult {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

/// Structural checks on the configured grid and data: cancellations,
/// single-mode exactness, energy identities, partition of unity, Bony
/// reconstruction, a short run's Hermitian symmetry, mean and energy behaviour.
std::vector<CheckResult> invariant_battery(const ExperimentConfig& cfg);

}  // namespace qgk
