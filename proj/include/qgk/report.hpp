#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qgk/energy.hpp"

namespace qgk {

inline constexpr const char* kToolVersion = "0.3.0";

/// Provenance of one invocation; embedded in every output.
struct ExperimentManifest {
    std::string command;
    std::map<std::string, std::string> settings;  ///< resolved config keys and flags
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;
    std::uint64_t seed = 0;

    /// FNV-1a 64 of the canonical settings text, as 16 hex digits.
    [[nodiscard]] std::string config_hash() const;
    /// "# key: value" lines (settings included) for CSV headers.
    void write_comment_block(std::ostream& out) const;
    /// Plain text form for sidecar files next to binaries.
    void write_sidecar(const std::filesystem::path& path) const;
};

/// Shortest round-trip decimal form, independent of the C++ locale.
std::string format_number(double v);

/// CSV with a fixed column list, '.' decimals and the manifest as a comment header.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const ExperimentManifest& manifest, std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void comment(const std::string& line);

private:
    std::ofstream out_;
    std::vector<std::string> columns_;
};

/// Column names of a time series for the given sigma / s lists, in record order.
std::vector<std::string> timeseries_columns(const std::vector<double>& sigmas, const std::vector<double>& tilde_s);
std::vector<double> timeseries_values(const TimeSeriesRecord& rec);

}  // namespace qgk
