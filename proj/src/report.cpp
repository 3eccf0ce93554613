#include "qgk/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "qgk/grid.hpp"

namespace qgk {

std::string ExperimentManifest::config_hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    mix(command);
    for (const auto& [k, v] : settings) mix("\n" + k + "=" + v);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ExperimentManifest::write_comment_block(std::ostream& out) const {
    out << "# tool: qgk " << kToolVersion << '\n';
    out << "# command: " << command << '\n';
    out << "# config_hash: " << config_hash() << '\n';
    out << "# seed: " << seed << '\n';
    for (const auto& in : inputs) out << "# input: " << in << '\n';
    for (const auto& o : outputs) out << "# output: " << o << '\n';
    for (const auto& [k, v] : settings) out << "# set " << k << " = " << v << '\n';
    for (const auto& w : warnings) out << "# warning: " << w << '\n';
}

void ExperimentManifest::write_sidecar(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    write_comment_block(out);
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const ExperimentManifest& manifest,
                     std::vector<std::string> columns)
    : out_(path), columns_(std::move(columns)) {
    if (!out_) throw ValidationError("cannot write " + path.string());
    manifest.write_comment_block(out_);
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw ValidationError("csv row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << '\n'; }

std::vector<std::string> timeseries_columns(const std::vector<double>& sigmas, const std::vector<double>& tilde_s) {
    std::vector<std::string> cols{"t", "X", "Y", "E_first", "E_second"};
    for (double s : sigmas) cols.push_back("E_sigma_" + format_number(s));
    for (double s : tilde_s) cols.push_back("Etilde_s_" + format_number(s));
    for (const char* c : {"H3", "H4", "first_balance_residual", "second_balance_residual", "dissipation_first",
                          "dissipation_second", "forcing_work_first", "forcing_work_second"})
        cols.emplace_back(c);
    return cols;
}

std::vector<double> timeseries_values(const TimeSeriesRecord& rec) {
    std::vector<double> v{rec.t, rec.X, rec.Y, rec.E_first, rec.E_second};
    v.insert(v.end(), rec.E_sigma.begin(), rec.E_sigma.end());
    v.insert(v.end(), rec.Etilde_s.begin(), rec.Etilde_s.end());
    v.insert(v.end(), {rec.H3, rec.H4, rec.first_balance_residual, rec.second_balance_residual,
                       rec.dissipation_first, rec.dissipation_second, rec.forcing_work_first,
                       rec.forcing_work_second});
    return v;
}

}  // namespace qgk
