#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "qgk/field.hpp"

namespace qgk {

/// Binary spectral snapshot, all multi-byte values little-endian:
///   "QGK1" | u32 version | u32 n | f64 box_length | f64 time |
///   n*n x (f64 re, f64 im) for k1 = -n/2 .. n/2-1 (outer), k2 = -n/2 .. n/2-1 (inner).
struct Snapshot {
    SpectralField field;
    double time = 0.0;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;
/// Relative Hermitian defect above which a loaded snapshot is rejected.
inline constexpr double kSnapshotHermitianTolerance = 1e-12;

void write_snapshot(std::ostream& out, const SpectralField& field, double time);
void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time);

/// Throws ValidationError on bad magic/version, truncated data, or a
/// coefficient set that is not Hermitian. The dealias policy is not stored;
/// the loaded grid uses the default (three_halves_padding).
Snapshot read_snapshot(std::istream& in);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace qgk
