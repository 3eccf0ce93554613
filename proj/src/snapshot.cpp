#include "qgk/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace qgk {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::ostream& out, T value) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(bytes.data(), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    std::array<char, sizeof(T)> bytes;
    if (!in.read(bytes.data(), sizeof(T))) throw ValidationError("snapshot: truncated data");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const SpectralField& field, double time) {
    const GridSpec& g = field.grid();
    out.write("QGK1", 4);
    put<std::uint32_t>(out, kSnapshotVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n));
    put<double>(out, g.box_length);
    put<double>(out, time);
    const int half = static_cast<int>(g.n / 2);
    for (int k1 = -half; k1 < half; ++k1) {
        for (int k2 = -half; k2 < half; ++k2) {
            const Complex c = field.at(k1, k2);
            put<double>(out, c.real());
            put<double>(out, c.imag());
        }
    }
    if (!out) throw ValidationError("snapshot: write failed");
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& field, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("snapshot: cannot open " + path.string() + " for writing");
    write_snapshot(out, field, time);
}

Snapshot read_snapshot(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "QGK1", 4) != 0) throw ValidationError("snapshot: bad magic");
    const auto version = get<std::uint32_t>(in);
    if (version != kSnapshotVersion) throw ValidationError("snapshot: unsupported version " + std::to_string(version));
    GridSpec grid;
    grid.n = get<std::uint32_t>(in);
    grid.box_length = get<double>(in);
    grid.validate();
    const double time = get<double>(in);
    SpectralField field(grid);
    const int half = static_cast<int>(grid.n / 2);
    for (int k1 = -half; k1 < half; ++k1) {
        for (int k2 = -half; k2 < half; ++k2) {
            const double re = get<double>(in);
            const double im = get<double>(in);
            field.at(k1, k2) = Complex(re, im);
        }
    }
    if (!field.all_finite()) throw ValidationError("snapshot: non-finite coefficient");
    if (field.hermitian_defect() > kSnapshotHermitianTolerance) {
        throw ValidationError("snapshot: coefficients are not Hermitian (field would not be real)");
    }
    return {std::move(field), time};
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("snapshot: cannot open " + path.string());
    return read_snapshot(in);
}

}  // namespace qgk
