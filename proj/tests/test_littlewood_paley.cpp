#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qgk/initial_data.hpp"
#include "qgk/littlewood_paley.hpp"

using namespace qgk;

namespace {

const GridSpec kGrid{64, 2.0 * std::numbers::pi, DealiasPolicy::three_halves_padding};

SpectralField field(std::uint64_t seed, double band = 28.0) { return random_band_limited(kGrid, {seed, band, 0.0, 1.0}); }

// Largest coefficient of u at modes with |xi| / lambda0 outside [lo, hi].
double mass_outside(const SpectralField& u, double lo, double hi) {
    const auto& g = u.grid();
    const double unit = g.wavenumber_unit();
    double m = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j) {
            const double r = std::sqrt(g.xi_squared(i, j)) / unit;
            if (r < lo || r > hi) m = std::max(m, std::abs(u.at_slot(i, j)));
        }
    return m;
}

}  // namespace

TEST_CASE("chi and phi profile") {
    CHECK(lp_chi(0.0) == 1.0);
    CHECK(lp_chi(1.0) == 1.0);
    CHECK(lp_chi(2.0) == 0.0);
    CHECK(lp_chi(1.5) == doctest::Approx(0.5));
    for (double r = 1.0; r < 2.0; r += 0.01) CHECK(lp_chi(r + 0.01) <= lp_chi(r));
    CHECK(lp_phi(2.0) == 1.0);
    CHECK(lp_phi(0.99) == 0.0);
    CHECK(lp_phi(4.0) == 0.0);
}

TEST_CASE("partition of unity and block support") {
    DyadicPartition p(kGrid);
    CHECK(p.partition_defect() <= 1e-12);
    const auto u = field(1);
    for (int j = 0; j <= p.j_max(); ++j) {
        const auto b = p.dyadic_block(u, j);
        CHECK(mass_outside(b, std::ldexp(1.0, j), std::ldexp(1.0, j + 2)) == 0.0);
    }
    CHECK(mass_outside(p.dyadic_block(u, -1), 0.0, 2.0) == 0.0);
    CHECK_THROWS_AS((void)p.dyadic_block(u, p.j_max() + 1), ValidationError);
    CHECK_THROWS_AS((void)p.dyadic_block(u, -2), ValidationError);
}

TEST_CASE("reconstruction and almost orthogonality") {
    DyadicPartition p(kGrid);
    const auto u = field(2);
    SpectralField sum(kGrid);
    for (int j = -1; j <= p.j_max(); ++j) sum += p.dyadic_block(u, j);
    CHECK(relative_difference(sum, u) <= 1e-12);
    for (int j = -1; j <= p.j_max(); ++j)
        for (int q = -1; q <= p.j_max(); ++q)
            if (std::abs(j - q) >= 2) CHECK(p.dyadic_block(p.dyadic_block(u, q), j).max_abs() <= 1e-13 * u.max_abs());
    CHECK(relative_difference(p.low_cut(u, p.j_max() + 1), u) <= 1e-12);
    CHECK(p.low_cut(u, -1).max_abs() == 0.0);
}

TEST_CASE("mode at the centre of a block") {
    DyadicPartition p(kGrid);
    const auto m = cosine_mode(kGrid, 8, 0, 1.0);  // |xi| / lambda0 = 8 = 2^(2+1)
    CHECK(relative_difference(p.dyadic_block(m, 2), m) <= 1e-12);
    CHECK(p.dyadic_block(m, 1).max_abs() <= 1e-12);
    CHECK(p.dyadic_block(m, 3).max_abs() <= 1e-12);
}

TEST_CASE("Besov and Sobolev norms are equivalent") {
    DyadicPartition p(kGrid);
    CHECK(p.besov_norm(SpectralField(kGrid), 1.0) == 0.0);
    for (double s : {0.0, 1.0, 2.0, 3.0}) {
        const auto c = p.equivalence_constants(s);
        CHECK(c.lower > 0.0);
        CHECK(c.upper >= c.lower);
        for (std::uint64_t seed = 3; seed < 6; ++seed) {
            const auto u = field(seed);
            const double ratio = p.besov_norm(u, s) / sobolev_norm(u, s);
            CHECK(ratio >= c.lower * (1.0 - 1e-12));
            CHECK(ratio <= c.upper * (1.0 + 1e-12));
        }
    }
    // s = 0: the sum of squared weights lies in [1/2, 1]
    const auto c0 = p.equivalence_constants(0.0);
    CHECK(c0.upper <= 1.0 + 1e-12);
    CHECK(c0.lower >= std::sqrt(0.5) - 1e-12);
}

TEST_CASE("Bony decomposition") {
    DyadicPartition p(kGrid);
    const auto u = field(6, 20.0), v = field(7, 20.0);
    const auto uv = dealiased_product(u, v);
    const auto bony = p.paraproduct(u, v) + p.paraproduct(v, u) + p.remainder(u, v);
    CHECK(relative_difference(bony, uv) <= 1e-12);

    SpectralField c(kGrid);
    c.at(0, 0) = 2.0;
    const auto high = v - p.dyadic_block(v, -1) - p.dyadic_block(v, 0);
    CHECK(relative_difference(p.paraproduct(c, v), 2.0 * high) <= 1e-12);
    const auto bony_c = p.paraproduct(c, v) + p.paraproduct(v, c) + p.remainder(c, v);
    CHECK(relative_difference(bony_c, dealiased_product(c, v)) <= 1e-12);

    const auto low = cosine_mode(kGrid, 1, 0, 1.0);
    CHECK(p.paraproduct(u, low).max_abs() == 0.0);
}

TEST_CASE("paraproduct terms are spectrally localized") {
    DyadicPartition p(kGrid);
    const auto u = field(8), v = field(9);
    for (int j = 1; j <= 3; ++j) {
        const auto term = p.paraproduct_term(u, v, j);
        CHECK(mass_outside(term, 0.0, 5.0 * std::ldexp(1.0, j)) <= 1e-14 * term.max_abs());
    }
}

TEST_CASE("Bernstein ratios") {
    DyadicPartition p(kGrid);
    const auto u = field(10);
    for (int j = 0; j <= p.j_max(); ++j) {
        const auto b = p.dyadic_block(u, j);
        const double r0 = p.bernstein_ratio(b, j, 0);
        if (std::isnan(r0)) continue;
        CHECK(r0 == doctest::Approx(1.0).epsilon(1e-14));
        const double r1 = p.bernstein_ratio(b, j, 1);
        CHECK(r1 >= 0.25);
        CHECK(r1 <= 4.0);
        const double r2 = p.bernstein_ratio(b, j, 2);
        CHECK(r2 >= 1.0 / 16.0);
        CHECK(r2 <= 16.0);
    }
    CHECK(std::isnan(p.bernstein_ratio(SpectralField(kGrid), 1, 1)));
}
