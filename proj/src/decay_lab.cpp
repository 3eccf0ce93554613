#include "qgk/decay_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qgk/grid.hpp"
#include "qgk/quadrature.hpp"

namespace qgk::decay {
namespace {

// exp(-x) underflows to subnormals past this.
constexpr double kExpCutoff = 745.0;

// Radius where mu * h(rho) * t first exceeds kExpCutoff (h is increasing).
double decay_cutoff(double mu, double t) {
    if (mu * t <= 0.0) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = 1.0;
    while (mu * h_symbol(hi) * t < kExpCutoff) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mu * h_symbol(mid) * t < kExpCutoff ? lo : hi) = mid;
    }
    return hi;
}

double effective_radius(const RadialProfile& p, double mu, double t) {
    return std::min(p.support_radius(), decay_cutoff(mu, t));
}

// Breakpoints on [0, R]: geometric refinement around the decay scale
// (mu t)^(-1/4), where the integrand concentrates at large t, plus profile kinks.
std::vector<double> radial_breaks(const RadialProfile& p, double mu, double t) {
    const double R = effective_radius(p, mu, t);
    std::vector<double> b{0.0, R};
    const double scale = mu * t > 1.0 ? std::pow(mu * t, -0.25) : 1.0;
    for (int m = -6; m <= 12; ++m) {
        const double x = std::ldexp(scale, m);
        if (x < R) b.push_back(x);
    }
    for (double kink : p.kinks())
        if (kink < R) b.push_back(kink);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

}  // namespace

double forcing_memory(double lambda, double eta, double amplitude, double t) {
    // int_0^t exp(-lambda s) K (1 + t - s)^(-1-eta) ds, s = t - tau.
    if (t <= 0.0) return 0.0;
    auto f = [&](double s) { return amplitude * std::exp(-lambda * s) * std::pow(1.0 + t - s, -1.0 - eta); };
    // Past lambda s = kExpCutoff the kernel is below the smallest normal double.
    const double s_max = lambda > 0.0 ? std::min(t, kExpCutoff / lambda) : t;
    std::vector<double> b{0.0, s_max};
    if (lambda > 0.0) {
        for (int m = -4; m <= 12; ++m) {
            const double x = std::ldexp(1.0 / lambda, m);
            if (x < s_max) b.push_back(x);
        }
    }
    for (int m = 0; m <= 40; ++m) {
        const double x = t - (std::ldexp(1.0, m) - 1.0);
        if (x <= 0.0) break;
        if (x < s_max) b.push_back(x);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return adaptive_integrate_pieces(f, b, 1e-10).value;
}

double h_symbol(double rho) {
    const double q = rho * rho;
    return q * q * (1.0 + q) / (1.0 + q + q * q);
}

RadialProfile RadialProfile::gaussian(double width) {
    if (!(width > 0.0)) throw ValidationError("gaussian profile: width must be positive");
    RadialProfile p;
    p.kind_ = Kind::gaussian;
    p.scale_ = width;
    return p;
}

RadialProfile RadialProfile::compact_indicator(double radius) {
    if (!(radius > 0.0)) throw ValidationError("indicator profile: radius must be positive");
    RadialProfile p;
    p.kind_ = Kind::compact_indicator;
    p.scale_ = radius;
    return p;
}

RadialProfile RadialProfile::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ValidationError("tabulated profile: need at least two nodes");
    std::sort(samples.begin(), samples.end());
    for (const auto& [rho, v] : samples) {
        if (rho < 0.0 || v < 0.0 || !std::isfinite(v)) throw ValidationError("tabulated profile: nodes must be >= 0");
    }
    RadialProfile p;
    p.kind_ = Kind::tabulated;
    p.samples_ = std::move(samples);
    return p;
}

RadialProfile RadialProfile::parse(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const double param = colon == std::string::npos ? 1.0 : std::stod(text.substr(colon + 1));
    if (kind == "gaussian") return gaussian(param);
    if (kind == "indicator" || kind == "compact_indicator") return compact_indicator(param);
    throw ValidationError("unknown radial profile '" + text + "' (expected gaussian:<w> or indicator:<R>)");
}

double RadialProfile::operator()(double rho) const {
    switch (kind_) {
    case Kind::gaussian: return std::exp(-rho * rho / (2.0 * scale_ * scale_));
    case Kind::compact_indicator: return rho <= scale_ ? 1.0 : 0.0;
    case Kind::tabulated: {
        if (rho < samples_.front().first || rho > samples_.back().first) return 0.0;
        auto it = std::upper_bound(samples_.begin(), samples_.end(), rho,
                                   [](double r, const auto& node) { return r < node.first; });
        if (it == samples_.end()) return samples_.back().second;
        const auto& [r1, v1] = *it;
        const auto& [r0, v0] = *(it - 1);
        return v0 + (v1 - v0) * (rho - r0) / (r1 - r0);
    }
    }
    return 0.0;
}

double RadialProfile::support_radius() const {
    switch (kind_) {
    case Kind::gaussian: return scale_ * std::sqrt(2.0 * kExpCutoff);
    case Kind::compact_indicator: return scale_;
    case Kind::tabulated: return samples_.back().first;
    }
    return 0.0;
}

std::vector<double> RadialProfile::kinks() const {
    std::vector<double> out;
    if (kind_ == Kind::tabulated)
        for (const auto& node : samples_) out.push_back(node.first);
    if (kind_ == Kind::compact_indicator) out.push_back(scale_);
    return out;
}

std::string RadialProfile::describe() const {
    std::ostringstream s;
    switch (kind_) {
    case Kind::gaussian: s << "gaussian:" << scale_; break;
    case Kind::compact_indicator: s << "indicator:" << scale_; break;
    case Kind::tabulated: s << "tabulated:" << samples_.size() << "_nodes"; break;
    }
    return s.str();
}

double moment_integral(const RadialProfile& profile, int k, double mu, double t) {
    if (t < 0.0) throw ValidationError("moment_integral: t must be nonnegative");
    if (k < 0) throw ValidationError("moment_integral: k must be nonnegative");
    auto integrand = [&](double rho) {
        return std::exp(-mu * h_symbol(rho) * t) * std::pow(rho, k + 1) * profile(rho);
    };
    const auto breaks = radial_breaks(profile, mu, t);
    return 2.0 * std::numbers::pi * adaptive_integrate_pieces(integrand, breaks, 1e-10).value;
}

double moment_integral_simpson(const RadialProfile& profile, int k, double mu, double t, std::size_t intervals) {
    auto integrand = [&](double rho) {
        return std::exp(-mu * h_symbol(rho) * t) * std::pow(rho, k + 1) * profile(rho);
    };
    const double R = effective_radius(profile, mu, t);
    double total = 0.0;
    double lo = 0.0;
    std::vector<double> edges = profile.kinks();
    edges.push_back(R);
    std::sort(edges.begin(), edges.end());
    for (double hi : edges) {
        if (hi > R) hi = R;
        if (hi <= lo) continue;
        const auto share = std::max<std::size_t>(2, static_cast<std::size_t>(intervals * (hi - lo) / R));
        total += simpson_fixed(integrand, lo, hi, share);
        lo = hi;
    }
    return 2.0 * std::numbers::pi * total;
}

double duhamel_moment(const RadialProfile& profile_f, int k, double mu, double eta, double amplitude, double t) {
    if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("duhamel_moment: eta must lie in (0, 1)");
    if (t < 0.0) throw ValidationError("duhamel_moment: t must be nonnegative");
    if (amplitude == 0.0 || t == 0.0) return 0.0;
    auto integrand = [&](double rho) {
        const double q = rho * rho;
        const double d = 1.0 / (1.0 + q + q * q);
        return std::pow(rho, k + 1) * d * profile_f(rho) * forcing_memory(mu * h_symbol(rho), eta, amplitude, t);
    };
    // The forcing memory keeps mass at scale (mu t)^(-1/4) and at the profile scale.
    const double R = profile_f.support_radius();
    std::vector<double> b{0.0, R};
    const double scale = mu * t > 1.0 ? std::pow(mu * t, -0.25) : 1.0;
    for (int m = -6; m <= 12; ++m) {
        const double x = std::ldexp(scale, m);
        if (x < R) b.push_back(x);
    }
    for (int m = -4; m <= 4; ++m) {
        const double x = std::ldexp(1.0, m);
        if (x < R) b.push_back(x);
    }
    for (double kink : profile_f.kinks())
        if (kink < R) b.push_back(kink);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return 2.0 * std::numbers::pi * adaptive_integrate_pieces(integrand, b, 1e-9).value;
}

std::vector<double> log_spaced(double t0, double t1, std::size_t count) {
    if (count < 2 || !(t0 > 0.0) || !(t1 > t0)) throw ValidationError("log_spaced: need 0 < t0 < t1 and count >= 2");
    std::vector<double> out(count);
    const double a = std::log(t0), b = std::log(t1);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = t0;
    out.back() = t1;
    return out;
}

std::vector<double> DecaySeries::envelope() const {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::pow(1.0 + times[i], envelope_rate) * values[i];
    return out;
}

ExponentFit fit_exponent(const DecaySeries& series, double window_lo, double window_hi) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < window_lo || t > window_hi) continue;
        const double v = series.values[i];
        if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("fit_exponent: nonpositive value in window");
        x.push_back(std::log(t));
        y.push_back(std::log(v));
    }
    const std::size_t m = x.size();
    if (m < 8) throw ValidationError("fit_exponent: fewer than 8 samples in window");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ssr += r * r;
    }
    const double stderr_slope = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
    return {slope, stderr_slope, m};
}

bool non_increasing(const std::vector<double>& values, double slack) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] * (1.0 + slack)) return false;
    return true;
}

}  // namespace qgk::decay
