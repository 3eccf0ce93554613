#include "qgk/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <sstream>

#include "qgk/grid.hpp"

namespace qgk {

namespace {

struct Piece {
    double value;
    double error;
    double l1;
};

// One 7/15 Gauss-Kronrod rule on [a, b]. Boost's rule runs on [-1, 1] and
// the result is rescaled here, because its recursive driver leaves the error
// estimate unscaled and over-refines short intervals.
Piece kronrod_rule(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto g = [&](double x) { return f(mid + half * x); };
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, -1.0, 1.0, 0, 0.0, &error, &l1);
    return {value * half, error * std::abs(half), l1 * std::abs(half)};
}

struct Interval {
    double a;
    double b;
    Piece p;
    bool operator<(const Interval& o) const { return p.error < o.p.error; }
};

constexpr std::size_t kMaxIntervals = 4096;

// Globally adaptive: bisect the interval with the largest error estimate
// until the summed estimate meets the target or the budget is spent.
Piece gauss_kronrod_piece(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    std::priority_queue<Interval> queue;
    Piece total = kronrod_rule(f, a, b);
    queue.push({a, b, total});
    while (queue.size() < kMaxIntervals && total.error > rel_tol * total.l1) {
        const Interval worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        queue.pop();
        const Piece left = kronrod_rule(f, worst.a, mid);
        const Piece right = kronrod_rule(f, mid, worst.b);
        total.value += left.value + right.value - worst.p.value;
        total.error += left.error + right.error - worst.p.error;
        total.l1 += left.l1 + right.l1 - worst.p.l1;
        queue.push({worst.a, mid, left});
        queue.push({mid, worst.b, right});
    }
    // Re-sum to drop the drift of the running updates.
    Piece sum{0.0, 0.0, 0.0};
    while (!queue.empty()) {
        sum.value += queue.top().p.value;
        sum.error += queue.top().p.error;
        sum.l1 += queue.top().p.l1;
        queue.pop();
    }
    return sum;
}

void require_converged(const Piece& total, double rel_tol, double abs_floor, double a, double b) {
    if (std::isfinite(total.value) && total.error <= rel_tol * total.l1 + abs_floor) return;
    std::ostringstream msg;
    msg << "adaptive quadrature did not converge on [" << a << ", " << b << "]: value " << total.value
        << ", error estimate " << total.error;
    throw NumericalError(msg.str());
}

}  // namespace

QuadratureResult adaptive_integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                                    double abs_floor) {
    if (a == b) return {0.0, 0.0};
    const Piece p = gauss_kronrod_piece(f, a, b, rel_tol);
    require_converged(p, rel_tol, abs_floor, a, b);
    return {p.value, p.error};
}

QuadratureResult adaptive_integrate_pieces(const std::function<double(double)>& f, std::span<const double> breaks,
                                           double rel_tol) {
    // Tolerance is judged on the whole integral, so pieces carrying a
    // negligible share of the mass do not have to meet it on their own.
    Piece total{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        const Piece p = gauss_kronrod_piece(f, breaks[i], breaks[i + 1], rel_tol);
        total.value += p.value;
        total.error += p.error;
        total.l1 += p.l1;
    }
    if (breaks.size() >= 2) require_converged(total, rel_tol, 0.0, breaks.front(), breaks.back());
    return {total.value, total.error};
}

double simpson_fixed(const std::function<double(double)>& f, double a, double b, std::size_t intervals) {
    if (intervals < 2) intervals = 2;
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return sum * h / 3.0;
}

std::vector<double> cumulative_simpson(std::span<const double> y, double h) {
    const std::size_t count = y.size();
    std::vector<double> out(count, 0.0);
    if (count < 2) return out;
    // even[m] = composite Simpson over the first m intervals (m even).
    std::vector<double> even(count, 0.0);
    for (std::size_t m = 2; m < count; m += 2) even[m] = even[m - 2] + h / 3.0 * (y[m - 2] + 4.0 * y[m - 1] + y[m]);
    for (std::size_t m = 1; m < count; ++m) {
        if (m % 2 == 0) {
            out[m] = even[m];
        } else if (m == 1) {
            out[1] = count > 2 ? h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2]) : 0.5 * h * (y[0] + y[1]);
        } else {
            out[m] = even[m - 3] + 3.0 * h / 8.0 * (y[m - 3] + 3.0 * y[m - 2] + 3.0 * y[m - 1] + y[m]);
        }
    }
    return out;
}

}  // namespace qgk
