#include "modehunt/tautstring.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace modehunt {
namespace {

struct Point {
    double x;
    double y;
};

double slope(const Point& p, const Point& q) { return (q.y - p.y) / (q.x - p.x); }

// Funnel walk on the cumulative-sum scale: x is the breakpoint index, y the
// running sum, and the tube radius is n * alpha. The upper chain is the
// greatest convex minorant of the top constraints seen from the apex, the
// lower chain the least concave majorant of the bottom constraints. When a
// new constraint falls outside the funnel the apex advances along the
// opposite chain and the passed vertices become knots.
std::vector<Point> funnel_path(const std::vector<double>& S, double radius) {
    const std::size_t n = S.size() - 1;
    std::vector<Point> path{{0.0, S[0]}};
    std::deque<Point> upper{path.front()};
    std::deque<Point> lower{path.front()};

    auto add_top = [&](Point p) {
        if (lower.size() >= 2 && slope(lower[0], p) <= slope(lower[0], lower[1])) {
            while (lower.size() >= 2 && slope(lower[0], p) <= slope(lower[0], lower[1])) {
                lower.pop_front();
                path.push_back(lower.front());
            }
            upper.assign({lower.front(), p});
            return;
        }
        while (upper.size() >= 2 &&
               slope(upper[upper.size() - 2], p) <= slope(upper[upper.size() - 2], upper.back())) {
            upper.pop_back();
        }
        upper.push_back(p);
    };

    auto add_bottom = [&](Point p) {
        if (upper.size() >= 2 && slope(upper[0], p) >= slope(upper[0], upper[1])) {
            while (upper.size() >= 2 && slope(upper[0], p) >= slope(upper[0], upper[1])) {
                upper.pop_front();
                path.push_back(upper.front());
            }
            lower.assign({upper.front(), p});
            return;
        }
        while (lower.size() >= 2 &&
               slope(lower[lower.size() - 2], p) >= slope(lower[lower.size() - 2], lower.back())) {
            lower.pop_back();
        }
        lower.push_back(p);
    };

    for (std::size_t k = 1; k < n; ++k) {
        const double x = static_cast<double>(k);
        add_top({x, S[k] + radius});
        add_bottom({x, S[k] - radius});
    }
    add_top({static_cast<double>(n), S[n]});
    path.insert(path.end(), upper.begin() + 1, upper.end());
    return path;
}

std::vector<Point> string_path(const StepSignal& f, double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("taut_string: alpha must be non-negative");
    const auto S = prefix_sums(f.values());
    const std::size_t n = f.size();
    if (alpha == 0.0) {
        std::vector<Point> path(n + 1);
        for (std::size_t i = 0; i <= n; ++i) path[i] = {static_cast<double>(i), S[i]};
        return path;
    }
    return funnel_path(S, alpha * static_cast<double>(n));
}

}  // namespace

double TautString::at_breakpoint(std::size_t i) const {
    const auto it = std::lower_bound(knots.begin(), knots.end(), i);
    const auto k = static_cast<std::size_t>(it - knots.begin());
    if (knots[k] == i) return values[k];
    const double w = static_cast<double>(i - knots[k - 1]) / static_cast<double>(knots[k] - knots[k - 1]);
    return values[k - 1] + w * (values[k] - values[k - 1]);
}

double TautString::length() const {
    double total = 0.0;
    for (std::size_t k = 1; k < knots.size(); ++k) {
        total += std::hypot(knot_position(k) - knot_position(k - 1), values[k] - values[k - 1]);
    }
    return total;
}

TautString taut_string(const StepSignal& f, double alpha) {
    const auto path = string_path(f, alpha);
    const double n = static_cast<double>(f.size());
    TautString out;
    out.n = f.size();
    out.knots.reserve(path.size());
    out.values.reserve(path.size());
    for (const auto& p : path) {
        out.knots.push_back(static_cast<std::size_t>(p.x));
        out.values.push_back(p.y / n);
    }
    return out;
}

StepSignal taut_derivative(const StepSignal& f, double alpha) {
    const auto path = string_path(f, alpha);
    std::vector<double> values(f.size());
    double previous = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        double s = slope(path[k - 1], path[k]);
        // Collinear knots only arise from ties; keep them from splitting a run.
        if (k > 1 && std::abs(s - previous) <= 1e-12 * std::max({1.0, std::abs(s), std::abs(previous)})) {
            s = previous;
        }
        const auto a = static_cast<std::size_t>(path[k - 1].x);
        const auto b = static_cast<std::size_t>(path[k].x);
        std::fill(values.begin() + static_cast<std::ptrdiff_t>(a), values.begin() + static_cast<std::ptrdiff_t>(b), s);
        previous = s;
    }
    return StepSignal(std::move(values));
}

std::size_t min_modes_in_ball(const StepSignal& f, double alpha) {
    return mode_count(taut_derivative(f, alpha));
}

double signature_oracle(const StepSignal& f, std::size_t k, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("signature_oracle: tol must be positive");
    if (mode_count(f) <= k) return 0.0;

    // The chord from (0,0) to (1,F(1)) has no modes; the tube of this radius contains it.
    const Antiderivative F = antiderivative(f);
    const double n = static_cast<double>(f.size());
    double hi = 0.0;
    for (std::size_t i = 0; i < F.F.size(); ++i) {
        hi = std::max(hi, std::abs(F.F[i] - static_cast<double>(i) / n * F.F.back()));
    }
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (min_modes_in_ball(f, mid) <= k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace modehunt
