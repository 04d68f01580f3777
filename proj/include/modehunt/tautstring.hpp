#pragma once

#include <cstddef>
#include <vector>

#include "modehunt/signal.hpp"

namespace modehunt {

/// The alpha-tube {G : |G - F| <= radius} around an antiderivative.
struct Tube {
    Antiderivative center;
    double radius;

    double top(std::size_t i) const { return center.F[i] + radius; }
    double bottom(std::size_t i) const { return center.F[i] - radius; }
};

/// Shortest path through a tube with fixed endpoints. Knots are grid
/// breakpoint indices (knot k sits at t = knots[k] / n).
struct TautString {
    std::size_t n = 0;
    std::vector<std::size_t> knots;
    std::vector<double> values;

    double knot_position(std::size_t k) const {
        return static_cast<double>(knots[k]) / static_cast<double>(n);
    }
    /// Linear interpolation between knots at grid breakpoint i.
    double at_breakpoint(std::size_t i) const;
    /// Total Euclidean length of the polygonal graph.
    double length() const;
};

TautString taut_string(const StepSignal& f, double alpha);

/// Derivative of the taut string as a step signal on the original grid.
StepSignal taut_derivative(const StepSignal& f, double alpha);

/// Fewest modes of any g with d_K(f, g) <= alpha.
std::size_t min_modes_in_ball(const StepSignal& f, double alpha);

/// Smallest radius whose Kolmogorov ball around f holds a function with at
/// most k modes, found by bisection on min_modes_in_ball.
double signature_oracle(const StepSignal& f, std::size_t k, double tol = 1e-10);

}  // namespace modehunt
