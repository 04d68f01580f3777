#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "modehunt/signal.hpp"

namespace modehunt {

/// Shape of a constant interval of the taut-string derivative relative to its
/// neighbours.
enum class Classification { Regular, Maximal, Minimal, BoundaryLeft, BoundaryRight, Global };

std::string_view to_string(Classification c);

inline bool is_critical(Classification c) {
    return c == Classification::Maximal || c == Classification::Minimal;
}
inline bool is_boundary(Classification c) {
    return c == Classification::BoundaryLeft || c == Classification::BoundaryRight;
}

/// A constant interval with its length and mass F(b) - F(a). Any consistent
/// units work: merge values scale like mass.
struct IntervalNode {
    double length;
    double mass;
    Classification kind;
};

/// Classifies an interval by its value and its neighbours' values. A missing
/// neighbour means the interval touches that end of [0,1].
Classification classify(double value, std::optional<double> left, std::optional<double> right);

/// Radius at which adjacent intervals `left` and `right` coalesce, or +inf
/// when neither is critical nor boundary.
double merge_value(const IntervalNode& left, const IntervalNode& right);

/// Full Kolmogorov signature sequence via the merge-event sweep, O(n log n).
SignatureSequence kolmogorov_signatures(const StepSignal& f);

/// One processed merge event; exposed for inspection and testing.
struct MergeEvent {
    double alpha;
    std::size_t breakpoint;  ///< grid index of the removed discontinuity
    Classification left;
    Classification right;
    bool emitted;
    std::size_t maxima_after;  ///< Maximal intervals remaining after the splice
};

/// Same sweep as kolmogorov_signatures, recording every event in pop order.
std::vector<MergeEvent> merge_trace(const StepSignal& f);

}  // namespace modehunt
