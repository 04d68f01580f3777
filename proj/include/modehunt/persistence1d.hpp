#pragma once

#include <cstddef>
#include <vector>

#include "modehunt/signal.hpp"

namespace modehunt {

/// Finite 0-dimensional sublevel-set persistence pair: a component born at a
/// local minimum value dies when it merges at a local maximum value.
struct PersistencePair {
    double birth;
    double death;

    double persistence() const noexcept { return death - birth; }
};

/// Finite H0 pairs by union-find with the elder rule. The essential class of
/// the global minimum is excluded. Pairs are returned in order of death.
std::vector<PersistencePair> persistence_pairs(const StepSignal& f);

/// Finite persistences sorted from largest to smallest.
std::vector<double> persistence_sequence(const StepSignal& f);

/// Sup-norm signatures s_{k,inf} = p_{k+1} / 2.
SignatureSequence persistence_signatures(const StepSignal& f);

/// max{j : s_{j-1,inf} >= q}, with s_{-1,inf} = +inf. Throws for q <= 0.
std::size_t sup_mode_estimate(const SignatureSequence& sup_signatures, double q);
std::size_t sup_mode_estimate(const StepSignal& f, double q);

}  // namespace modehunt
