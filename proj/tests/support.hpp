#pragma once

// Reference implementations used as oracles. Deliberately naive: each one
// recomputes its answer from the definition without sharing code with the
// library routine it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "modehunt/signal.hpp"

namespace modehunt::oracle {

inline StepSignal random_integer_signal(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n, int max_value) {
    std::uniform_int_distribution<std::size_t> len(min_n, max_n);
    std::uniform_int_distribution<int> val(0, max_value);
    std::vector<double> v(len(rng));
    for (double& x : v) x = val(rng);
    return StepSignal(std::move(v));
}

inline StepSignal random_real_signal(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<double> v(n);
    for (double& x : v) x = g(rng);
    return StepSignal(std::move(v));
}

/// Largest number of strict inner local maxima over every finite set of
/// sample points. For a step function one point per cell suffices.
inline std::size_t brute_mode_count(const StepSignal& f) {
    const std::size_t n = f.size();
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<double> s;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) s.push_back(f[i]);
        }
        std::size_t count = 0;
        for (std::size_t j = 1; j + 1 < s.size(); ++j) {
            if (s[j] > s[j - 1] && s[j] > s[j + 1]) ++count;
        }
        best = std::max(best, count);
    }
    return best;
}

/// sup |F - G| by expanding both signals onto the common grid of n*m cells
/// and summing plainly.
inline double brute_kolmogorov_distance(const StepSignal& f, const StepSignal& g) {
    const std::size_t n = f.size();
    const std::size_t m = g.size();
    const std::size_t N = n * m;
    double F = 0.0, G = 0.0, best = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
        F += f[c / m] / static_cast<double>(N);
        G += g[c / n] / static_cast<double>(N);
        best = std::max(best, std::abs(F - G));
    }
    return best;
}

/// Finite sublevel-set pairs (birth, death), found by recomputing the
/// connected components of {f <= level} at every distinct level and letting
/// all but the oldest merged component die.
inline std::vector<std::pair<double, double>> brute_persistence_pairs(const StepSignal& f) {
    const std::size_t n = f.size();
    std::vector<double> levels(f.values().begin(), f.values().end());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Component label per cell at the previous level, with its birth (minimum value).
    std::vector<long> prev_label(n, -1);
    std::vector<double> prev_birth;
    std::vector<std::pair<double, double>> pairs;

    for (double level : levels) {
        std::vector<long> label(n, -1);
        long next = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (f[i] > level) continue;
            label[i] = (i > 0 && label[i - 1] >= 0) ? label[i - 1] : next++;
        }
        // Old components contained in each new one.
        std::vector<std::vector<long>> contained(static_cast<std::size_t>(next));
        for (std::size_t i = 0; i < n; ++i) {
            if (prev_label[i] < 0) continue;
            auto& c = contained[static_cast<std::size_t>(label[i])];
            if (std::find(c.begin(), c.end(), prev_label[i]) == c.end()) c.push_back(prev_label[i]);
        }
        std::vector<double> birth(static_cast<std::size_t>(next), level);
        for (std::size_t k = 0; k < contained.size(); ++k) {
            auto& c = contained[k];
            if (c.empty()) continue;
            std::sort(c.begin(), c.end(), [&](long a, long b) { return prev_birth[a] < prev_birth[b]; });
            birth[k] = prev_birth[c.front()];
            for (std::size_t j = 1; j < c.size(); ++j) pairs.emplace_back(prev_birth[c[j]], level);
        }
        prev_label = std::move(label);
        prev_birth = std::move(birth);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

/// min over nondecreasing h on a grid of max |x - h|, by exhaustive search.
inline double brute_monotone_fit(const std::vector<double>& x, const std::vector<double>& grid) {
    double best = INFINITY;
    std::vector<std::size_t> idx(x.size(), 0);
    while (true) {
        bool ok = true;
        double err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i > 0 && grid[idx[i]] < grid[idx[i - 1]]) ok = false;
            err = std::max(err, std::abs(x[i] - grid[idx[i]]));
        }
        if (ok) best = std::min(best, err);
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == grid.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return best;
}

}  // namespace modehunt::oracle
