#include "modehunt/persistence1d.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "modehunt/stats.hpp"

namespace modehunt {
namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void attach(std::size_t child_root, std::size_t parent_root) { parent_[child_root] = parent_root; }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<PersistencePair> persistence_pairs(const StepSignal& f) {
    const auto runs = coalesce_runs(f);
    const std::size_t m = runs.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return runs[a].value < runs[b].value || (runs[a].value == runs[b].value && a < b);
    });

    DisjointSets sets(m);
    std::vector<bool> active(m, false);
    // Birth value and birth position of the component rooted at each index.
    std::vector<double> birth(m);
    std::vector<std::size_t> born_at(m);
    std::vector<PersistencePair> pairs;

    for (std::size_t r : order) {
        active[r] = true;
        birth[r] = runs[r].value;
        born_at[r] = r;
        const bool left = r > 0 && active[r - 1];
        const bool right = r + 1 < m && active[r + 1];
        if (left && right) {
            std::size_t a = sets.find(r - 1);
            std::size_t b = sets.find(r + 1);
            // Elder rule: the component with the later (higher, then rightmost) birth dies.
            const auto younger = [&](std::size_t x, std::size_t y) {
                return birth[x] > birth[y] || (birth[x] == birth[y] && born_at[x] > born_at[y]);
            };
            if (younger(a, b)) std::swap(a, b);
            pairs.push_back({birth[b], runs[r].value});
            sets.attach(b, a);
            sets.attach(r, a);
        } else if (left) {
            sets.attach(r, sets.find(r - 1));
        } else if (right) {
            sets.attach(r, sets.find(r + 1));
        }
    }
    return pairs;
}

std::vector<double> persistence_sequence(const StepSignal& f) {
    std::vector<double> out;
    for (const auto& p : persistence_pairs(f)) out.push_back(p.persistence());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

SignatureSequence persistence_signatures(const StepSignal& f) {
    auto values = persistence_sequence(f);
    for (double& v : values) v *= 0.5;
    return SignatureSequence(std::move(values));
}

std::size_t sup_mode_estimate(const SignatureSequence& sup_signatures, double q) {
    if (!(q > 0.0)) throw std::domain_error("sup_mode_estimate: threshold must be positive");
    return mode_estimate(sup_signatures, q);
}

std::size_t sup_mode_estimate(const StepSignal& f, double q) {
    return sup_mode_estimate(persistence_signatures(f), q);
}

}  // namespace modehunt
