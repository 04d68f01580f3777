#include "modehunt/kolmsig.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace modehunt {

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::Regular: return "regular";
        case Classification::Maximal: return "maximal";
        case Classification::Minimal: return "minimal";
        case Classification::BoundaryLeft: return "boundary-left";
        case Classification::BoundaryRight: return "boundary-right";
        case Classification::Global: return "global";
    }
    return "unknown";
}

Classification classify(double value, std::optional<double> left, std::optional<double> right) {
    if (!left && !right) return Classification::Global;
    if (!left) return Classification::BoundaryLeft;
    if (!right) return Classification::BoundaryRight;
    if (value > *left && value > *right) return Classification::Maximal;
    if (value < *left && value < *right) return Classification::Minimal;
    return Classification::Regular;
}

double merge_value(const IntervalNode& left, const IntervalNode& right) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const Classification a = left.kind;
    const Classification b = right.kind;
    if (a == Classification::Global || b == Classification::Global) return inf;

    const double cross = std::abs(left.length * right.mass - right.length * left.mass);
    const auto regular_gap = [](const IntervalNode& moving, const IntervalNode& fixed) {
        return std::abs(moving.mass - moving.length / fixed.length * fixed.mass);
    };

    if (is_critical(a) && is_critical(b)) return cross / (2.0 * (left.length + right.length));
    if (is_critical(a) && b == Classification::Regular) return 0.5 * regular_gap(left, right);
    if (a == Classification::Regular && is_critical(b)) return 0.5 * regular_gap(right, left);
    if (is_critical(a) && is_boundary(b)) return cross / (left.length + 2.0 * right.length);
    if (is_boundary(a) && is_critical(b)) return cross / (2.0 * left.length + right.length);
    if (is_boundary(a) && b == Classification::Regular) return regular_gap(left, right);
    if (a == Classification::Regular && is_boundary(b)) return regular_gap(right, left);
    if (is_boundary(a) && is_boundary(b)) return cross / (left.length + right.length);
    return inf;
}

namespace {

using Index = std::uint32_t;
constexpr Index none = std::numeric_limits<Index>::max();

// Monotone radix heap over the bit patterns of non-negative doubles, which
// order like the doubles themselves. Entries are bucketed by the highest
// byte where they differ from the last popped key, so each entry moves at
// most eight times and buckets are scanned sequentially.
struct Entry {
    std::uint64_t key;
    Index owner;    ///< left node of the adjacent pair
    Index version;  ///< owner tag when the entry was made
};

class RadixHeap {
public:
    bool empty() const { return size_ == 0; }

    static std::uint64_t key_of(double alpha) { return std::bit_cast<std::uint64_t>(alpha + 0.0); }

    // Keys below the last popped key are raised to it.
    void push(Entry e) {
        e.key = std::max(e.key, last_);
        insert(e);
        ++size_;
    }

    Entry pop() {
        if (buckets_[0].empty()) {
            const std::size_t i = first_occupied();
            auto& from = buckets_[i];
            last_ = std::min_element(from.begin(), from.end(), [](const Entry& x, const Entry& y) {
                        return x.key < y.key;
                    })->key;
            for (const Entry& e : from) insert(e);
            from.clear();
            occupied_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
        }
        const Entry e = buckets_[0].back();
        buckets_[0].pop_back();
        --size_;
        return e;
    }

    static double value(const Entry& e) { return std::bit_cast<double>(e.key); }

private:
    static constexpr std::size_t kBuckets = 1 + 8 * 256;

    void insert(const Entry& e) {
        std::size_t i = 0;
        if (e.key != last_) {
            const auto byte = static_cast<std::size_t>(63 - std::countl_zero(e.key ^ last_)) / 8;
            i = 1 + byte * 256 + static_cast<std::size_t>((e.key >> (8 * byte)) & 0xff);
        }
        buckets_[i].push_back(e);
        occupied_[i / 64] |= std::uint64_t{1} << (i % 64);
    }

    std::size_t first_occupied() const {
        // Bucket 0 is empty here, so its bit is ignored.
        for (std::size_t w = 0; w < occupied_.size(); ++w) {
            std::uint64_t bits = occupied_[w];
            if (w == 0) bits &= ~std::uint64_t{1};
            if (bits != 0) return 64 * w + static_cast<std::size_t>(std::countr_zero(bits));
        }
        throw std::logic_error("RadixHeap: pop from empty heap");
    }

    std::array<std::vector<Entry>, kBuckets> buckets_;
    std::array<std::uint64_t, (kBuckets + 63) / 64> occupied_{};
    std::uint64_t last_ = 0;
    std::size_t size_ = 0;
};

// 24 bytes. `tag` packs the direction of the jump at `end` in bit 0 above a
// version counter that advances by 2 whenever the owned pair changes.
struct Node {
    double sum_end;  ///< raw prefix sum up to `end`
    Index end;
    Index prev;
    Index next;
    Index tag;

    bool rises_after() const { return (tag & 1u) != 0; }
};

// Constant intervals of f_alpha as a doubly linked list. The direction of each
// discontinuity is fixed until it is removed, so a node's classification only
// changes when it absorbs a neighbour.
class Sweep {
public:
    explicit Sweep(const StepSignal& f) : n_(static_cast<double>(f.size())) {
        if (f.size() >= none) throw std::length_error("kolmogorov_signatures: signal too long");
        const auto v = f.values();
        const auto S = prefix_sums(v);
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i + 1;
            while (j < v.size() && v[j] == v[i]) ++j;
            const auto id = static_cast<Index>(nodes_.size());
            nodes_.push_back({S[j], static_cast<Index>(j), id == 0 ? none : id - 1, none,
                              static_cast<Index>(j < v.size() && v[j] > v[i])});
            if (id > 0) nodes_[id - 1].next = id;
            i = j;
        }
        const std::size_t m = nodes_.size();
        for (std::size_t i = 0; i < m; ++i) {
            if (kind(static_cast<Index>(i)) == Classification::Maximal) ++maxima_;
        }
        for (std::size_t i = 0; i + 1 < m; ++i) refresh(static_cast<Index>(i));
    }

    template <typename OnEvent>
    void run(OnEvent&& on_event) {
        while (true) {
            fill_ahead();
            if (ahead_.empty()) break;
            const Entry c = ahead_.front();
            ahead_.pop_front();
            prefetch_around(kPrefetchNeighbours, 1);
            prefetch_around(kPrefetchOuter, 2);
            const Index left = c.owner;
            if (nodes_[left].tag != c.version) continue;
            current_ = c.key;
            const Index right = nodes_[left].next;
            const Index breakpoint = nodes_[left].end;
            const double current = RadixHeap::value(c);
            const Classification a = kind(left);
            const Classification b = kind(right);
            const bool emits = (a == Classification::Maximal && (b == Classification::Minimal || is_boundary(b))) ||
                               (b == Classification::Maximal && (a == Classification::Minimal || is_boundary(a)));
            if (a == Classification::Maximal) --maxima_;
            if (b == Classification::Maximal) --maxima_;
            splice(left, right);
            if (kind(left) == Classification::Maximal) ++maxima_;
            on_event(MergeEvent{current, breakpoint, a, b, emits, maxima_});
            if (nodes_[left].prev != none) refresh(nodes_[left].prev);
            if (nodes_[left].next != none) refresh(left);
        }
    }

private:
    Classification kind(Index i) const {
        const Node& x = nodes_[i];
        if (x.prev == none && x.next == none) return Classification::Global;
        if (x.prev == none) return Classification::BoundaryLeft;
        if (x.next == none) return Classification::BoundaryRight;
        const bool rises_into = nodes_[x.prev].rises_after();
        if (rises_into && !x.rises_after()) return Classification::Maximal;
        if (!rises_into && x.rises_after()) return Classification::Minimal;
        return Classification::Regular;
    }

    IntervalNode node(Index i) const {
        const Node& x = nodes_[i];
        const Index begin = x.prev == none ? 0 : nodes_[x.prev].end;
        const double sum_begin = x.prev == none ? 0.0 : nodes_[x.prev].sum_end;
        return {static_cast<double>(x.end - begin), x.sum_end - sum_begin, kind(i)};
    }

    // Re-evaluates the pair (left, next[left]); pairs that never merge leave the heap.
    void refresh(Index left) {
        const Index right = nodes_[left].next;
        // Lengths in cells and masses as raw sums; rescale to the [0,1] grid.
        const double alpha = merge_value(node(left), node(right)) / n_;
        const Index version = nodes_[left].tag += 2;
        if (!std::isfinite(alpha)) return;
        const Entry e{std::max(RadixHeap::key_of(alpha), current_), left, version};
        if (!ahead_.empty() && e.key < ahead_.back().key) {
            const auto at = std::upper_bound(ahead_.begin(), ahead_.end(), e,
                                             [](const Entry& x, const Entry& y) { return x.key < y.key; });
            ahead_.insert(at, e);
        } else {
            queue_.push(e);
        }
    }

    // Touches the nodes `reach` links away from a staged owner; the nearer
    // links were prefetched on an earlier iteration.
    void prefetch_around(std::size_t slot, int reach) const {
        if (ahead_.size() <= slot) return;
        Index prev = ahead_[slot].owner;
        Index next = prev;
        for (int r = 0; r < reach; ++r) {
            if (prev != none) prev = nodes_[prev].prev;
            if (next != none) next = nodes_[next].next;
        }
        if (prev != none) __builtin_prefetch(&nodes_[prev]);
        if (next != none) __builtin_prefetch(&nodes_[next]);
    }

    // Merges happen in alpha order, which is spatially random, so upcoming
    // pops are staged in a short sorted buffer and their nodes prefetched.
    // Every staged entry is no larger than any entry left in the heap.
    void fill_ahead() {
        while (ahead_.size() < kLookahead && !queue_.empty()) {
            const Entry e = queue_.pop();
            __builtin_prefetch(&nodes_[e.owner]);
            ahead_.push_back(e);
        }
    }

    void splice(Index left, Index right) {
        Node& l = nodes_[left];
        Node& r = nodes_[right];
        l.sum_end = r.sum_end;
        l.end = r.end;
        l.next = r.next;
        if (r.next != none) nodes_[r.next].prev = left;
        l.tag = (l.tag & ~1u) | (r.tag & 1u);
        r.tag += 2;
    }

    double n_;
    std::vector<Node> nodes_;
    std::size_t maxima_ = 0;
    RadixHeap queue_;
    std::deque<Entry> ahead_;
    std::uint64_t current_ = 0;

    static constexpr std::size_t kLookahead = 24;
    static constexpr std::size_t kPrefetchNeighbours = 12;
    static constexpr std::size_t kPrefetchOuter = 4;
};

}  // namespace

SignatureSequence kolmogorov_signatures(const StepSignal& f) {
    if (f.size() == 1) return {};
    std::vector<double> emitted;
    Sweep(f).run([&](const MergeEvent& e) {
        if (e.emitted) emitted.push_back(e.alpha);
    });
    std::reverse(emitted.begin(), emitted.end());
    return SignatureSequence(std::move(emitted));
}

std::vector<MergeEvent> merge_trace(const StepSignal& f) {
    std::vector<MergeEvent> events;
    Sweep(f).run([&](const MergeEvent& e) { events.push_back(e); });
    return events;
}

}  // namespace modehunt
