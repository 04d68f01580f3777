#include "modehunt/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace modehunt {

StepSignal::StepSignal(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("StepSignal: at least one cell is required");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("StepSignal: non-finite value at cell " + std::to_string(i));
        }
    }
}

double Antiderivative::at(double t) const {
    const std::size_t n = cells();
    if (t <= 0.0) return F.front();
    if (t >= 1.0) return F.back();
    const double x = t * static_cast<double>(n);
    const auto i = std::min(static_cast<std::size_t>(x), n - 1);
    const double frac = x - static_cast<double>(i);
    return F[i] + frac * (F[i + 1] - F[i]);
}

SignatureSequence::SignatureSequence(std::vector<double> positives) : positives_(std::move(positives)) {
    for (std::size_t i = 0; i < positives_.size(); ++i) {
        if (!(positives_[i] > 0.0)) {
            throw std::invalid_argument("SignatureSequence: entries must be strictly positive");
        }
        if (i > 0 && positives_[i] > positives_[i - 1]) {
            throw std::invalid_argument("SignatureSequence: entries must be non-increasing");
        }
    }
}

double SignatureSequence::at(long k) const {
    if (k < -1) throw std::domain_error("SignatureSequence::at: index must be >= -1");
    if (k == -1) return std::numeric_limits<double>::infinity();
    const auto idx = static_cast<std::size_t>(k);
    return idx < positives_.size() ? positives_[idx] : 0.0;
}

std::vector<Run> coalesce_runs(const StepSignal& f) {
    std::vector<Run> runs;
    const auto v = f.values();
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= v.size(); ++i) {
        if (i == v.size() || v[i] != v[begin]) {
            runs.push_back({begin, i, v[begin]});
            begin = i;
        }
    }
    return runs;
}

std::vector<double> prefix_sums(std::span<const double> values) {
    std::vector<double> S(values.size() + 1, 0.0);
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = values[i];
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        S[i + 1] = sum + comp;
    }
    return S;
}

Antiderivative antiderivative(const StepSignal& f) {
    Antiderivative A{prefix_sums(f.values())};
    const double n = static_cast<double>(f.size());
    for (double& x : A.F) x /= n;
    return A;
}

double kolmogorov_distance(const StepSignal& f, const StepSignal& g) {
    const Antiderivative F = antiderivative(f);
    const Antiderivative G = antiderivative(g);
    const std::uint64_t n = f.size();
    const std::uint64_t m = g.size();
    const double nm = static_cast<double>(n) * static_cast<double>(m);

    // Breakpoint i/n sits at position i*m on the common n*m scale; j/m at j*n.
    double best = 0.0;
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    while (i <= n || j <= m) {
        const std::uint64_t a = i <= n ? i * m : std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t b = j <= m ? j * n : std::numeric_limits<std::uint64_t>::max();
        double diff;
        if (a == b) {
            diff = F.F[i] - G.F[j];
            ++i;
            ++j;
        } else if (a < b) {
            const double offset = static_cast<double>(a - (j - 1) * n) / nm;
            diff = F.F[i] - (G.F[j - 1] + offset * g[j - 1]);
            ++i;
        } else {
            const double offset = static_cast<double>(b - (i - 1) * m) / nm;
            diff = (F.F[i - 1] + offset * f[i - 1]) - G.F[j];
            ++j;
        }
        best = std::max(best, std::abs(diff));
    }
    return best;
}

double sup_distance(const StepSignal& f, const StepSignal& g) {
    const std::uint64_t n = f.size();
    const std::uint64_t m = g.size();
    double best = 0.0;
    std::uint64_t i = 0;
    std::uint64_t j = 0;
    while (i < n && j < m) {
        best = std::max(best, std::abs(f[i] - g[j]));
        const std::uint64_t ei = (i + 1) * m;
        const std::uint64_t ej = (j + 1) * n;
        if (ei == ej) {
            ++i;
            ++j;
        } else if (ei < ej) {
            ++i;
        } else {
            ++j;
        }
    }
    return best;
}

std::size_t mode_count(const StepSignal& f) {
    const auto runs = coalesce_runs(f);
    std::size_t count = 0;
    for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
        if (runs[r].value > runs[r - 1].value && runs[r].value > runs[r + 1].value) ++count;
    }
    return count;
}

StepSignal refine(const StepSignal& f, std::size_t factor) {
    if (factor == 0) throw std::invalid_argument("refine: factor must be positive");
    std::vector<double> out;
    out.reserve(f.size() * factor);
    for (double v : f.values()) out.insert(out.end(), factor, v);
    return StepSignal(std::move(out));
}

}  // namespace modehunt
