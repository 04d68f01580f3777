#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace modehunt {

/// Piecewise-constant function on the equipartition of [0,1] into n cells;
/// value i holds on [i/n, (i+1)/n). Values are finite and n >= 1.
class StepSignal {
public:
    explicit StepSignal(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

/// Antiderivative sampled at the breakpoints i/n, anchored at F(0) = 0.
/// Between breakpoints it is linear.
struct Antiderivative {
    std::vector<double> F;

    std::size_t cells() const noexcept { return F.size() - 1; }
    /// Value at an arbitrary t in [0,1].
    double at(double t) const;
};

/// Descending sequence of strictly positive signatures s_0 >= s_1 >= ...,
/// implicitly followed by zeros, with s_{-1} = +inf.
class SignatureSequence {
public:
    SignatureSequence() = default;
    explicit SignatureSequence(std::vector<double> positives);

    /// s_k for k >= -1.
    double at(long k) const;
    std::size_t size() const noexcept { return positives_.size(); }
    bool empty() const noexcept { return positives_.empty(); }
    const std::vector<double>& positives() const noexcept { return positives_; }

private:
    std::vector<double> positives_;
};

/// Maximal run of equal adjacent values, as half-open cell range [begin, end).
struct Run {
    std::size_t begin;
    std::size_t end;
    double value;
};

std::vector<Run> coalesce_runs(const StepSignal& f);

/// Exact (Neumaier-compensated) cumulative sums of values[i] / n.
Antiderivative antiderivative(const StepSignal& f);

/// Compensated prefix sums of the raw values: S[0] = 0, S[i+1] = S[i] + values[i].
std::vector<double> prefix_sums(std::span<const double> values);

/// sup |F - G| over [0,1]. Grids may differ; evaluated on the union grid.
double kolmogorov_distance(const StepSignal& f, const StepSignal& g);

/// sup |f - g| over the cells of the union grid.
double sup_distance(const StepSignal& f, const StepSignal& g);

/// Number of inner strict local maxima, counting each plateau once.
std::size_t mode_count(const StepSignal& f);

/// Each cell split into `factor` equal cells carrying the same value.
StepSignal refine(const StepSignal& f, std::size_t factor);

}  // namespace modehunt
