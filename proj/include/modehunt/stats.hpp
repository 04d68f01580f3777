#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "modehunt/signal.hpp"

namespace modehunt {

/// Bernstein-type moment condition E|e|^m <= v * m! * kappa^(m-2) / 2, m >= 2.
struct MomentModel {
    double kappa;
    double v;

    MomentModel(double kappa, double v);
};

struct GaussianModel {
    double sigma;

    explicit GaussianModel(double sigma);
    /// The moment-condition constants this family satisfies: kappa = sigma, v = sigma^2.
    MomentModel moments() const { return {sigma, sigma * sigma}; }
};

/// Two-sided bracket [lower, upper] for a mode count; no upper means +inf.
struct ModeCI {
    std::size_t lower;
    std::optional<std::size_t> upper;
};

struct Band {
    double lower;
    double upper;
};

/// Band j for every stored signature plus the shared band of the zero tail.
struct ConfidenceBand {
    std::vector<Band> bands;
    Band tail;
};

struct GevlConstants {
    double a;
    double b;
};

/// P(max_j |s_j(Y) - s_j(f)| >= delta) <= 2 exp(-delta^2 n / (2v + 2 kappa delta)), clamped to [0,1].
double deviation_bound(double delta, std::size_t n, const MomentModel& model);

/// Universal signature threshold at level alpha; inverts deviation_bound.
double tau(std::size_t n, double alpha, const MomentModel& model);

/// Sharper threshold for Gaussian noise of known sigma.
double tau_gauss(std::size_t n, double alpha, const GaussianModel& model);

ConfidenceBand confidence_band(const SignatureSequence& s, double tau);

/// k_eps = max{j >= 0 : s_{j-1} >= eps}.
std::size_t mode_estimate(const SignatureSequence& s, double epsilon);

/// Confidence interval for k_eps(f) given signatures of the data and a threshold tau.
ModeCI mode_ci(const SignatureSequence& s, double epsilon, double tau);
ModeCI mode_ci(const SignatureSequence& s, double alpha, double epsilon, std::size_t n, const MomentModel& model);

/// Lower bound on P(k_{eps/2}(Y) = k) when s_{k-1}(f) >= eps.
double detection_bound(double epsilon, std::size_t n, const MomentModel& model);

/// d_K(f, f^(n)) bound for a C-Hoelder f of exponent gamma.
double holder_bound(double C, double gamma, std::size_t n);

/// Gumbel normalising constants for maxima of n standard normals.
GevlConstants gevl_constants(std::size_t n);

/// min over nondecreasing h of max_i |x_i - h_i|, i.e. half the largest descent.
double monotone_sup_fit(std::span<const double> x);

/// Unbiased sample variance. A plain plug-in for sigma^2 when it is unknown.
double sample_variance(std::span<const double> x);

}  // namespace modehunt
