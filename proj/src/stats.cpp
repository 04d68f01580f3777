#include "modehunt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace modehunt {
namespace {

void require_level(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
}

void require_cells(std::size_t n) {
    if (n == 0) throw std::domain_error("n must be positive");
}

}  // namespace

MomentModel::MomentModel(double kappa_, double v_) : kappa(kappa_), v(v_) {
    if (!(kappa > 0.0) || !(v > 0.0)) throw std::domain_error("MomentModel: kappa and v must be positive");
}

GaussianModel::GaussianModel(double sigma_) : sigma(sigma_) {
    if (!(sigma > 0.0)) throw std::domain_error("GaussianModel: sigma must be positive");
}

double deviation_bound(double delta, std::size_t n, const MomentModel& model) {
    if (!(delta > 0.0)) throw std::domain_error("deviation_bound: delta must be positive");
    require_cells(n);
    if (std::isinf(delta)) return 0.0;
    const double nn = static_cast<double>(n);
    const double p = 2.0 * std::exp(-delta * delta * nn / (2.0 * model.v + 2.0 * model.kappa * delta));
    return std::clamp(p, 0.0, 1.0);
}

double tau(std::size_t n, double alpha, const MomentModel& model) {
    require_level(alpha);
    require_cells(n);
    const double L = std::log(alpha / 2.0);
    const double nn = static_cast<double>(n);
    const double k = model.kappa;
    return (std::sqrt(L * (L * k * k - 2.0 * nn * model.v)) - k * L) / nn;
}

double tau_gauss(std::size_t n, double alpha, const GaussianModel& model) {
    require_level(alpha);
    require_cells(n);
    const double s2 = model.sigma * model.sigma;
    return std::sqrt(-2.0 * s2 / static_cast<double>(n) * std::log(alpha / 2.0));
}

ConfidenceBand confidence_band(const SignatureSequence& s, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("confidence_band: tau must be positive");
    ConfidenceBand out;
    out.bands.reserve(s.size());
    for (double v : s.positives()) out.bands.push_back({std::max(0.0, v - tau), v + tau});
    out.tail = {0.0, tau};
    return out;
}

std::size_t mode_estimate(const SignatureSequence& s, double epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("mode_estimate: epsilon must be positive");
    const auto& p = s.positives();
    // Non-increasing, so the admissible j are exactly 0..#{s_j >= eps}.
    return static_cast<std::size_t>(
        std::upper_bound(p.begin(), p.end(), epsilon, [](double eps, double v) { return v < eps; }) - p.begin());
}

ModeCI mode_ci(const SignatureSequence& s, double epsilon, double tau) {
    if (!(epsilon > 0.0)) throw std::domain_error("mode_ci: epsilon must be positive");
    if (!(tau > 0.0)) throw std::domain_error("mode_ci: tau must be positive");
    const auto& p = s.positives();
    ModeCI ci{0, std::nullopt};
    if (epsilon < s.at(0) - tau) {
        const auto above = std::count_if(p.begin(), p.end(), [&](double v) { return v > epsilon + tau; });
        ci.lower = static_cast<std::size_t>(above) - 1;
    }
    if (epsilon > tau) {
        std::size_t j = 0;
        while (j < p.size() && !(p[j] < epsilon - tau)) ++j;
        ci.upper = j;
    }
    return ci;
}

ModeCI mode_ci(const SignatureSequence& s, double alpha, double epsilon, std::size_t n, const MomentModel& model) {
    return mode_ci(s, epsilon, tau(n, alpha, model));
}

double detection_bound(double epsilon, std::size_t n, const MomentModel& model) {
    if (!(epsilon > 0.0)) throw std::domain_error("detection_bound: epsilon must be positive");
    require_cells(n);
    if (std::isinf(epsilon)) return 1.0;
    const double nn = static_cast<double>(n);
    const double p = 1.0 - 2.0 * std::exp(-epsilon * epsilon * nn / (8.0 * model.v + 4.0 * model.kappa * epsilon));
    return std::clamp(p, 0.0, 1.0);
}

double holder_bound(double C, double gamma, std::size_t n) {
    if (!(C > 0.0) || !(gamma > 0.0)) throw std::domain_error("holder_bound: C and gamma must be positive");
    require_cells(n);
    return C / (gamma + 1.0) * std::pow(static_cast<double>(n), -gamma);
}

GevlConstants gevl_constants(std::size_t n) {
    if (n < 2) throw std::domain_error("gevl_constants: n must be at least 2");
    const double root = std::sqrt(2.0 * std::log(static_cast<double>(n)));
    const double shift = 0.5 * std::log(std::log(static_cast<double>(n))) + std::log(2.0 * std::sqrt(std::numbers::pi));
    return {root - shift / root, 1.0 / root};
}

double monotone_sup_fit(std::span<const double> x) {
    if (x.empty()) throw std::domain_error("monotone_sup_fit: empty input");
    double running_max = x[0];
    double descent = 0.0;
    for (double v : x) {
        running_max = std::max(running_max, v);
        descent = std::max(descent, running_max - v);
    }
    return 0.5 * descent;
}

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) throw std::domain_error("sample_variance: need at least two values");
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double v : x) {
        ++k;
        const double d = v - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (v - mean);
    }
    return m2 / static_cast<double>(k - 1);
}

}  // namespace modehunt
