#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modehunt/signal.hpp"
#include "modehunt/stats.hpp"

namespace modehunt {

// ---------------------------------------------------------------------------
// Test signals

enum class SignalKind { Blocks, Bumps, Spike, Plateau, Custom };

struct TestSignal {
    SignalKind kind = SignalKind::Blocks;
    double spike_excess = 0.0;        ///< Spike height is (1 + spike_excess) sqrt(2 log n)
    std::size_t spike_cell = 0;
    double plateau_height = 0.0;      ///< Plateau value on [1/3, 2/3)
    std::vector<double> custom;

    static TestSignal blocks() { return {}; }
    static TestSignal bumps() { return {SignalKind::Bumps, 0.0, 0, 0.0, {}}; }
    static TestSignal spike(double excess, std::size_t cell) { return {SignalKind::Spike, excess, cell, 0.0, {}}; }
    static TestSignal plateau(double height) { return {SignalKind::Plateau, 0.0, 0, height, {}}; }
    static TestSignal from_values(std::vector<double> v) { return {SignalKind::Custom, 0.0, 0, 0.0, std::move(v)}; }
};

/// Samples the signal at t_i = i/n. Blocks and Bumps follow the Donoho-Johnstone definitions.
StepSignal generate_signal(const TestSignal& kind, std::size_t n);

// ---------------------------------------------------------------------------
// Noise

enum class NoiseFamily { Gaussian, Laplace, CenteredPoisson, Uniform };

/// Noise family with its scale parameter (sigma, Laplace scale, Poisson
/// intensity, or uniform half-width) and the 64-bit seed keying all draws.
struct NoiseKind {
    NoiseFamily family = NoiseFamily::Gaussian;
    double param = 1.0;
    std::uint64_t seed = 0;

    static NoiseKind gaussian(double sigma, std::uint64_t seed) { return {NoiseFamily::Gaussian, sigma, seed}; }
    static NoiseKind laplace(double scale, std::uint64_t seed) { return {NoiseFamily::Laplace, scale, seed}; }
    static NoiseKind poisson(double lambda, std::uint64_t seed) { return {NoiseFamily::CenteredPoisson, lambda, seed}; }
    static NoiseKind uniform(double half_width, std::uint64_t seed) { return {NoiseFamily::Uniform, half_width, seed}; }

    /// Documented (kappa, v) for which the family satisfies the moment condition.
    MomentModel moments() const;
    /// Signature threshold at level alpha for n cells: the Gaussian refinement
    /// for Gaussian noise, the Bernstein threshold otherwise.
    double threshold(std::size_t n, double alpha) const;
};

std::string to_string(NoiseFamily family);

/// Uniform draw in (0,1) keyed by (seed, replication, cell, stream); no state.
double counter_uniform(std::uint64_t seed, std::uint64_t replication, std::uint64_t cell, std::uint64_t stream);

/// Centered noise draw for one cell of one replication.
double noise_draw(const NoiseKind& noise, std::uint64_t replication, std::uint64_t cell);

/// Y_i = f(t_i) + e_i with one independent draw per cell.
StepSignal observe(const StepSignal& f, const NoiseKind& noise, std::uint64_t replication = 0);

struct MomentCheck {
    std::vector<double> sample_moments;   ///< index m - 2
    std::vector<double> standard_errors;  ///< index m - 2
    std::vector<double> bounds;           ///< index m - 2
    bool satisfied;
};

/// Compares sample moments E|e|^m, m = 2..max_order, against the family's
/// documented bound; satisfied when every sample moment is within bound + 3 SE.
MomentCheck check_moment_condition(const NoiseKind& noise, std::size_t draws, int max_order = 10);

// ---------------------------------------------------------------------------
// Experiments

/// s_{k-1}(Y) / s_k(Y). Throws std::domain_error when s_k(Y) = 0.
double delta_ratio(const SignatureSequence& s, std::size_t k);
double delta_ratio(const StepSignal& Y, std::size_t k);

/// One row of an experiment report. `se` holds Monte Carlo standard errors,
/// empty optional when reps == 1.
struct ReportRecord {
    std::string experiment;
    std::string label;
    std::size_t n = 0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> metrics;
    std::map<std::string, std::optional<double>> se;
    double wall_ms = 0.0;
    /// Per-replication values keyed by metric name, for CSV export.
    std::map<std::string, std::vector<double>> per_rep;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<ReportRecord> records;

    const ReportRecord& find(const std::string& label, std::size_t n) const;
};

struct Table1Config {
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::vector<std::size_t> sizes{256, 1024, 4096, 16384, 65536};
    bool blocks = true;
    bool bumps = true;
};

/// Mean Delta(Y) for blocks (sigma = sqrt(n)/16, k = 5) and bumps
/// (sigma = sqrt(n)/256, k = 11) under Gaussian noise.
ExperimentReport run_table1(const Table1Config& config);

/// Over- and underestimation frequencies of k_tau(Y) and band coverage.
/// The threshold defaults to noise.threshold(n, alpha); a noiseless run
/// (param = 0) needs an explicit one.
ExperimentReport run_error_control(const StepSignal& f, std::size_t k, const NoiseKind& noise, double alpha,
                                   std::size_t reps, std::uint64_t seed,
                                   std::optional<double> threshold = std::nullopt);

struct DetectionConfig {
    std::size_t reps = 500;
    std::uint64_t seed = 0;
    double alpha = 0.1;
    double spike_excess = 0.5;
    std::vector<std::size_t> spike_sizes{256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536};
    /// Plateau heights delta_n = plateau_scale * n^(-1/3).
    double plateau_scale = 8.0;
    std::vector<std::size_t> plateau_sizes{1024, 4096, 16384, 65536};
    /// Logarithmic grid for the best sup-norm threshold.
    double q_min = 1e-3;
    double q_max = 1e2;
    std::size_t q_points = 400;
};

/// Spike detection under Kolmogorov thresholding, and plateau detection by
/// Kolmogorov thresholding versus the best sup-norm threshold.
ExperimentReport run_detection_comparison(const DetectionConfig& config);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Worker count for replications: MODEHUNT_THREADS if set, else hardware concurrency.
std::size_t worker_count();

}  // namespace modehunt
