#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "modehunt/signal.hpp"
#include "support.hpp"

using namespace modehunt;

TEST(StepSignal, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(StepSignal({}), std::invalid_argument);
    EXPECT_THROW(StepSignal({1.0, std::nan("")}), std::invalid_argument);
    EXPECT_THROW(StepSignal({std::numeric_limits<double>::infinity()}), std::invalid_argument);
    EXPECT_EQ(StepSignal({2.0}).size(), 1u);
}

TEST(SignatureSequence, IndexingConventions) {
    const SignatureSequence s({0.5, 0.2});
    EXPECT_TRUE(std::isinf(s.at(-1)));
    EXPECT_DOUBLE_EQ(s.at(0), 0.5);
    EXPECT_DOUBLE_EQ(s.at(1), 0.2);
    EXPECT_EQ(s.at(2), 0.0);
    EXPECT_EQ(s.at(100), 0.0);
    EXPECT_THROW(s.at(-2), std::domain_error);
    EXPECT_THROW(SignatureSequence({0.1, 0.2}), std::invalid_argument);
    EXPECT_THROW(SignatureSequence({0.1, 0.0}), std::invalid_argument);
}

TEST(Antiderivative, AnchoredAndLinear) {
    const auto F = antiderivative(StepSignal({1.0, 3.0}));
    ASSERT_EQ(F.F.size(), 3u);
    EXPECT_DOUBLE_EQ(F.F[0], 0.0);
    EXPECT_DOUBLE_EQ(F.F[1], 0.5);
    EXPECT_DOUBLE_EQ(F.F[2], 2.0);
    EXPECT_DOUBLE_EQ(F.at(0.25), 0.25);
    EXPECT_DOUBLE_EQ(F.at(0.75), 1.25);
}

TEST(PrefixSums, CompensatedAgainstCancellation) {
    std::vector<double> v{1e16, 1.0, -1e16, 1.0};
    const auto S = prefix_sums(v);
    EXPECT_EQ(S.back(), 2.0);
}

TEST(ModeCount, Examples) {
    EXPECT_EQ(mode_count(StepSignal({0, 1, 0})), 1u);
    EXPECT_EQ(mode_count(StepSignal({0, 2, 1, 3, 0})), 2u);
    EXPECT_EQ(mode_count(StepSignal({1, 1, 1})), 0u);
    EXPECT_EQ(mode_count(StepSignal({3, 1, 2})), 0u);       // boundary maxima are not modes
    EXPECT_EQ(mode_count(StepSignal({0, 2, 2, 2, 0})), 1u);  // plateau counted once
    EXPECT_EQ(mode_count(StepSignal({0, 2, 2, 3, 0})), 1u);
}

TEST(ModeCount, MatchesPartitionSupremumExhaustively) {
    // Every signal with n <= 6 cells and values in {0..3}; random ones up to n = 8.
    for (std::size_t n = 1; n <= 6; ++n) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= 4;
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<double> v(n);
            std::size_t c = code;
            for (auto& x : v) {
                x = static_cast<double>(c % 4);
                c /= 4;
            }
            const StepSignal f(v);
            ASSERT_EQ(mode_count(f), oracle::brute_mode_count(f));
        }
    }
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
        const auto f = oracle::random_integer_signal(rng, 7, 8, 3);
        ASSERT_EQ(mode_count(f), oracle::brute_mode_count(f));
    }
}

TEST(KolmogorovDistance, MatchesCommonGridExpansion) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto f = oracle::random_integer_signal(rng, 1, 9, 5);
        const auto g = oracle::random_integer_signal(rng, 1, 9, 5);
        EXPECT_NEAR(kolmogorov_distance(f, g), oracle::brute_kolmogorov_distance(f, g), 1e-12);
    }
}

TEST(KolmogorovDistance, MetricProperties) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const auto f = oracle::random_real_signal(rng, 1 + t % 7);
        const auto g = oracle::random_real_signal(rng, 1 + t % 5);
        const auto h = oracle::random_real_signal(rng, 1 + t % 3);
        EXPECT_EQ(kolmogorov_distance(f, f), 0.0);
        EXPECT_DOUBLE_EQ(kolmogorov_distance(f, g), kolmogorov_distance(g, f));
        EXPECT_LE(kolmogorov_distance(f, h), kolmogorov_distance(f, g) + kolmogorov_distance(g, h) + 1e-12);
        EXPECT_NEAR(kolmogorov_distance(f, refine(f, 3)), 0.0, 1e-15);
        // Kolmogorov distance never exceeds the sup distance on [0,1].
        EXPECT_LE(kolmogorov_distance(f, g), sup_distance(f, g) + 1e-12);
    }
}

TEST(SupDistance, UnionGrid) {
    EXPECT_DOUBLE_EQ(sup_distance(StepSignal({0, 1}), StepSignal({0, 0, 0, 3})), 2.0);
    EXPECT_DOUBLE_EQ(sup_distance(StepSignal({0, 1, 2}), StepSignal({0, 1})), 1.0);
}

TEST(Refine, KeepsShapeAndModes) {
    const StepSignal f({0, 2, 1, 3, 0});
    const auto g = refine(f, 4);
    EXPECT_EQ(g.size(), 20u);
    EXPECT_EQ(mode_count(g), mode_count(f));
    EXPECT_EQ(sup_distance(f, g), 0.0);
    EXPECT_THROW(refine(f, 0), std::invalid_argument);
}

TEST(CoalesceRuns, MergesEqualNeighbours) {
    const auto runs = coalesce_runs(StepSignal({1, 1, 2, 2, 2, 1}));
    ASSERT_EQ(runs.size(), 3u);
    EXPECT_EQ(runs[1].begin, 2u);
    EXPECT_EQ(runs[1].end, 5u);
    EXPECT_EQ(runs[1].value, 2.0);
}
