#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "modehunt/tautstring.hpp"
#include "support.hpp"

using namespace modehunt;

namespace {

double polygon_length(const std::vector<double>& F) {
    const double h = 1.0 / static_cast<double>(F.size() - 1);
    double len = 0.0;
    for (std::size_t i = 1; i < F.size(); ++i) len += std::hypot(h, F[i] - F[i - 1]);
    return len;
}

}  // namespace

TEST(TautString, ZeroRadiusIsTheData) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const auto f = oracle::random_integer_signal(rng, 1, 12, 5);
        const auto d = taut_derivative(f, 0.0);
        for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(d[i], f[i], 1e-12);
    }
}

TEST(TautString, SmallExample) {
    const StepSignal f({0, 1, 0});
    const auto d = taut_derivative(f, 1.0 / 18.0);
    EXPECT_NEAR(d[0], 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(d[1], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(d[2], 1.0 / 6.0, 1e-12);

    const auto flat = taut_derivative(f, 10.0);
    for (double v : flat.values()) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
    const auto chord = taut_string(f, 10.0);
    EXPECT_EQ(chord.knots.size(), 2u);
}

TEST(TautString, RejectsNegativeRadius) { EXPECT_THROW(taut_string(StepSignal({1.0}), -1e-3), std::domain_error); }

TEST(TautString, StaysInTubeAndTouchesAtKinks) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
        const auto f = oracle::random_integer_signal(rng, 1, 15, 5);
        const double alpha = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
        const auto F = antiderivative(f);
        const auto ts = taut_string(f, alpha);
        const std::size_t n = f.size();

        ASSERT_EQ(ts.knots.front(), 0u);
        ASSERT_EQ(ts.knots.back(), n);
        EXPECT_NEAR(ts.values.front(), 0.0, 1e-12);
        EXPECT_NEAR(ts.values.back(), F.F.back(), 1e-12);
        for (std::size_t i = 0; i <= n; ++i) {
            EXPECT_LE(std::abs(ts.at_breakpoint(i) - F.F[i]), alpha + 1e-12);
        }
        // The string bends down around the upper boundary and up around the lower one.
        for (std::size_t k = 1; k + 1 < ts.knots.size(); ++k) {
            const double h0 = static_cast<double>(ts.knots[k] - ts.knots[k - 1]);
            const double h1 = static_cast<double>(ts.knots[k + 1] - ts.knots[k]);
            const double left = (ts.values[k] - ts.values[k - 1]) / h0;
            const double right = (ts.values[k + 1] - ts.values[k]) / h1;
            const double gap = ts.values[k] - F.F[ts.knots[k]];
            if (right > left + 1e-12) EXPECT_NEAR(gap, alpha, 1e-9);
            if (right < left - 1e-12) EXPECT_NEAR(gap, -alpha, 1e-9);
        }
    }
}

TEST(TautString, NoLongerThanAnyFeasiblePath) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const auto f = oracle::random_integer_signal(rng, 2, 10, 5);
        const double alpha = 0.3 * std::abs(unit(rng));
        const auto F = antiderivative(f);
        const double taut = taut_string(f, alpha).length();
        EXPECT_LE(taut, polygon_length(F.F) + 1e-12);
        for (int r = 0; r < 20; ++r) {
            std::vector<double> G(F.F);
            for (std::size_t i = 1; i + 1 < G.size(); ++i) G[i] += alpha * unit(rng);
            EXPECT_LE(taut, polygon_length(G) + 1e-12);
        }
    }
}

TEST(TautString, ModesNonIncreasingInRadius) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto f = oracle::random_integer_signal(rng, 3, 14, 5);
        EXPECT_EQ(min_modes_in_ball(f, 0.0), mode_count(f));
        std::size_t previous = mode_count(f);
        for (double alpha = 0.01; alpha < 1.0; alpha += 0.03) {
            const std::size_t m = min_modes_in_ball(f, alpha);
            EXPECT_LE(m, previous);
            previous = m;
        }
        EXPECT_EQ(previous, 0u);
    }
}

TEST(SignatureOracle, SmallExamples) {
    EXPECT_NEAR(signature_oracle(StepSignal({0, 1, 0}), 0), 1.0 / 9.0, 1e-9);
    const StepSignal g({0, 2, 1, 3, 0});
    EXPECT_NEAR(signature_oracle(g, 0), 0.24, 1e-9);
    EXPECT_NEAR(signature_oracle(g, 1), 0.05, 1e-9);
    EXPECT_EQ(signature_oracle(g, 2), 0.0);
}
