#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "modehunt/kolmsig.hpp"
#include "modehunt/tautstring.hpp"
#include "support.hpp"

using namespace modehunt;

namespace {

void expect_same_signatures(const SignatureSequence& a, const SignatureSequence& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a.at(static_cast<long>(k)), b.at(static_cast<long>(k)), tol);
}

StepSignal transformed(const StepSignal& f, double scale, double shift, bool reverse) {
    std::vector<double> v(f.values().begin(), f.values().end());
    for (double& x : v) x = scale * x + shift;
    if (reverse) std::reverse(v.begin(), v.end());
    return StepSignal(std::move(v));
}

}  // namespace

TEST(Classify, AllShapes) {
    EXPECT_EQ(classify(1, std::nullopt, std::nullopt), Classification::Global);
    EXPECT_EQ(classify(1, std::nullopt, 0.0), Classification::BoundaryLeft);
    EXPECT_EQ(classify(1, 0.0, std::nullopt), Classification::BoundaryRight);
    EXPECT_EQ(classify(2, 1.0, 0.0), Classification::Maximal);
    EXPECT_EQ(classify(0, 1.0, 2.0), Classification::Minimal);
    EXPECT_EQ(classify(1, 0.0, 2.0), Classification::Regular);
    EXPECT_EQ(to_string(Classification::Maximal), "maximal");
}

TEST(MergeValue, BoundaryAgainstMaximum) {
    // Pieces of [0,1,0] in cell units: lengths 1, masses 0 and 1.
    const IntervalNode edge{1.0, 0.0, Classification::BoundaryLeft};
    const IntervalNode peak{1.0, 1.0, Classification::Maximal};
    EXPECT_NEAR(merge_value(edge, peak), 1.0 / 3.0, 1e-15);
    const IntervalNode right_edge{1.0, 0.0, Classification::BoundaryRight};
    EXPECT_NEAR(merge_value(peak, right_edge), 1.0 / 3.0, 1e-15);
}

TEST(MergeValue, CriticalPairsAndRegularGaps) {
    const IntervalNode top{2.0, 6.0, Classification::Maximal};
    const IntervalNode bottom{1.0, 1.0, Classification::Minimal};
    // |2*1 - 1*6| / (2 * 3)
    EXPECT_NEAR(merge_value(top, bottom), 4.0 / 6.0, 1e-15);
    EXPECT_NEAR(merge_value(bottom, top), 4.0 / 6.0, 1e-15);

    const IntervalNode ramp{4.0, 8.0, Classification::Regular};
    // The critical interval levels to the regular value 2: half its excess mass.
    EXPECT_NEAR(merge_value(top, ramp), 0.5 * std::abs(6.0 - 2.0 * 2.0), 1e-15);
    EXPECT_NEAR(merge_value(ramp, top), 0.5 * std::abs(6.0 - 2.0 * 2.0), 1e-15);

    const IntervalNode edge{1.0, 5.0, Classification::BoundaryLeft};
    EXPECT_NEAR(merge_value(edge, ramp), 3.0, 1e-15);
    const IntervalNode far_edge{3.0, 3.0, Classification::BoundaryRight};
    // |1*3 - 3*5| / (1 + 3)
    EXPECT_NEAR(merge_value(edge, far_edge), 3.0, 1e-15);
}

TEST(MergeValue, InertPairsNeverMerge) {
    const IntervalNode a{1.0, 1.0, Classification::Regular};
    const IntervalNode b{2.0, 5.0, Classification::Regular};
    const IntervalNode g{1.0, 1.0, Classification::Global};
    EXPECT_TRUE(std::isinf(merge_value(a, b)));
    EXPECT_TRUE(std::isinf(merge_value(g, a)));
}

TEST(MergeValue, ScalesLikeMass) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    const Classification kinds[] = {Classification::Regular, Classification::Maximal, Classification::Minimal,
                                    Classification::BoundaryLeft, Classification::BoundaryRight};
    for (auto a : kinds) {
        for (auto b : kinds) {
            const IntervalNode l{u(rng), u(rng), a};
            const IntervalNode r{u(rng), u(rng), b};
            const double v = merge_value(l, r);
            const double c = 0.37;
            const double w = merge_value({c * l.length, c * l.mass, a}, {c * r.length, c * r.mass, b});
            if (std::isinf(v)) {
                EXPECT_TRUE(std::isinf(w));
            } else {
                EXPECT_NEAR(w, c * v, 1e-12 * (1.0 + v));
            }
        }
    }
}

TEST(KolmogorovSignatures, HandDerivedExamples) {
    const auto a = kolmogorov_signatures(StepSignal({0, 1, 0}));
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NEAR(a.at(0), 1.0 / 9.0, 1e-12);

    const auto b = kolmogorov_signatures(StepSignal({0, 2, 1, 3, 0}));
    ASSERT_EQ(b.size(), 2u);
    EXPECT_NEAR(b.at(0), 0.24, 1e-12);
    EXPECT_NEAR(b.at(1), 0.05, 1e-12);
}

TEST(KolmogorovSignatures, DegenerateInputs) {
    EXPECT_TRUE(kolmogorov_signatures(StepSignal({4.0})).empty());
    EXPECT_TRUE(kolmogorov_signatures(StepSignal({2, 2, 2, 2})).empty());
    EXPECT_TRUE(kolmogorov_signatures(StepSignal({0, 1, 2, 3})).empty());
    EXPECT_TRUE(kolmogorov_signatures(StepSignal({3, 1, 2})).empty());
}

TEST(KolmogorovSignatures, AgreesWithTautStringOracle) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const auto f = oracle::random_integer_signal(rng, 1, 12, 5);
        const auto s = kolmogorov_signatures(f);
        ASSERT_EQ(s.size(), mode_count(f));
        for (std::size_t k = 0; k < s.size(); ++k) {
            EXPECT_NEAR(s.at(static_cast<long>(k)), signature_oracle(f, k, 1e-10), 1e-9);
        }
    }
}

TEST(KolmogorovSignatures, SymmetriesAndRefinement) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 100; ++t) {
        const auto f = oracle::random_integer_signal(rng, 2, 30, 6);
        const auto s = kolmogorov_signatures(f);
        const auto scaled = kolmogorov_signatures(transformed(f, 2.5, 0.0, false));
        ASSERT_EQ(scaled.size(), s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            EXPECT_NEAR(scaled.at(static_cast<long>(k)), 2.5 * s.at(static_cast<long>(k)), 1e-12);
        }
        expect_same_signatures(kolmogorov_signatures(transformed(f, 1.0, -7.0, false)), s, 1e-12);
        expect_same_signatures(kolmogorov_signatures(transformed(f, 1.0, 0.0, true)), s, 1e-12);
        expect_same_signatures(kolmogorov_signatures(refine(f, 3)), s, 1e-12);
    }
}

TEST(KolmogorovSignatures, StableUnderKolmogorovPerturbation) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
        const auto f = oracle::random_real_signal(rng, 2 + t % 20);
        const auto g = oracle::random_real_signal(rng, 2 + (t * 7) % 20);
        const auto sf = kolmogorov_signatures(f);
        const auto sg = kolmogorov_signatures(g);
        const double d = kolmogorov_distance(f, g);
        for (std::size_t k = 0; k < std::max(sf.size(), sg.size()); ++k) {
            EXPECT_LE(std::abs(sf.at(static_cast<long>(k)) - sg.at(static_cast<long>(k))), d + 1e-12);
        }
    }
}

TEST(KolmogorovSignatures, CountMatchesModesOnLargeNoise) {
    std::mt19937_64 rng(24);
    const auto f = oracle::random_real_signal(rng, 20000);
    const auto s = kolmogorov_signatures(f);
    EXPECT_EQ(s.size(), mode_count(f));
}

TEST(MergeTrace, EventsAreOrderedAndAccountForEveryMode) {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 100; ++t) {
        const auto f = oracle::random_integer_signal(rng, 2, 40, 6);
        const auto trace = merge_trace(f);
        EXPECT_EQ(trace.size() + 1, coalesce_runs(f).size());
        std::size_t emitted = 0;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            if (i > 0) EXPECT_GE(trace[i].alpha, trace[i - 1].alpha);
            if (trace[i].emitted) ++emitted;
        }
        EXPECT_EQ(emitted, mode_count(f));
        if (!trace.empty()) EXPECT_EQ(trace.back().maxima_after, 0u);
    }
}

TEST(KolmogorovSignatures, AgreesWithTautStringOracleOnLongerSignals) {
    // Long enough that many merges are pending at once, with and without ties.
    std::mt19937_64 rng(26);
    for (int t = 0; t < 8; ++t) {
        const auto f = t % 2 == 0 ? oracle::random_integer_signal(rng, 200, 300, 5) : oracle::random_real_signal(rng, 250);
        const auto s = kolmogorov_signatures(f);
        ASSERT_EQ(s.size(), mode_count(f));
        for (std::size_t k = 0; k < s.size(); ++k) {
            EXPECT_NEAR(s.at(static_cast<long>(k)), signature_oracle(f, k, 1e-12), 1e-9);
        }
    }
}
