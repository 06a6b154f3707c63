#include "avgcase/stats.hpp"
#include "avgcase/subwords.hpp"
#include "avgcase/whitehead.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace avgcase;

namespace {

Word w2(const char* s) { return parse_word(s, 2); }

std::vector<Word> patterns(std::initializer_list<const char*> ps) {
    std::vector<Word> out;
    for (const char* p : ps) out.push_back(w2(p));
    return out;
}

/// Oracle: filter every reduced word of length L by direct substring search.
BigInt brute_avoiding(const std::vector<Word>& forbidden, std::size_t L) {
    BigInt n = 0;
    for_each_word(2, L, SamplingModel::Reduced, [&](const Word& w) {
        for (const auto& p : forbidden) {
            if (std::search(w.vec().begin(), w.vec().end(), p.vec().begin(), p.vec().end()) != w.vec().end()) return;
        }
        ++n;
    });
    return n;
}

BigInt brute_incomplete(std::size_t L) {
    BigInt n = 0;
    for_each_word(2, L, SamplingModel::Reduced, [&](const Word& w) {
        if (!analyze_graph(whitehead_graph(w, false)).complete) ++n;
    });
    return n;
}

}  // namespace

TEST(Avoidance, EmptyPatternSetCountsReducedWords) {
    const auto a = build_avoidance_automaton(2, {});
    EXPECT_EQ(count_avoiding(a, 0), 1);
    EXPECT_EQ(count_avoiding(a, 1), 4);
    EXPECT_EQ(count_avoiding(a, 2), 12);
    EXPECT_EQ(count_avoiding(a, 3), 36);
    const auto b = build_avoidance_automaton(3, {});
    for (std::size_t L = 0; L <= 12; ++L) EXPECT_EQ(count_avoiding(b, L), count_reduced(3, L));
}

TEST(Avoidance, SingleSquare) {
    const auto a = build_avoidance_automaton(2, patterns({"aa"}));
    EXPECT_EQ(count_avoiding(a, 2), 11);
    for (std::size_t L = 2; L <= 30; ++L) EXPECT_LT(count_avoiding(a, L), count_reduced(2, L));
}

TEST(Avoidance, TwoPatternsMatchFilter) {
    const auto forb = patterns({"ab", "ba"});
    EXPECT_EQ(count_avoiding(build_avoidance_automaton(2, forb), 3), brute_avoiding(forb, 3));
}

TEST(Avoidance, ExactOnAssortedPatternSets) {
    const std::vector<std::vector<Word>> sets{
        patterns({"aa"}),          patterns({"ab", "ba"}),         patterns({"aba"}),
        patterns({"aba", "bab"}),  patterns({"aB", "Ba", "bb"}),   patterns({"abab", "ba"}),
        patterns({"aaa", "aab"}),  patterns({"aabba"}),            patterns({"a", "bb"}),
        patterns({"ABab", "aBA"}), patterns({"b", "ab", "abab"}),
    };
    for (const auto& forb : sets) {
        const auto a = build_avoidance_automaton(2, forb);
        const auto counts = a.counts_upto(8);
        for (std::size_t L = 0; L <= 8; ++L) EXPECT_EQ(counts[L], brute_avoiding(forb, L)) << "L=" << L;
        std::size_t total = 0;
        for (const auto& p : forb) total += p.size();
        EXPECT_LE(a.state_count(), (total + 1) * 4 + 1);
    }
}

TEST(Avoidance, RejectsBadPatterns) {
    EXPECT_THROW(build_avoidance_automaton(2, patterns({"aA"})), validation_error);
    EXPECT_THROW(build_avoidance_automaton(2, {Word(2)}), validation_error);
    EXPECT_THROW(build_avoidance_automaton(3, patterns({"ab"})), validation_error);
}

TEST(Avoidance, FractionDecays) {
    const auto a = build_avoidance_automaton(2, patterns({"aa"}));
    const auto c = a.counts_upto(40);
    auto ratio = [&](std::size_t L) { return std::exp(log_ratio(c[L], count_reduced(2, L))); };
    EXPECT_LT(ratio(40), ratio(20));
    EXPECT_LT(ratio(20), ratio(10));
    for (std::size_t L = 2; L < 40; ++L) {
        EXPECT_LT(c[L + 1] * count_reduced(2, L), c[L] * count_reduced(2, L + 1));
    }
}

TEST(IncompleteGraph, ShortWordsAreAllIncomplete) {
    for (std::size_t L = 0; L <= 5; ++L) EXPECT_EQ(count_incomplete_graph(L), count_reduced(2, L));
    EXPECT_LT(count_incomplete_graph(7), count_reduced(2, 7));
}

TEST(IncompleteGraph, MatchesExhaustiveScan) {
    for (std::size_t L = 6; L <= 9; ++L) EXPECT_EQ(count_incomplete_graph(L), brute_incomplete(L)) << L;
}

TEST(IncompleteGraph, RankTwoOnly) { EXPECT_THROW(count_incomplete_graph(5, 3), validation_error); }

TEST(IncompleteGraph, LogLinearDecay) {
    const auto inc = EdgeCoverageCounter::incomplete_counts_upto(60);
    std::vector<double> xs, ys;
    for (std::size_t L = 20; L <= 60; ++L) {
        xs.push_back(static_cast<double>(L));
        ys.push_back(log_ratio(inc[L], count_reduced(2, L)));
    }
    const auto fit = least_squares(xs, ys);
    const double s = std::exp(fit.slope);
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0);
    EXPECT_GT(fit.r_squared, 0.99);
}

TEST(IncompleteGraph, AgreesWithSampling) {
    const std::size_t n = 20;
    const double exact = std::exp(log_ratio(count_incomplete_graph(n), count_reduced(2, n)));
    const int trials = 20'000;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(Seed{99}, static_cast<std::uint64_t>(t));
        if (!analyze_graph(whitehead_graph(sample_word(2, n, SamplingModel::Reduced, rng), false)).complete) ++hits;
    }
    const double freq = hits / static_cast<double>(trials);
    const double se = std::sqrt(exact * (1 - exact) / trials);
    EXPECT_NEAR(freq, exact, 3 * se);
}

TEST(DecayRate, SyntheticSequences) {
    std::vector<BigInt> base, same, halved;
    for (int L = 0; L < 10; ++L) {
        base.push_back(ipow(BigInt(3), static_cast<std::uint64_t>(L)) * 1024);
        same.push_back(base.back());
        halved.push_back(ipow(BigInt(3), static_cast<std::uint64_t>(L)) * (BigInt(1024) >> L));
    }
    EXPECT_DOUBLE_EQ(decay_rate(same, base).s, 1.0);
    EXPECT_NEAR(decay_rate(halved, base).s, 0.5, 1e-12);
    const auto d = decay_rate(same, base);
    EXPECT_EQ(d.window_end, 9U);
    EXPECT_EQ(d.window_begin, 5U);
}

TEST(DecayRate, Rejections) {
    EXPECT_THROW(decay_rate({1, 2}, {1, 2}), validation_error);
    EXPECT_THROW(decay_rate({1, 2, 3}, {1, 0, 3}), validation_error);
    EXPECT_THROW(decay_rate({1, 2, 3}, {1, 2}), validation_error);
}

TEST(DecayRate, IncompleteGraphWindowsAgree) {
    const auto inc = EdgeCoverageCounter::incomplete_counts_upto(80);
    std::vector<BigInt> base;
    for (std::size_t L = 0; L <= 80; ++L) base.push_back(count_reduced(2, L));
    auto slice = [](const std::vector<BigInt>& v, std::size_t lo, std::size_t hi) {
        return std::vector<BigInt>(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi + 1));
    };
    const double s60 = decay_rate(slice(inc, 20, 60), slice(base, 20, 60)).s;
    const double s80 = decay_rate(slice(inc, 20, 80), slice(base, 20, 80)).s;
    EXPECT_GT(s60, 0.0);
    EXPECT_LT(s60, 1.0);
    EXPECT_NEAR(s60 / s80, 1.0, 0.01);
}
