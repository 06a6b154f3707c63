#pragma once

/**
 * @file subwords.hpp
 * @brief Exact counts of freely reduced words that avoid forbidden subwords,
 *        and of words in F_2 whose Whitehead graph is incomplete.
 */

#include "avgcase/bigint.hpp"
#include "avgcase/error.hpp"
#include "avgcase/words.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <utility>
#include <vector>

namespace avgcase {

/**
 * Counts reduced words avoiding a pattern set by stepping occupancy vectors
 * through a product automaton: a multi-pattern matcher (trie with failure
 * links, completed to a full transition table) paired with the last letter
 * read. A transition is absent when it would cancel the last letter or
 * complete an occurrence of some pattern.
 */
class AvoidanceAutomaton {
public:
    static constexpr int no_transition = -1;

    int rank() const { return rank_; }
    std::size_t state_count() const { return next_.size(); }
    const std::vector<Word>& patterns() const { return patterns_; }

    int next(std::size_t state, int symbol) const { return next_[state][static_cast<std::size_t>(symbol)]; }

    /// Avoiding-word counts for lengths 0..max_len.
    std::vector<BigInt> counts_upto(std::size_t max_len) const {
        std::vector<BigInt> totals;
        totals.reserve(max_len + 1);
        std::vector<BigInt> occ(state_count());
        occ[0] = 1;
        totals.emplace_back(1);
        std::vector<BigInt> nxt(state_count());
        for (std::size_t step = 1; step <= max_len; ++step) {
            for (auto& x : nxt) x = 0;
            for (std::size_t s = 0; s < state_count(); ++s) {
                if (occ[s] == 0) continue;
                for (int k = 0; k < 2 * rank_; ++k) {
                    const int t = next(s, k);
                    if (t != no_transition) nxt[static_cast<std::size_t>(t)] += occ[s];
                }
            }
            std::swap(occ, nxt);
            BigInt total = 0;
            for (const auto& x : occ) total += x;
            totals.push_back(std::move(total));
        }
        return totals;
    }

    friend AvoidanceAutomaton build_avoidance_automaton(int r, const std::vector<Word>& forbidden);

private:
    int rank_ = 1;
    std::vector<Word> patterns_;
    std::vector<std::vector<int>> next_;
};

inline AvoidanceAutomaton build_avoidance_automaton(int r, const std::vector<Word>& forbidden) {
    detail::require(r >= 1, "rank must be >= 1");
    const int alphabet = 2 * r;
    for (const auto& p : forbidden) {
        detail::require(p.rank() == r, "pattern rank differs from automaton rank");
        detail::require(!p.empty(), "forbidden patterns must be nonempty");
        detail::require(p.is_reduced(), "forbidden pattern '" + format_word(p) + "' is not reduced");
    }

    // Trie with failure links; go[node][symbol] becomes a complete transition table.
    std::vector<std::vector<int>> go(1, std::vector<int>(static_cast<std::size_t>(alphabet), -1));
    std::vector<bool> terminal(1, false);
    for (const auto& p : forbidden) {
        int node = 0;
        for (Letter l : p.letters()) {
            const auto k = static_cast<std::size_t>(symbol_index(l, r));
            if (go[static_cast<std::size_t>(node)][k] < 0) {
                go[static_cast<std::size_t>(node)][k] = static_cast<int>(go.size());
                go.emplace_back(static_cast<std::size_t>(alphabet), -1);
                terminal.push_back(false);
            }
            node = go[static_cast<std::size_t>(node)][k];
        }
        terminal[static_cast<std::size_t>(node)] = true;
    }
    std::vector<int> fail(go.size(), 0);
    std::deque<int> queue;
    for (int k = 0; k < alphabet; ++k) {
        int& child = go[0][static_cast<std::size_t>(k)];
        if (child < 0) {
            child = 0;
        } else {
            fail[static_cast<std::size_t>(child)] = 0;
            queue.push_back(child);
        }
    }
    while (!queue.empty()) {
        const auto u = static_cast<std::size_t>(queue.front());
        queue.pop_front();
        if (terminal[static_cast<std::size_t>(fail[u])]) terminal[u] = true;
        for (int k = 0; k < alphabet; ++k) {
            int& child = go[u][static_cast<std::size_t>(k)];
            const int via_fail = go[static_cast<std::size_t>(fail[u])][static_cast<std::size_t>(k)];
            if (child < 0) {
                child = via_fail;
            } else {
                fail[static_cast<std::size_t>(child)] = via_fail;
                queue.push_back(child);
            }
        }
    }

    // Product states (trie node, last symbol), last = -1 only for the start state.
    AvoidanceAutomaton a;
    a.rank_ = r;
    a.patterns_ = forbidden;
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> states;
    auto intern = [&](int node, int last) {
        auto [it, fresh] = id.emplace(std::make_pair(node, last), static_cast<int>(states.size()));
        if (fresh) states.emplace_back(node, last);
        return it->second;
    };
    intern(0, -1);
    for (std::size_t s = 0; s < states.size(); ++s) {
        const auto [node, last] = states[s];
        std::vector<int> row(static_cast<std::size_t>(alphabet), AvoidanceAutomaton::no_transition);
        for (int k = 0; k < alphabet; ++k) {
            if (last >= 0 && symbol_letter(k, r) == inverse_letter(symbol_letter(last, r))) continue;
            const int nn = go[static_cast<std::size_t>(node)][static_cast<std::size_t>(k)];
            if (terminal[static_cast<std::size_t>(nn)]) continue;
            row[static_cast<std::size_t>(k)] = intern(nn, k);
        }
        a.next_.push_back(std::move(row));
    }
    return a;
}

inline BigInt count_avoiding(const AvoidanceAutomaton& a, std::size_t length) {
    return a.counts_upto(length).back();
}

// ---------------------------------------------------------------------------
// Incomplete Whitehead graphs in F_2

/**
 * Dynamic program over (last letter, set of covered vertex pairs) for rank
 * 2: 4 vertices, 6 unordered pairs, so at most 4 * 64 live states. A word's
 * external-edge-free Whitehead graph is complete iff all 6 pairs are covered.
 */
class EdgeCoverageCounter {
public:
    static constexpr int rank = 2;
    static constexpr int pair_count = 6;
    static constexpr std::uint32_t full_mask = (1U << pair_count) - 1;

    /// Counts for lengths 0..max_len of reduced words whose graph is incomplete.
    static std::vector<BigInt> incomplete_counts_upto(std::size_t max_len) {
        std::vector<BigInt> out;
        out.reserve(max_len + 1);
        out.emplace_back(1);
        if (max_len == 0) return out;
        // occ[last * 64 + mask]
        std::vector<BigInt> occ(4 * 64);
        for (int k = 0; k < 4; ++k) occ[static_cast<std::size_t>(k) * 64] = 1;
        out.push_back(total_incomplete(occ));
        std::vector<BigInt> nxt(4 * 64);
        for (std::size_t len = 2; len <= max_len; ++len) {
            for (auto& x : nxt) x = 0;
            for (int last = 0; last < 4; ++last) {
                for (std::uint32_t mask = 0; mask <= full_mask; ++mask) {
                    const BigInt& c = occ[static_cast<std::size_t>(last) * 64 + mask];
                    if (c == 0) continue;
                    for (int k = 0; k < 4; ++k) {
                        if (symbol_letter(k, rank) == inverse_letter(symbol_letter(last, rank))) continue;
                        const std::uint32_t m2 = mask | (1U << pair_bit(last, k));
                        nxt[static_cast<std::size_t>(k) * 64 + m2] += c;
                    }
                }
            }
            std::swap(occ, nxt);
            out.push_back(total_incomplete(occ));
        }
        return out;
    }

    /// Index of the unordered vertex pair covered by adjacent symbols (left, right).
    static unsigned pair_bit(int left, int right) {
        int u = left;
        int v = symbol_index(inverse_letter(symbol_letter(right, rank)), rank);
        if (u > v) std::swap(u, v);
        return static_cast<unsigned>(u * (2 * 4 - u - 1) / 2 + (v - u - 1));
    }

private:
    static BigInt total_incomplete(const std::vector<BigInt>& occ) {
        BigInt t = 0;
        for (int last = 0; last < 4; ++last) {
            for (std::uint32_t mask = 0; mask < full_mask; ++mask) t += occ[static_cast<std::size_t>(last) * 64 + mask];
        }
        return t;
    }
};

inline BigInt count_incomplete_graph(std::size_t length, int r = 2) {
    detail::require(r == 2, "exact incomplete-graph counting is implemented for rank 2 only");
    return EdgeCoverageCounter::incomplete_counts_upto(length).back();
}

// ---------------------------------------------------------------------------
// Decay rate of count ratios

struct DecayEstimate {
    double s = 0.0;
    std::size_t window_begin = 0;  ///< index of the first ratio in the window
    std::size_t window_end = 0;    ///< index of the last ratio in the window
};

/**
 * Geometric-rate estimate of ratio(i+1)/ratio(i), ratio = counts/base.
 * The window is the last half of the sequence: k = max(1, (N-1)/2) steps
 * ending at the final index, and s = (ratio[N-1] / ratio[N-1-k])^(1/k).
 */
inline DecayEstimate decay_rate(const std::vector<BigInt>& counts, const std::vector<BigInt>& base_counts) {
    detail::require(counts.size() == base_counts.size(), "decay_rate: sequences differ in length");
    detail::require(counts.size() >= 3, "decay_rate: need at least 3 points");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        detail::require(base_counts[i] > 0, "decay_rate: zero denominator");
        detail::require(counts[i] > 0, "decay_rate: counts must be positive");
    }
    const std::size_t last = counts.size() - 1;
    const std::size_t k = std::max<std::size_t>(1, last / 2);
    const double hi = log_ratio(counts[last], base_counts[last]);
    const double lo = log_ratio(counts[last - k], base_counts[last - k]);
    return {std::exp((hi - lo) / static_cast<double>(k)), last - k, last};
}

}  // namespace avgcase
