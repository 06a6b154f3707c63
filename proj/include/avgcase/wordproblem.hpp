#pragma once

/**
 * @file wordproblem.hpp
 * @brief Instrumented word-problem solvers for free, free abelian and
 *        discrete Heisenberg groups.
 *
 * The Heisenberg solver is two-tier: a linear scan computes the image in the
 * abelianization Z^2 and settles "not the identity" whenever that image is
 * nonzero; only words with zero exponent sums reach the exact evaluation in
 * (a, b, c) coordinates.
 */

#include "avgcase/bigint.hpp"
#include "avgcase/error.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/words.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace avgcase {

/// Exponent-sum vector in Z^r.
inline std::vector<std::int64_t> abelianization(const Word& w, int r) {
    detail::require(r >= w.rank(), "abelianization rank smaller than word rank");
    std::vector<std::int64_t> v(static_cast<std::size_t>(r), 0);
    for (Letter l : w.letters()) v[static_cast<std::size_t>((l > 0 ? l : -l) - 1)] += l > 0 ? 1 : -1;
    return v;
}

inline std::vector<std::int64_t> abelianization(const Word& w) { return abelianization(w, w.rank()); }

/// The unitriangular matrix (1 a c; 0 1 b; 0 0 1).
struct HeisenbergElement {
    BigInt a = 0;
    BigInt b = 0;
    BigInt c = 0;

    static HeisenbergElement identity() { return {}; }
    bool is_identity() const { return a == 0 && b == 0 && c == 0; }

    friend HeisenbergElement operator*(const HeisenbergElement& g, const HeisenbergElement& h) {
        return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b};
    }

    HeisenbergElement inverse() const { return {-a, -b, -c + a * b}; }

    friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

/// Generators x = (1,0,0) and y = (0,1,0) are the letters a and b.
inline HeisenbergElement heisenberg_generator(Letter l) {
    switch (l) {
        case 1: return {1, 0, 0};
        case -1: return {-1, 0, 0};
        case 2: return {0, 1, 0};
        case -2: return {0, -1, 0};
        default: throw validation_error("Heisenberg letters must be generators 1 or 2");
    }
}

struct WPCost {
    std::uint64_t letters_read = 0;
    /// Big-integer additions/multiplications, each weighted by operand size in 64-bit limbs.
    std::uint64_t arithmetic = 0;

    std::uint64_t total() const { return letters_read + arithmetic; }
    WPCost& operator+=(const WPCost& o) {
        letters_read += o.letters_read;
        arithmetic += o.arithmetic;
        return *this;
    }
};

/**
 * Left-to-right product. Right multiplication by a letter touches at most two
 * coordinates: x^(+-1) shifts a; y^(+-1) shifts b and adds +-a to c.
 */
inline HeisenbergElement heisenberg_eval(const Word& w, WPCost* cost = nullptr) {
    detail::require(w.rank() == 2, "Heisenberg evaluation requires rank 2 words");
    HeisenbergElement g;
    WPCost local;
    for (Letter l : w.letters()) {
        ++local.letters_read;
        const int s = l > 0 ? 1 : -1;
        if (l == 1 || l == -1) {
            local.arithmetic += limb_count(g.a);
            g.a += s;
        } else {
            local.arithmetic += limb_count(g.b) + std::max(limb_count(g.c), limb_count(g.a));
            g.b += s;
            if (s > 0) {
                g.c += g.a;
            } else {
                g.c -= g.a;
            }
        }
    }
    if (cost != nullptr) *cost += local;
    return g;
}

enum class GroupKind { Free, FreeAbelian, Heisenberg };
enum class Tier { Tier1Abelianization, Tier2Exact };

inline std::string_view to_string(GroupKind g) {
    switch (g) {
        case GroupKind::Free: return "free";
        case GroupKind::FreeAbelian: return "abelian";
        case GroupKind::Heisenberg: return "heisenberg";
    }
    return "?";
}

inline GroupKind parse_group(std::string_view s) {
    if (s == "free") return GroupKind::Free;
    if (s == "abelian") return GroupKind::FreeAbelian;
    if (s == "heisenberg") return GroupKind::Heisenberg;
    throw validation_error("unknown group '" + std::string(s) + "' (free|abelian|heisenberg)");
}

inline std::string_view to_string(Tier t) { return t == Tier::Tier1Abelianization ? "Tier1Abelianization" : "Tier2Exact"; }

struct WPVerdict {
    bool is_identity = false;
    Tier decided_by = Tier::Tier2Exact;
    WPCost cost;
};

/**
 * Free groups are decided by free reduction and free abelian groups by the
 * exponent-sum vector; both are single exact solvers and report Tier2Exact.
 * Heisenberg runs the abelianization tier first.
 */
inline WPVerdict wp_composite(GroupKind group, const Word& w) {
    WPVerdict out;
    switch (group) {
        case GroupKind::Free: {
            // One push or pop per letter.
            out.cost.letters_read = w.size();
            out.cost.arithmetic = w.size();
            out.is_identity = reduce(w).empty();
            out.decided_by = Tier::Tier2Exact;
            return out;
        }
        case GroupKind::FreeAbelian: {
            const auto v = abelianization(w);
            out.cost.letters_read = w.size();
            out.cost.arithmetic = v.size();
            out.is_identity = std::all_of(v.begin(), v.end(), [](std::int64_t e) { return e == 0; });
            out.decided_by = Tier::Tier2Exact;
            return out;
        }
        case GroupKind::Heisenberg: {
            detail::require(w.rank() == 2, "Heisenberg word problem requires rank 2 words");
            const auto v = abelianization(w);
            out.cost.letters_read = w.size();
            out.cost.arithmetic = 2;
            if (v[0] != 0 || v[1] != 0) {
                out.is_identity = false;
                out.decided_by = Tier::Tier1Abelianization;
                return out;
            }
            const HeisenbergElement g = heisenberg_eval(w, &out.cost);
            out.cost.arithmetic += 3;
            out.is_identity = g.is_identity();
            out.decided_by = Tier::Tier2Exact;
            return out;
        }
    }
    return out;
}

struct Tier2Frequency {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double frequency() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials); }
};

/// Fraction of uniform length-n words over {a, b, A, B} with zero exponent sums,
/// i.e. words that reach tier 2. Trial t samples from trial_rng(seed, t).
inline Tier2Frequency tier2_frequency(std::size_t n, std::uint64_t trials, Seed seed) {
    Tier2Frequency f;
    f.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(seed, t);
        const Word w = sample_word(2, n, SamplingModel::AllWords, rng);
        const auto v = abelianization(w);
        if (v[0] == 0 && v[1] == 0) ++f.hits;
    }
    return f;
}

}  // namespace avgcase
