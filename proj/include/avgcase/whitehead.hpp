#pragma once

/**
 * @file whitehead.hpp
 * @brief Primitivity in free groups: Whitehead graphs, Whitehead automorphisms,
 *        the exact descent algorithm W, the prefix fast check T, and their
 *        composite A.
 *
 * Vertex v of a Whitehead graph is the symbol with symbol_index v: vertices
 * 0..r-1 are x_1..x_r and r..2r-1 are x_1^-1..x_r^-1. Each adjacent letter
 * pair u v of a word contributes the edge {u, v^-1}; the external edge of a
 * cyclic word joins its last letter to the inverse of its first letter.
 */

#include "avgcase/error.hpp"
#include "avgcase/words.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace avgcase {

inline constexpr int max_whitehead_rank = 5;

// ---------------------------------------------------------------------------
// Whitehead graph

class WhiteheadGraph {
public:
    explicit WhiteheadGraph(int rank, bool external_included = false)
        : rank_(rank), external_(external_included),
          mult_(static_cast<std::size_t>(4 * rank * rank), 0) {
        detail::require(rank >= 1 && rank <= max_whitehead_rank, "Whitehead graph rank must be in [1, 5]");
    }

    int rank() const { return rank_; }
    int vertex_count() const { return 2 * rank_; }
    bool external_included() const { return external_; }
    std::size_t edge_count() const { return edges_; }

    void add_edge(int u, int v) {
        ++mult_[index(u, v)];
        if (u != v) ++mult_[index(v, u)];
        ++edges_;
    }

    /// Adds the edge contributed by the adjacent letter pair (left, right).
    void add_letter_pair(Letter left, Letter right) {
        add_edge(symbol_index(left, rank_), symbol_index(inverse_letter(right), rank_));
    }

    std::uint32_t multiplicity(int u, int v) const { return mult_[index(u, v)]; }

    std::uint32_t degree(int v) const {
        std::uint32_t d = 0;
        for (int u = 0; u < vertex_count(); ++u) d += (u == v ? 2 : 1) * multiplicity(v, u);
        return d;
    }

    /// Edge multiset as (u <= v) pairs, each repeated by its multiplicity.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < vertex_count(); ++u) {
            for (int v = u; v < vertex_count(); ++v) {
                for (std::uint32_t k = 0; k < multiplicity(u, v); ++k) out.emplace_back(u, v);
            }
        }
        return out;
    }

    /// True iff this graph's edge multiset is contained in other's.
    bool is_submultiset_of(const WhiteheadGraph& other) const {
        if (other.rank_ != rank_) return false;
        for (std::size_t i = 0; i < mult_.size(); ++i) {
            if (mult_[i] > other.mult_[i]) return false;
        }
        return true;
    }

    /// Connected components of the graph with `removed` deleted (-1 keeps all vertices).
    int component_count(int removed = -1) const {
        const int n = vertex_count();
        std::vector<int> label(static_cast<std::size_t>(n), -1);
        int components = 0;
        for (int s = 0; s < n; ++s) {
            if (s == removed || label[static_cast<std::size_t>(s)] >= 0) continue;
            std::vector<int> stack{s};
            label[static_cast<std::size_t>(s)] = components;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                for (int v = 0; v < n; ++v) {
                    if (v == removed || label[static_cast<std::size_t>(v)] >= 0 || multiplicity(u, v) == 0) continue;
                    label[static_cast<std::size_t>(v)] = components;
                    stack.push_back(v);
                }
            }
            ++components;
        }
        return components;
    }

    friend bool operator==(const WhiteheadGraph&, const WhiteheadGraph&) = default;

private:
    std::size_t index(int u, int v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(vertex_count()) + static_cast<std::size_t>(v);
    }

    int rank_;
    bool external_;
    std::vector<std::uint32_t> mult_;
    std::size_t edges_ = 0;
};

inline WhiteheadGraph whitehead_graph(const Word& w, bool include_external) {
    detail::require(w.is_reduced(), "Whitehead graph requires a reduced word");
    detail::require(!include_external || w.is_cyclically_reduced(),
                    "Whitehead graph with external edge requires a cyclically reduced word");
    WhiteheadGraph g(w.rank(), include_external);
    for (std::size_t i = 1; i < w.size(); ++i) g.add_letter_pair(w[i - 1], w[i]);
    if (include_external && w.size() >= 2) g.add_letter_pair(w.back(), w.front());
    return g;
}

struct GraphVerdict {
    bool complete = false;
    bool has_isolated_edge = false;
    bool has_cut_vertex = false;

    /// Whitehead's necessary condition for a cyclically reduced primitive of length > 2.
    bool satisfies_criterion() const { return has_isolated_edge || has_cut_vertex; }
};

inline GraphVerdict analyze_graph(const WhiteheadGraph& g) {
    GraphVerdict out;
    const int n = g.vertex_count();
    out.complete = true;
    for (int u = 0; u < n && out.complete; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (g.multiplicity(u, v) == 0) {
                out.complete = false;
                break;
            }
        }
    }
    for (int u = 0; u < n && !out.has_isolated_edge; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (g.multiplicity(u, v) > 0 && g.degree(u) == 1 && g.degree(v) == 1) {
                out.has_isolated_edge = true;
                break;
            }
        }
    }
    const int base = g.component_count();
    for (int v = 0; v < n; ++v) {
        if (g.component_count(v) > base) {
            out.has_cut_vertex = true;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Whitehead automorphisms

/**
 * A Whitehead automorphism, stored as the images of the generators.
 *
 * Type II (multiplier a, set A with a in A, a^-1 not in A) uses the
 * convention of Lyndon and Schupp: a and a^-1 are fixed, and every other
 * letter y maps to
 *
 *     [a^-1 if y^-1 in A] y [a if y in A]
 *
 * so a generator x goes to x, xa, a^-1 x or a^-1 x a. This per-letter rule
 * is compatible with inversion, hence defines an endomorphism; its inverse is
 * the type II automorphism (a^-1, A - {a} + {a^-1}).
 *
 * Type I permutes the generators and inverts some of them.
 */
class WhiteheadAutomorphism {
public:
    enum class Kind { TypeI, TypeII };

    static WhiteheadAutomorphism type_ii(int rank, Letter multiplier, std::uint32_t subset) {
        detail::require(rank >= 1 && rank <= max_whitehead_rank, "automorphism rank must be in [1, 5]");
        const auto bit = [rank](Letter l) { return std::uint32_t{1} << static_cast<unsigned>(symbol_index(l, rank)); };
        detail::require((subset & bit(multiplier)) != 0, "multiplier must belong to the set");
        detail::require((subset & bit(inverse_letter(multiplier))) == 0, "inverse of multiplier must not belong to the set");
        WhiteheadAutomorphism t(rank, Kind::TypeII);
        t.multiplier_ = multiplier;
        t.subset_ = subset;
        for (int i = 1; i <= rank; ++i) {
            std::vector<Letter> img;
            if (i == multiplier || i == -multiplier) {
                img.push_back(i);
            } else {
                if ((subset & bit(-i)) != 0) img.push_back(inverse_letter(multiplier));
                img.push_back(i);
                if ((subset & bit(i)) != 0) img.push_back(multiplier);
            }
            t.images_[static_cast<std::size_t>(i - 1)] = std::move(img);
        }
        return t;
    }

    /// images[i] is the signed letter that x_{i+1} maps to; must be a signed permutation.
    static WhiteheadAutomorphism type_i(int rank, const std::vector<Letter>& images) {
        detail::require(static_cast<int>(images.size()) == rank, "permutation size must equal rank");
        std::vector<bool> seen(static_cast<std::size_t>(rank), false);
        WhiteheadAutomorphism t(rank, Kind::TypeI);
        for (std::size_t i = 0; i < images.size(); ++i) {
            const int g = images[i] > 0 ? images[i] : -images[i];
            detail::require(g >= 1 && g <= rank && !seen[static_cast<std::size_t>(g - 1)], "not a signed permutation");
            seen[static_cast<std::size_t>(g - 1)] = true;
            t.images_[i] = {images[i]};
        }
        return t;
    }

    Kind kind() const { return kind_; }
    int rank() const { return rank_; }
    Letter multiplier() const { return multiplier_; }
    std::uint32_t subset() const { return subset_; }

    bool subset_contains(Letter l) const {
        return (subset_ & (std::uint32_t{1} << static_cast<unsigned>(symbol_index(l, rank_)))) != 0;
    }

    /// Image of a single letter, unreduced concatenation form.
    std::vector<Letter> image(Letter l) const {
        const auto& img = images_[static_cast<std::size_t>((l > 0 ? l : -l) - 1)];
        if (l > 0) return img;
        std::vector<Letter> out(img.rbegin(), img.rend());
        for (Letter& x : out) x = inverse_letter(x);
        return out;
    }

    WhiteheadAutomorphism inverse() const {
        if (kind_ == Kind::TypeII) {
            const auto bit = [this](Letter l) { return std::uint32_t{1} << static_cast<unsigned>(symbol_index(l, rank_)); };
            return type_ii(rank_, inverse_letter(multiplier_), (subset_ & ~bit(multiplier_)) | bit(inverse_letter(multiplier_)));
        }
        std::vector<Letter> inv(static_cast<std::size_t>(rank_));
        for (int i = 1; i <= rank_; ++i) {
            const Letter img = images_[static_cast<std::size_t>(i - 1)].front();
            const int g = img > 0 ? img : -img;
            inv[static_cast<std::size_t>(g - 1)] = img > 0 ? i : -i;
        }
        return type_i(rank_, inv);
    }

    std::string describe() const {
        std::string out;
        if (kind_ == Kind::TypeII) {
            out = "(" + format_letter(multiplier_, rank_) + "; {";
            bool first = true;
            for (int k = 0; k < 2 * rank_; ++k) {
                if ((subset_ & (std::uint32_t{1} << static_cast<unsigned>(k))) == 0) continue;
                if (!first) out += ",";
                out += format_letter(symbol_letter(k, rank_), rank_);
                first = false;
            }
            return out + "})";
        }
        out = "perm(";
        for (int i = 0; i < rank_; ++i) {
            if (i != 0) out += ",";
            out += format_letter(images_[static_cast<std::size_t>(i)].front(), rank_);
        }
        return out + ")";
    }

private:
    WhiteheadAutomorphism(int rank, Kind kind) : kind_(kind), rank_(rank), images_(static_cast<std::size_t>(rank)) {}

    Kind kind_;
    int rank_;
    Letter multiplier_ = 0;
    std::uint32_t subset_ = 0;
    std::vector<std::vector<Letter>> images_;
};

/// Every type II automorphism (a, A), A != {a}, ordered by multiplier in
/// symbol order then by subset bitmask. Ranks above 5 are refused.
inline std::vector<WhiteheadAutomorphism> enumerate_whitehead_autos(int r) {
    detail::require(r >= 1, "rank must be >= 1");
    detail::require_budget(r <= max_whitehead_rank, "Whitehead automorphism enumeration supports rank <= 5");
    std::vector<WhiteheadAutomorphism> out;
    const std::uint32_t full = (std::uint32_t{1} << static_cast<unsigned>(2 * r)) - 1;
    for (int k = 0; k < 2 * r; ++k) {
        const Letter a = symbol_letter(k, r);
        const std::uint32_t a_bit = std::uint32_t{1} << static_cast<unsigned>(k);
        const std::uint32_t inv_bit = std::uint32_t{1} << static_cast<unsigned>(symbol_index(inverse_letter(a), r));
        const std::uint32_t free_bits = full & ~a_bit & ~inv_bit;
        // Walk all submasks of free_bits in increasing order.
        for (std::uint32_t s = 0;; s = (s - free_bits) & free_bits) {
            if (s != 0) out.push_back(WhiteheadAutomorphism::type_ii(r, a, s | a_bit));
            if (s == free_bits) break;
        }
    }
    return out;
}

/// All 2^r r! signed permutations, identity included.
inline std::vector<WhiteheadAutomorphism> enumerate_permutation_autos(int r) {
    detail::require_budget(r >= 1 && r <= max_whitehead_rank, "permutation enumeration supports rank <= 5");
    std::vector<int> perm(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    std::vector<WhiteheadAutomorphism> out;
    do {
        for (std::uint32_t signs = 0; signs < (std::uint32_t{1} << static_cast<unsigned>(r)); ++signs) {
            std::vector<Letter> images(perm.begin(), perm.end());
            for (int i = 0; i < r; ++i) {
                if ((signs >> static_cast<unsigned>(i)) & 1U) images[static_cast<std::size_t>(i)] *= -1;
            }
            out.push_back(WhiteheadAutomorphism::type_i(r, images));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace detail {

inline std::vector<Letter> apply_unchecked(const WhiteheadAutomorphism& t, std::span<const Letter> w) {
    std::vector<Letter> out;
    out.reserve(w.size() + w.size() / 2);
    auto push = [&out](Letter l) {
        if (!out.empty() && out.back() == inverse_letter(l)) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    };
    for (Letter l : w) {
        for (Letter x : t.image(l)) push(x);
    }
    return out;
}

inline const std::vector<WhiteheadAutomorphism>& cached_autos(int r) {
    static const std::array<std::vector<WhiteheadAutomorphism>, max_whitehead_rank + 1> table = [] {
        std::array<std::vector<WhiteheadAutomorphism>, max_whitehead_rank + 1> t;
        for (int k = 1; k <= max_whitehead_rank; ++k) t[static_cast<std::size_t>(k)] = enumerate_whitehead_autos(k);
        return t;
    }();
    return table[static_cast<std::size_t>(r)];
}

}  // namespace detail

/// Image of a reduced word, freely reduced.
inline Word apply_auto(const WhiteheadAutomorphism& t, const Word& w) {
    detail::require(t.rank() == w.rank(), "automorphism and word rank differ");
    detail::require(w.is_reduced(), "apply_auto requires a reduced word");
    return Word(w.rank(), detail::apply_unchecked(t, w.letters()));
}

// ---------------------------------------------------------------------------
// Primitivity algorithms

enum class Primitivity { Primitive, NotPrimitive };
enum class Decider { FastCheckT, WhiteheadW };

inline std::string_view to_string(Primitivity p) { return p == Primitivity::Primitive ? "Primitive" : "NotPrimitive"; }
inline std::string_view to_string(Decider d) { return d == Decider::FastCheckT ? "FastCheckT" : "WhiteheadW"; }

/// Abstract step counts. total() is the scalar cost used by the bench harness.
struct StepCost {
    std::uint64_t letters_read = 0;
    std::uint64_t edge_updates = 0;
    std::uint64_t auto_applications = 0;
    std::uint64_t letters_rewritten = 0;

    std::uint64_t total() const { return letters_read + edge_updates + auto_applications + letters_rewritten; }

    StepCost& operator+=(const StepCost& o) {
        letters_read += o.letters_read;
        edge_updates += o.edge_updates;
        auto_applications += o.auto_applications;
        letters_rewritten += o.letters_rewritten;
        return *this;
    }
    friend StepCost operator+(StepCost a, const StepCost& b) { return a += b; }
    friend bool operator==(const StepCost&, const StepCost&) = default;
};

struct PrimitivityVerdict {
    Primitivity verdict = Primitivity::NotPrimitive;
    Decider decided_by = Decider::WhiteheadW;
    StepCost cost;
    std::size_t descent_steps = 0;
};

/// One length-reducing move of W, recorded for tracing.
struct DescentStep {
    std::string automorphism;
    Word result;
};

/**
 * Algorithm W: cyclically reduce, then repeatedly apply the first Whitehead
 * automorphism (enumeration order) that strictly shortens the cyclic word.
 * The input is primitive iff the descent reaches length 1.
 */
inline PrimitivityVerdict primitivity_whitehead(const Word& w, std::vector<DescentStep>* trace = nullptr) {
    detail::require_budget(w.rank() <= max_whitehead_rank, "Whitehead algorithm supports rank <= 5");
    PrimitivityVerdict out;
    out.decided_by = Decider::WhiteheadW;
    out.cost.letters_read = w.size();
    std::vector<Letter> u = cyclic_reduce(w).vec();
    const auto& autos = detail::cached_autos(w.rank());
    while (u.size() > 1) {
        bool reduced = false;
        for (const auto& t : autos) {
            ++out.cost.auto_applications;
            out.cost.letters_rewritten += u.size();
            std::vector<Letter> image = cyclic_reduce(Word(w.rank(), detail::apply_unchecked(t, u))).vec();
            if (image.size() < u.size()) {
                u = std::move(image);
                ++out.descent_steps;
                if (trace != nullptr) trace->push_back({t.describe(), Word(w.rank(), u)});
                reduced = true;
                break;
            }
        }
        if (!reduced) break;
    }
    out.verdict = u.size() == 1 ? Primitivity::Primitive : Primitivity::NotPrimitive;
    return out;
}

struct FastCheckResult {
    bool not_primitive = false;
    std::size_t prefix_len = 0;  ///< length of the first prefix with complete graph; 0 if inconclusive
    StepCost cost;
};

/**
 * Algorithm T: read prefixes one letter at a time, maintaining the Whitehead
 * graph without the external edge; stop with NotPrimitive at the first
 * complete prefix. Requires a cyclically reduced word of length > 2.
 */
inline FastCheckResult fast_check(const Word& w) {
    detail::require(w.is_cyclically_reduced(), "fast check requires a cyclically reduced word");
    detail::require(w.size() > 2, "fast check requires length > 2");
    const int r = w.rank();
    const int vertices = 2 * r;
    const int total_pairs = vertices * (vertices - 1) / 2;
    std::uint64_t covered_mask = 0;
    int covered = 0;
    FastCheckResult out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        ++out.cost.letters_read;
        if (k == 0) continue;
        ++out.cost.edge_updates;
        int u = symbol_index(w[k - 1], r);
        int v = symbol_index(inverse_letter(w[k]), r);
        if (u > v) std::swap(u, v);
        // Loops cannot occur on reduced words, so u < v here.
        const int pair = u * (2 * vertices - u - 1) / 2 + (v - u - 1);
        const std::uint64_t bit = std::uint64_t{1} << static_cast<unsigned>(pair);
        if ((covered_mask & bit) == 0) {
            covered_mask |= bit;
            ++covered;
        }
        if (covered == total_pairs) {
            out.not_primitive = true;
            out.prefix_len = k + 1;
            return out;
        }
    }
    return out;
}

/**
 * Algorithm A: T then, only if T is inconclusive, W. Words whose cyclic
 * reduction has length <= 2 go straight to W.
 */
inline PrimitivityVerdict primitivity_composite(const Word& w, std::vector<DescentStep>* trace = nullptr) {
    const Word u = cyclic_reduce(w);
    if (u.size() <= 2) return primitivity_whitehead(u, trace);
    const FastCheckResult t = fast_check(u);
    if (t.not_primitive) {
        PrimitivityVerdict out;
        out.verdict = Primitivity::NotPrimitive;
        out.decided_by = Decider::FastCheckT;
        out.cost = t.cost;
        return out;
    }
    PrimitivityVerdict out = primitivity_whitehead(u, trace);
    out.cost += t.cost;
    return out;
}

// ---------------------------------------------------------------------------
// Ground truth by orbit closure

namespace detail {

inline std::vector<Letter> least_rotation(const std::vector<Letter>& w) {
    std::vector<Letter> best = w;
    std::vector<Letter> cur = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

}  // namespace detail

/**
 * All cyclically reduced primitive words of length <= max_len, found by
 * breadth-first search over cyclic words starting at x_1, closing under
 * every Whitehead automorphism (both types) and discarding images longer
 * than max_len. Peak reduction guarantees each primitive is reached along a
 * path of nondecreasing length, so the pruning loses nothing. The result is
 * closed under cyclic permutation and inversion.
 */
inline std::set<Word> primitive_orbit_oracle(int r, std::size_t max_len, std::uint64_t budget = std::uint64_t{1} << 22U) {
    detail::require(r >= 1, "rank must be >= 1");
    detail::require_budget(r <= max_whitehead_rank && max_len <= 16, "orbit oracle supports rank <= 5 and max_len <= 16");
    std::vector<WhiteheadAutomorphism> moves = enumerate_whitehead_autos(r);
    for (auto& t : enumerate_permutation_autos(r)) moves.push_back(std::move(t));

    std::set<std::vector<Letter>> seen;
    std::deque<std::vector<Letter>> queue;
    auto visit = [&](const std::vector<Letter>& cyclic) {
        if (cyclic.empty() || cyclic.size() > max_len) return;
        auto canon = detail::least_rotation(cyclic);
        if (seen.insert(canon).second) {
            detail::require_budget(seen.size() <= budget, "orbit oracle exceeded its budget");
            queue.push_back(std::move(canon));
        }
    };
    visit({1});
    while (!queue.empty()) {
        const std::vector<Letter> u = std::move(queue.front());
        queue.pop_front();
        visit(cyclic_reduce(Word(r, u).inverse()).vec());
        for (const auto& t : moves) visit(cyclic_reduce(Word(r, detail::apply_unchecked(t, u))).vec());
    }

    std::set<Word> out;
    for (const auto& canon : seen) {
        const Word w(r, canon);
        for (std::size_t k = 0; k < w.size(); ++k) out.insert(w.rotated(k));
    }
    return out;
}

}  // namespace avgcase
