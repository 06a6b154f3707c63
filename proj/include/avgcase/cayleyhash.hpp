#pragma once

/**
 * @file cayleyhash.hpp
 * @brief Cayley hashing of bit strings into SL_2(Z_p) with generators A(x), B(y),
 *        certified collision-free lengths, and a brute-force collision search.
 */

#include "avgcase/bigint.hpp"
#include "avgcase/error.hpp"
#include "avgcase/matgrowth.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace avgcase {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

inline std::uint64_t residue(std::int64_t v, std::uint64_t p) {
    const auto m = static_cast<std::int64_t>(p);  // p < 2^63
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t p : bases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (std::uint64_t a : bases) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

struct Mat2ModP {
    std::uint64_t a = 1, b = 0, c = 0, d = 1;
    std::uint64_t p = 2;

    static Mat2ModP identity(std::uint64_t p) { return {1, 0, 0, 1, p}; }

    friend Mat2ModP operator*(const Mat2ModP& m, const Mat2ModP& n) {
        using detail::mulmod;
        const std::uint64_t p = m.p;
        auto add = [p](std::uint64_t u, std::uint64_t v) { return (u + v) % p; };
        return {add(mulmod(m.a, n.a, p), mulmod(m.b, n.c, p)), add(mulmod(m.a, n.b, p), mulmod(m.b, n.d, p)),
                add(mulmod(m.c, n.a, p), mulmod(m.d, n.c, p)), add(mulmod(m.c, n.b, p), mulmod(m.d, n.d, p)), p};
    }

    std::uint64_t det() const {
        return (detail::mulmod(a, d, p) + p - detail::mulmod(b, c, p)) % p;
    }

    auto key() const { return std::tie(a, b, c, d); }
    friend bool operator==(const Mat2ModP& m, const Mat2ModP& n) { return m.p == n.p && m.key() == n.key(); }

    /// Row-major residues, space separated.
    std::string digest() const {
        return std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + " " + std::to_string(d);
    }
};

inline Mat2ModP reduce_mod(const Mat2& m, std::uint64_t p) {
    auto r = [p](const BigInt& v) {
        BigInt q = v % p;
        if (q < 0) q += p;
        return q.convert_to<std::uint64_t>();
    };
    return {r(m.a), r(m.b), r(m.c), r(m.d), p};
}

namespace detail {

inline void validate_hash_params(std::uint64_t p, std::int64_t x, std::int64_t y) {
    require(p > 2 && p < (std::uint64_t{1} << 63U) && is_prime_u64(p), "p must be an odd prime below 2^63");
    require(residue(x, p) != 0, "p divides x: generator A degenerates mod p");
    require(residue(y, p) != 0, "p divides y: generator B degenerates mod p");
}

}  // namespace detail

inline Mat2ModP hash_generator_a(std::uint64_t p, std::int64_t x) { return {1, detail::residue(x, p), 0, 1, p}; }
inline Mat2ModP hash_generator_b(std::uint64_t p, std::int64_t y) { return {1, 0, detail::residue(y, p), 1, p}; }

inline Mat2ModP hash_bits(const ProductWord& bits, std::uint64_t p, std::int64_t x, std::int64_t y) {
    detail::validate_hash_params(p, x, y);
    const Mat2ModP ga = hash_generator_a(p, x);
    const Mat2ModP gb = hash_generator_b(p, y);
    Mat2ModP m = Mat2ModP::identity(p);
    for (auto bit : bits.bits()) m = m * (bit == 0 ? ga : gb);
    return m;
}

// ---------------------------------------------------------------------------
// Certified collision-free length

struct GirthReport {
    std::uint64_t p = 0;
    std::int64_t x = 0;
    std::int64_t y = 0;
    /// Largest n such that no two distinct words of length <= n collide mod p.
    std::size_t collision_free_length = 0;
    /// Both generators have positive parameters, so every product is entrywise nonnegative.
    bool nonnegative = false;
    /// N came from extending the alternating word beyond the exhaustive range.
    bool pattern_based = false;
    /// N is only a lower bound: mixed signs and the exhaustive range ran out first.
    bool lower_bound_only = false;
    /// Largest n covered by exhaustive search.
    std::size_t exhaustive_depth = 0;
    /// Growth base s: max over words of length <= 4 of spectral_radius^(1/length).
    std::optional<double> base;
    /// ln p / ln s.
    std::optional<double> heuristic_bound;
};

/// Spectral-radius growth base of the best cyclic pattern of length <= 4.
inline std::optional<double> short_pattern_base(std::int64_t x, std::int64_t y) {
    double best = 0.0;
    for (std::size_t len = 1; len <= 4; ++len) {
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
            const Mat2 m = eval_product(ProductWord::from_code(code, len), x, y);
            const double t = std::fabs(m.trace().convert_to<double>());
            const double rho = 0.5 * (t + std::sqrt(std::max(0.0, t * t - 4.0)));
            best = std::max(best, std::pow(rho, 1.0 / static_cast<double>(len)));
        }
    }
    if (best <= 1.0 + 1e-12) return std::nullopt;
    return best;
}

namespace detail {

/// Smallest depth in 1..max_depth at which some product has max |entry| >= limit, if any.
template <typename T>
void first_exceed_dfs(std::size_t depth, BasicMat2<T>& m, const T& x, const T& y, const T& limit, std::size_t& cap,
                      std::optional<std::size_t>& found) {
    if (depth > 0 && m.max_abs_entry() >= limit) {
        found = depth;
        cap = depth - 1;
        return;
    }
    if (depth >= cap) return;
    const BasicMat2<T> saved = m;
    m.times_a(x);
    first_exceed_dfs(depth + 1, m, x, y, limit, cap, found);
    m = saved;
    m.times_b(y);
    first_exceed_dfs(depth + 1, m, x, y, limit, cap, found);
    m = saved;
}

template <typename T>
std::optional<std::size_t> first_exceed(std::size_t max_depth, std::int64_t x, std::int64_t y, const BigInt& limit) {
    BasicMat2<T> m = BasicMat2<T>::identity();
    std::optional<std::size_t> found;
    std::size_t cap = max_depth;
    first_exceed_dfs<T>(0, m, T(x), T(y), T(limit), cap, found);
    return found;
}

}  // namespace detail

/**
 * Two distinct words whose integer products differ cannot collide mod p when
 * every entry involved is below p in absolute value and entries are
 * nonnegative (congruent values in [0, p) are equal). With mixed signs the
 * requirement becomes max |entry| < p/2. A(x), B(y) generate a free
 * semigroup for the pairs studied here, so distinct words give distinct
 * integer products.
 *
 * N is the largest n with every length-<=n product under the limit, found by
 * exhaustive search to n = 24. For nonnegative pairs the search continues
 * along the alternating word ABAB... (flagged pattern_based); mixed-sign
 * pairs that exhaust the range report N = 24 as a lower bound.
 */
inline GirthReport collision_free_bound(std::uint64_t p, std::int64_t x, std::int64_t y) {
    detail::validate_hash_params(p, x, y);
    GirthReport rep;
    rep.p = p;
    rep.x = x;
    rep.y = y;
    rep.nonnegative = x > 0 && y > 0;
    rep.base = short_pattern_base(x, y);
    if (rep.base) rep.heuristic_bound = std::log(static_cast<double>(p)) / std::log(*rep.base);

    // An entry e must satisfy e < p (nonnegative) or 2e < p (mixed): compare e >= limit.
    const BigInt limit = rep.nonnegative ? BigInt(p) : (BigInt(p) + 1) / 2;
    const std::size_t depth = max_exhaustive_length;
    const auto found = detail::fits_int64(depth, x, y) ? detail::first_exceed<std::int64_t>(depth, x, y, limit)
                                                      : detail::first_exceed<BigInt>(depth, x, y, limit);
    if (found) {
        rep.collision_free_length = *found - 1;
        rep.exhaustive_depth = *found;
        return rep;
    }
    rep.exhaustive_depth = depth;
    if (!rep.nonnegative) {
        rep.collision_free_length = depth;
        rep.lower_bound_only = true;
        return rep;
    }
    rep.pattern_based = true;
    const BigInt bx = x;
    const BigInt by = y;
    Mat2 m = eval_product(ProductWord::parse("AB").repeated_to(depth), x, y);
    std::size_t n = depth;
    while (m.max_abs_entry() < limit) {
        ++n;
        if (n % 2 == 1) {
            m.times_a(bx);
        } else {
            m.times_b(by);
        }
    }
    rep.collision_free_length = n - 1;
    return rep;
}

// ---------------------------------------------------------------------------
// Brute-force collision search

struct Collision {
    std::size_t length = 0;
    ProductWord u;
    ProductWord v;
};

/**
 * Shortest length at which two distinct equal-length words hash equal, by
 * hashing every word level by level. Equal-length collisions propagate to all
 * longer lengths, so the first level with a duplicate is minimal. The witness
 * is the lexicographically least colliding pair at that level.
 */
inline std::optional<Collision> shortest_collision_bfs(std::uint64_t p, std::int64_t x, std::int64_t y, std::size_t max_len,
                                                       std::uint64_t budget = std::uint64_t{1} << 23U) {
    detail::validate_hash_params(p, x, y);
    detail::require_budget(max_len < 63 && (std::uint64_t{1} << max_len) <= budget,
                           "collision search over 2^" + std::to_string(max_len) + " words exceeds budget");
    const Mat2ModP ga = hash_generator_a(p, x);
    const Mat2ModP gb = hash_generator_b(p, y);
    std::vector<Mat2ModP> level{Mat2ModP::identity(p)};  // index = word code
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Mat2ModP> next(level.size() * 2);
        for (std::size_t code = 0; code < level.size(); ++code) {
            next[2 * code] = level[code] * ga;
            next[2 * code + 1] = level[code] * gb;
        }
        level = std::move(next);
        std::vector<std::uint64_t> order(level.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::uint64_t i, std::uint64_t j) {
            return std::make_tuple(level[i].key(), i) < std::make_tuple(level[j].key(), j);
        });
        std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (level[order[i]] == level[order[i - 1]]) {
                const auto cand = std::make_pair(order[i - 1], order[i]);
                if (!witness || cand < *witness) witness = cand;
            }
        }
        if (witness) return Collision{len, ProductWord::from_code(witness->first, len), ProductWord::from_code(witness->second, len)};
    }
    return std::nullopt;
}

}  // namespace avgcase
