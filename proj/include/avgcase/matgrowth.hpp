#pragma once

/**
 * @file matgrowth.hpp
 * @brief Entry growth in products of A(x) = (1 x; 0 1) and B(y) = (1 0; y 1).
 *
 * A product word is a bit string, 0 for A and 1 for B, evaluated left to
 * right. Everything here is exact big-integer arithmetic; floating point only
 * appears in the derived growth-base estimates.
 */

#include "avgcase/bigint.hpp"
#include "avgcase/error.hpp"
#include "avgcase/rng.hpp"
#include "avgcase/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace avgcase {

template <typename T>
struct BasicMat2 {
    T a{1}, b{0}, c{0}, d{1};

    static BasicMat2 identity() { return {T(1), T(0), T(0), T(1)}; }

    friend BasicMat2 operator*(const BasicMat2& m, const BasicMat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    T det() const { return a * d - b * c; }
    T trace() const { return a + d; }

    T max_abs_entry() const {
        auto abs = [](const T& v) { return v < 0 ? T(-v) : v; };
        return std::max({abs(a), abs(b), abs(c), abs(d)});
    }

    /// In-place right multiplication by A(x).
    void times_a(const T& x) {
        b += x * a;
        d += x * c;
    }

    /// In-place right multiplication by B(y).
    void times_b(const T& y) {
        a += y * b;
        c += y * d;
    }

    friend bool operator==(const BasicMat2&, const BasicMat2&) = default;
};

using Mat2 = BasicMat2<BigInt>;

inline Mat2 gen_a(std::int64_t x) { return {1, x, 0, 1}; }
inline Mat2 gen_b(std::int64_t y) { return {1, 0, y, 1}; }

inline std::string format_matrix(const Mat2& m) {
    return "(" + m.a.str() + " " + m.b.str() + "; " + m.c.str() + " " + m.d.str() + ")";
}

class ProductWord {
public:
    ProductWord() = default;
    explicit ProductWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_) detail::require(b <= 1, "product word bits must be 0 or 1");
    }

    /// Accepts A/B (either case) or 0/1; whitespace is ignored.
    static ProductWord parse(std::string_view s) {
        std::vector<std::uint8_t> bits;
        for (char ch : s) {
            switch (ch) {
                case 'A': case 'a': case '0': bits.push_back(0); break;
                case 'B': case 'b': case '1': bits.push_back(1); break;
                case ' ': case '\t': break;
                default: throw validation_error("invalid product word character '" + std::string(1, ch) + "'");
            }
        }
        return ProductWord(std::move(bits));
    }

    /// Low `length` bits of code, most significant first.
    static ProductWord from_code(std::uint64_t code, std::size_t length) {
        std::vector<std::uint8_t> bits(length);
        for (std::size_t i = 0; i < length; ++i) bits[length - 1 - i] = static_cast<std::uint8_t>((code >> i) & 1U);
        return ProductWord(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::string str() const {
        std::string out;
        for (auto b : bits_) out += b == 0 ? 'A' : 'B';
        return out;
    }

    ProductWord repeated_to(std::size_t n) const {
        detail::require(!bits_.empty(), "cannot repeat an empty pattern");
        std::vector<std::uint8_t> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = bits_[i % bits_.size()];
        return ProductWord(std::move(out));
    }

    ProductWord rotated(std::size_t k) const {
        std::vector<std::uint8_t> out(bits_);
        if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
        return ProductWord(std::move(out));
    }

    friend ProductWord operator+(const ProductWord& u, const ProductWord& v) {
        std::vector<std::uint8_t> out(u.bits_);
        out.insert(out.end(), v.bits_.begin(), v.bits_.end());
        return ProductWord(std::move(out));
    }

    friend bool operator==(const ProductWord&, const ProductWord&) = default;
    friend auto operator<=>(const ProductWord&, const ProductWord&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

inline Mat2 eval_product(const ProductWord& w, std::int64_t x, std::int64_t y) {
    Mat2 m = Mat2::identity();
    const BigInt bx = x;
    const BigInt by = y;
    for (auto bit : w.bits()) {
        if (bit == 0) {
            m.times_a(bx);
        } else {
            m.times_b(by);
        }
    }
    return m;
}

inline bool check_relation(const ProductWord& u, const ProductWord& v, std::int64_t x, std::int64_t y) {
    return eval_product(u, x, y) == eval_product(v, x, y);
}

// ---------------------------------------------------------------------------
// Exhaustive maxima

struct ExhaustiveMax {
    BigInt max_entry;
    ProductWord argmax;
};

inline constexpr std::size_t max_exhaustive_length = 24;

namespace detail {

/// True when (1 + max(|x|,|y|))^n stays below 2^62, bounding every entry of a length-n product.
inline bool fits_int64(std::size_t n, std::int64_t x, std::int64_t y) {
    const double m = 1.0 + static_cast<double>(std::max(x < 0 ? -x : x, y < 0 ? -y : y));
    return static_cast<double>(n) * std::log2(m) < 62.0;
}

template <typename T>
void profile_dfs(std::size_t depth, std::size_t max_depth, BasicMat2<T>& m, const T& x, const T& y,
                 std::uint64_t code, std::vector<std::optional<std::pair<T, std::uint64_t>>>& best) {
    const T e = m.max_abs_entry();
    auto& slot = best[depth];
    if (!slot || e > slot->first) slot = std::make_pair(e, code);
    if (depth == max_depth) return;
    const BasicMat2<T> saved = m;
    m.times_a(x);
    profile_dfs(depth + 1, max_depth, m, x, y, code << 1U, best);
    m = saved;
    m.times_b(y);
    profile_dfs(depth + 1, max_depth, m, x, y, (code << 1U) | 1U, best);
    m = saved;
}

template <typename T>
std::vector<ExhaustiveMax> profile_as(std::size_t max_n, std::int64_t x, std::int64_t y) {
    std::vector<std::optional<std::pair<T, std::uint64_t>>> best(max_n + 1);
    BasicMat2<T> m = BasicMat2<T>::identity();
    profile_dfs<T>(0, max_n, m, T(x), T(y), 0, best);
    std::vector<ExhaustiveMax> out;
    out.reserve(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
        out.push_back({BigInt(best[n]->first), ProductWord::from_code(best[n]->second, n)});
    }
    return out;
}

}  // namespace detail

/**
 * Maximum |entry| over all 2^n products, for every n in 0..max_n, found by
 * one depth-first pass that extends prefixes incrementally. Children are
 * visited A before B and only strict improvements replace the incumbent, so
 * each argmax is the lexicographically least maximizer.
 */
inline std::vector<ExhaustiveMax> max_entry_profile(std::size_t max_n, std::int64_t x, std::int64_t y) {
    detail::require_budget(max_n <= max_exhaustive_length, "exhaustive search supports n <= 24");
    if (detail::fits_int64(max_n, x, y)) return detail::profile_as<std::int64_t>(max_n, x, y);
    return detail::profile_as<BigInt>(max_n, x, y);
}

inline ExhaustiveMax max_entry_exhaustive(std::size_t n, std::int64_t x, std::int64_t y) {
    return max_entry_profile(n, x, y).back();
}

// ---------------------------------------------------------------------------
// Pattern powers and growth bases

inline Mat2 mat_pow(Mat2 base, std::uint64_t e) {
    Mat2 result = Mat2::identity();
    while (e != 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return result;
}

/// (pattern matrix)^(n / |pattern|) by repeated squaring.
inline Mat2 pattern_power(const ProductWord& pattern, std::size_t n, std::int64_t x, std::int64_t y) {
    detail::require(!pattern.empty(), "pattern must be nonempty");
    detail::require(n % pattern.size() == 0, "n must be a multiple of the pattern length");
    return mat_pow(eval_product(pattern, x, y), n / pattern.size());
}

struct GrowthBase {
    double base = 0.0;
    std::size_t n_from = 0;  ///< first n of the fit window
    std::size_t n_to = 0;    ///< last n of the fit window
};

/**
 * Estimate of lim v(n)^(1/n) from the log-difference across the last half of
 * the points: base = exp((ln v_last - ln v_mid) / (n_last - n_mid)).
 */
inline GrowthBase growth_base(const std::vector<std::pair<std::size_t, BigInt>>& values) {
    detail::require(values.size() >= 2, "growth_base needs at least 2 points");
    for (std::size_t i = 0; i < values.size(); ++i) {
        detail::require(values[i].second > 0, "growth_base values must be positive");
        if (i > 0) detail::require(values[i].first > values[i - 1].first, "growth_base n must be strictly increasing");
    }
    const std::size_t last = values.size() - 1;
    const std::size_t mid = last - std::max<std::size_t>(1, last / 2);
    const double dl = log_abs(values[last].second) - log_abs(values[mid].second);
    const double dn = static_cast<double>(values[last].first - values[mid].first);
    return {std::exp(dl / dn), values[mid].first, values[last].first};
}

/// Max |entry| of pattern^(n/|pattern|) for n = |pattern|, 2|pattern|, ... up to max_n.
inline std::vector<std::pair<std::size_t, BigInt>> pattern_series(const ProductWord& pattern, std::size_t max_n,
                                                                  std::int64_t x, std::int64_t y) {
    detail::require(!pattern.empty(), "pattern must be nonempty");
    const Mat2 step = eval_product(pattern, x, y);
    std::vector<std::pair<std::size_t, BigInt>> out;
    Mat2 m = Mat2::identity();
    for (std::size_t n = pattern.size(); n <= max_n; n += pattern.size()) {
        m = m * step;
        out.emplace_back(n, m.max_abs_entry());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random products

struct GrowthStats {
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::vector<double> log10_max;  ///< per trial, in trial order
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    /// exp(mean over trials of ln(max entry) / n): the generic (typical) base.
    std::optional<double> generic_base;
    /// (mean over trials of max entry)^(1/n): the average base.
    std::optional<double> average_base;
};

/// Trial t draws its n bits from trial_rng(seed, t), one coin per factor.
inline GrowthStats random_product_stats(std::size_t n, std::uint64_t trials, std::int64_t x, std::int64_t y, Seed seed) {
    detail::require(trials >= 1, "trials must be >= 1");
    GrowthStats s;
    s.n = n;
    s.trials = trials;
    s.log10_max.reserve(trials);
    const BigInt bx = x;
    const BigInt by = y;
    BigInt sum_max = 0;
    double sum_ln = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(seed, t);
        Mat2 m = Mat2::identity();
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.coin()) {
                m.times_b(by);
            } else {
                m.times_a(bx);
            }
        }
        const BigInt e = m.max_abs_entry();
        sum_max += e;
        const double ln = log_abs(e);
        sum_ln += ln;
        s.log10_max.push_back(ln / std::log(10.0));
    }
    std::vector<double> sorted = s.log10_max;
    std::sort(sorted.begin(), sorted.end());
    s.mean = mean_of(sorted);
    s.min = sorted.front();
    s.max = sorted.back();
    const std::size_t h = sorted.size() / 2;
    s.median = sorted.size() % 2 == 1 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
    if (n > 0) {
        s.generic_base = std::exp(sum_ln / static_cast<double>(trials) / static_cast<double>(n));
        s.average_base = std::exp((log_abs(sum_max) - std::log(static_cast<double>(trials))) / static_cast<double>(n));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Expected first-row entries

struct EntryAverages {
    BigRational mean_a;
    BigRational mean_b;
};

inline constexpr std::size_t max_average_length = 20;

/**
 * Exact mean of the first row (a_n, b_n) = (1, 0) * w(A, B) over all 2^n
 * equally likely words, by enumeration. Right multiplication updates the row
 * as (a, b)A = (a, x a + b) and (a, b)B = (a + y b, b).
 */
inline EntryAverages exact_average_entries(std::size_t n, std::int64_t x, std::int64_t y) {
    detail::require_budget(n <= max_average_length, "exact averaging supports n <= 20");
    BigInt sum_a = 0;
    BigInt sum_b = 0;
    const BigInt bx = x;
    const BigInt by = y;
    auto rec = [&](auto&& self, std::size_t depth, const BigInt& a, const BigInt& b) -> void {
        if (depth == n) {
            sum_a += a;
            sum_b += b;
            return;
        }
        self(self, depth + 1, a, bx * a + b);
        self(self, depth + 1, a + by * b, b);
    };
    rec(rec, 0, BigInt(1), BigInt(0));
    const BigInt count = ipow(BigInt(2), n);
    return {BigRational(sum_a, count), BigRational(sum_b, count)};
}

/// Expectations via E[a_n] = E[a] + (y/2) E[b], E[b_n] = (x/2) E[a] + E[b], from (1, 0).
inline EntryAverages expected_entries_recurrence(std::size_t n, std::int64_t x, std::int64_t y) {
    BigRational a = 1;
    BigRational b = 0;
    const BigRational hx(BigInt(x), BigInt(2));
    const BigRational hy(BigInt(y), BigInt(2));
    for (std::size_t i = 0; i < n; ++i) {
        BigRational na = a + hy * b;
        BigRational nb = hx * a + b;
        a = std::move(na);
        b = std::move(nb);
    }
    return {a, b};
}

}  // namespace avgcase
