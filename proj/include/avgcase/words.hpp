#pragma once

/**
 * @file words.hpp
 * @brief Words over a free group alphabet: reduction, counting, sampling, enumeration.
 *
 * A letter is a nonzero int: +i stands for the generator x_i and -i for its
 * inverse, 1 <= i <= rank. The text form writes x_i as the i-th lowercase
 * Latin letter and x_i^-1 as the uppercase one ("aB" is x_1 x_2^-1) when
 * rank <= 26; the long form "x3"/"X3" is accepted for any rank. The empty
 * word is written "1".
 *
 * Symbol order, used for enumeration and indexing, is
 * x_1 < x_2 < ... < x_r < x_1^-1 < ... < x_r^-1.
 */

#include "avgcase/bigint.hpp"
#include "avgcase/error.hpp"
#include "avgcase/rng.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace avgcase {

using Letter = int;

constexpr Letter inverse_letter(Letter l) { return -l; }

/// Position of a letter in symbol order, in [0, 2r).
constexpr int symbol_index(Letter l, int rank) { return l > 0 ? l - 1 : rank + (-l) - 1; }

constexpr Letter symbol_letter(int index, int rank) { return index < rank ? index + 1 : -(index - rank + 1); }

class Word {
public:
    Word() = default;

    explicit Word(int rank) : rank_(rank) { detail::require(rank >= 1, "rank must be >= 1"); }

    Word(int rank, std::vector<Letter> letters) : rank_(rank), letters_(std::move(letters)) {
        detail::require(rank >= 1, "rank must be >= 1");
        for (Letter l : letters_) {
            detail::require(l != 0 && l <= rank && -l <= rank,
                            "letter index " + std::to_string(l) + " outside rank " + std::to_string(rank));
        }
    }

    int rank() const { return rank_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    Letter back() const { return letters_.back(); }
    std::span<const Letter> letters() const { return letters_; }
    const std::vector<Letter>& vec() const { return letters_; }

    /// No adjacent pair (l, l^-1).
    bool is_reduced() const {
        for (std::size_t i = 1; i < letters_.size(); ++i) {
            if (letters_[i] == inverse_letter(letters_[i - 1])) return false;
        }
        return true;
    }

    /// Reduced, and first and last letters are not mutually inverse (vacuous for length <= 1).
    bool is_cyclically_reduced() const {
        if (!is_reduced()) return false;
        return letters_.size() <= 1 || letters_.front() != inverse_letter(letters_.back());
    }

    Word inverse() const {
        std::vector<Letter> out(letters_.rbegin(), letters_.rend());
        for (Letter& l : out) l = inverse_letter(l);
        return Word(rank_, std::move(out));
    }

    /// Cyclic rotation: letters [k, n) followed by [0, k).
    Word rotated(std::size_t k) const {
        std::vector<Letter> out(letters_);
        if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
        return Word(rank_, std::move(out));
    }

    /// Concatenation without cancellation.
    friend Word operator*(const Word& u, const Word& v) {
        detail::require(u.rank_ == v.rank_, "rank mismatch in concatenation");
        std::vector<Letter> out(u.letters_);
        out.insert(out.end(), v.letters_.begin(), v.letters_.end());
        return Word(u.rank_, std::move(out));
    }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    int rank_ = 1;
    std::vector<Letter> letters_;
};

/// Free reduction by a single stack pass.
inline Word reduce(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter l : w.letters()) {
        if (!out.empty() && out.back() == inverse_letter(l)) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return Word(w.rank(), std::move(out));
}

/// Free reduction followed by stripping mutually inverse end pairs. The
/// result is the middle segment, conjugate to w.
inline Word cyclic_reduce(const Word& w) {
    Word r = reduce(w);
    std::size_t lo = 0;
    std::size_t hi = r.size();
    while (hi - lo >= 2 && r[lo] == inverse_letter(r[hi - 1])) {
        ++lo;
        --hi;
    }
    if (lo == 0) return r;
    auto letters = r.letters().subspan(lo, hi - lo);
    return Word(w.rank(), std::vector<Letter>(letters.begin(), letters.end()));
}

// ---------------------------------------------------------------------------
// Text form

inline Word parse_word(std::string_view text, int rank) {
    detail::require(rank >= 1, "rank must be >= 1");
    std::vector<Letter> letters;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\n' || c == '\r'; };
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    std::string_view trimmed = text;
    while (!trimmed.empty() && is_space(trimmed.front())) trimmed.remove_prefix(1);
    while (!trimmed.empty() && is_space(trimmed.back())) trimmed.remove_suffix(1);
    if (trimmed == "1") return Word(rank);
    while (i < text.size()) {
        const char c = text[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if ((c == 'x' || c == 'X') && i + 1 < text.size() && is_digit(text[i + 1])) {
            std::size_t j = i + 1;
            long index = 0;
            while (j < text.size() && is_digit(text[j])) {
                index = index * 10 + (text[j] - '0');
                detail::require(index <= 1'000'000, "generator index too large in '" + std::string(text) + "'");
                ++j;
            }
            detail::require(index >= 1, "generator index must be >= 1 in '" + std::string(text) + "'");
            letters.push_back(c == 'x' ? static_cast<Letter>(index) : -static_cast<Letter>(index));
            i = j;
            continue;
        }
        if (c >= 'a' && c <= 'z') {
            letters.push_back(c - 'a' + 1);
        } else if (c >= 'A' && c <= 'Z') {
            letters.push_back(-(c - 'A' + 1));
        } else {
            throw validation_error("unexpected character '" + std::string(1, c) + "' in word '" + std::string(text) + "'");
        }
        ++i;
    }
    return Word(rank, std::move(letters));
}

inline std::string format_letter(Letter l, int rank) {
    if (rank <= 26) {
        return std::string(1, static_cast<char>(l > 0 ? 'a' + l - 1 : 'A' + (-l) - 1));
    }
    return (l > 0 ? "x" : "X") + std::to_string(l > 0 ? l : -l);
}

inline std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.rank() > 26 && i != 0) out += ' ';
        out += format_letter(w[i], w.rank());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Models and counting

enum class SamplingModel { AllWords, Reduced, CyclicallyReduced };

inline std::string_view to_string(SamplingModel m) {
    switch (m) {
        case SamplingModel::AllWords: return "AllWords";
        case SamplingModel::Reduced: return "Reduced";
        case SamplingModel::CyclicallyReduced: return "CyclicallyReduced";
    }
    return "?";
}

inline SamplingModel parse_model(std::string_view s) {
    if (s == "AllWords" || s == "all") return SamplingModel::AllWords;
    if (s == "Reduced" || s == "reduced") return SamplingModel::Reduced;
    if (s == "CyclicallyReduced" || s == "cyclic") return SamplingModel::CyclicallyReduced;
    throw validation_error("unknown sampling model '" + std::string(s) + "' (AllWords|Reduced|CyclicallyReduced)");
}

/// 2r(2r-1)^(n-1) for n >= 1, and 1 for n = 0.
inline BigInt count_reduced(int r, std::size_t n) {
    detail::require(r >= 1, "rank must be >= 1");
    if (n == 0) return 1;
    return BigInt(2 * r) * ipow(BigInt(2 * r - 1), n - 1);
}

/// (2r-1)^n + 1 + (r-1)(1 + (-1)^n) for n >= 1, and 1 for n = 0.
inline BigInt count_cyclically_reduced(int r, std::size_t n) {
    detail::require(r >= 1, "rank must be >= 1");
    if (n == 0) return 1;
    BigInt total = ipow(BigInt(2 * r - 1), n) + 1;
    if (n % 2 == 0) total += BigInt(2 * (r - 1));
    return total;
}

inline BigInt count_words(int r, std::size_t n, SamplingModel model) {
    switch (model) {
        case SamplingModel::AllWords: return ipow(BigInt(2 * r), n);
        case SamplingModel::Reduced: return count_reduced(r, n);
        case SamplingModel::CyclicallyReduced: return count_cyclically_reduced(r, n);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Sampling

namespace detail {

inline void fill_reduced(std::vector<Letter>& out, int r, std::size_t n, SplitMix64& rng) {
    const auto alphabet = static_cast<std::uint64_t>(2 * r);
    out.clear();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0) {
            out.push_back(symbol_letter(static_cast<int>(rng.below(alphabet)), r));
            continue;
        }
        // Uniform over the 2r-1 symbols other than the inverse of the previous letter.
        const int forbidden = symbol_index(inverse_letter(out.back()), r);
        int k = static_cast<int>(rng.below(alphabet - 1));
        if (k >= forbidden) ++k;
        out.push_back(symbol_letter(k, r));
    }
}

}  // namespace detail

/// Uniform word of length n under the model. Cyclically reduced words come
/// from rejection on the reduced sampler.
inline Word sample_word(int r, std::size_t n, SamplingModel model, SplitMix64& rng) {
    detail::require(r >= 1, "rank must be >= 1");
    std::vector<Letter> letters;
    switch (model) {
        case SamplingModel::AllWords: {
            letters.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                letters.push_back(symbol_letter(static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * r))), r));
            }
            break;
        }
        case SamplingModel::Reduced:
            detail::fill_reduced(letters, r, n, rng);
            break;
        case SamplingModel::CyclicallyReduced:
            do {
                detail::fill_reduced(letters, r, n, rng);
            } while (n >= 2 && letters.front() == inverse_letter(letters.back()));
            break;
    }
    return Word(r, std::move(letters));
}

inline Word sample_word(int r, std::size_t n, SamplingModel model, Seed seed) {
    SplitMix64 rng(seed.master);
    return sample_word(r, n, model, rng);
}

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 24U;

/// Calls visit(word) for every word of length n under the model, in
/// lexicographic symbol order. Refuses when the model's word count exceeds budget.
template <typename Visitor>
void for_each_word(int r, std::size_t n, SamplingModel model, Visitor&& visit,
                   std::uint64_t budget = default_enumeration_budget) {
    detail::require(r >= 1, "rank must be >= 1");
    const BigInt total = count_words(r, n, model);
    detail::require_budget(total <= budget, "enumeration of " + total.str() + " words exceeds budget " +
                                                std::to_string(budget));
    const bool reduced_only = model != SamplingModel::AllWords;
    const int alphabet = 2 * r;
    std::vector<Letter> buf(n);
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == n) {
            if (model == SamplingModel::CyclicallyReduced && n >= 2 && buf.front() == inverse_letter(buf.back())) return;
            visit(Word(r, buf));
            return;
        }
        for (int k = 0; k < alphabet; ++k) {
            const Letter l = symbol_letter(k, r);
            if (reduced_only && depth > 0 && buf[depth - 1] == inverse_letter(l)) continue;
            buf[depth] = l;
            rec(depth + 1);
        }
    };
    rec(0);
}

inline std::vector<Word> enumerate_words(int r, std::size_t n, SamplingModel model,
                                         std::uint64_t budget = default_enumeration_budget) {
    std::vector<Word> out;
    for_each_word(r, n, model, [&](Word w) { out.push_back(std::move(w)); }, budget);
    return out;
}

}  // namespace avgcase
