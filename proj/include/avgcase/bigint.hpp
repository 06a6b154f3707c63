#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

namespace avgcase {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Natural log of |x|; -inf for zero. Accurate to double precision for any magnitude.
inline double log_abs(const BigInt& x) {
    if (x == 0) return -HUGE_VAL;
    BigInt m = boost::multiprecision::abs(x);
    const std::size_t bits = boost::multiprecision::msb(m) + 1;
    if (bits <= 60) return std::log(m.convert_to<double>());
    const std::size_t shift = bits - 60;
    m >>= shift;
    return std::log(m.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log10_abs(const BigInt& x) { return log_abs(x) / std::log(10.0); }

inline double log_ratio(const BigInt& num, const BigInt& den) { return log_abs(num) - log_abs(den); }

/// Number of 64-bit limbs needed to hold |x| (at least 1).
inline std::uint64_t limb_count(const BigInt& x) {
    if (x == 0) return 1;
    return (boost::multiprecision::msb(boost::multiprecision::abs(x)) / 64) + 1;
}

inline BigInt ipow(const BigInt& base, std::uint64_t e) {
    BigInt result = 1;
    BigInt b = base;
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b *= b;
    }
    return result;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline double to_double(const BigRational& q) { return q.convert_to<double>(); }

}  // namespace avgcase
