#pragma once

#include "avgcase/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace avgcase {

/// Nearest-rank quantile of already sorted data: element ceil(q*N) (1-based), q in (0, 1].
template <typename T>
T nearest_rank(std::span<const T> sorted, double q) {
    detail::require(!sorted.empty(), "quantile of empty data");
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

inline double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Sample standard deviation (N-1 denominator); 0 for fewer than two values.
inline double stddev_of(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope*x + intercept.
inline LinearFit least_squares(std::span<const double> xs, std::span<const double> ys) {
    detail::require(xs.size() == ys.size() && xs.size() >= 2, "least squares needs >= 2 paired points");
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    detail::require(sxx > 0.0, "least squares needs distinct x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

}  // namespace avgcase
