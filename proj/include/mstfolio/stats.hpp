#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "mstfolio/errors.hpp"

namespace mstfolio {

/// Population-normalized moments of a sample. skewness is m3/m2^1.5 and
/// kurtosis is m4/m2^2 (plain, not excess: a normal sample gives ~3).
/// Both are NaN when the sample has zero variance.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

inline Moments compute_moments(std::span<const double> values) {
    if (values.empty()) throw ContractError("compute_moments: empty sample");
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    Moments out;
    out.mean = mean;
    out.variance = m2;
    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.kurtosis = m4 / (m2 * m2);
    } else {
        out.skewness = std::numeric_limits<double>::quiet_NaN();
        out.kurtosis = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

inline double mean_of(std::span<const double> values) {
    if (values.empty()) throw ContractError("mean_of: empty sample");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

/// Sample standard deviation (n-1 normalization). Needs at least 2 values.
inline double sample_std(std::span<const double> values) {
    if (values.size() < 2) throw ContractError("sample_std: need at least 2 values");
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

/// Pearson correlation of two equal-length sequences. Population
/// normalization cancels in the ratio. Throws on zero variance.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ContractError("pearson: length mismatch");
    if (x.size() < 2) throw ContractError("pearson: need at least 2 observations");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw DegenerateError("pearson: zero-variance sequence");
    double r = sxy / std::sqrt(sxx * syy);
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;
    return r;
}

} // namespace mstfolio
