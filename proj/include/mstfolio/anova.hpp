#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "mstfolio/errors.hpp"
#include "mstfolio/stats.hpp"

namespace mstfolio {

namespace detail {

/// Continued fraction for the regularized incomplete beta, modified Lentz.
inline double betacf(double a, double b, double x) {
    constexpr int max_iter = 500;
    constexpr double eps = 1e-15;
    constexpr double fpmin = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw DegenerateError("incomplete beta: continued fraction did not converge");
}

} // namespace detail

/// Regularized incomplete beta I_x(a, b), relative error well below 1e-10.
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ContractError("incomplete beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::betacf(a, b, x) / a;
    return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

/// Upper tail of the F distribution: P(F_{df1, df2} > f).
inline double f_upper_tail(double f, double df1, double df2) {
    if (f <= 0.0) return 1.0;
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

struct AnovaResult {
    double f_value = 0.0;
    double p_value = 1.0;
    int df_between = 0;
    int df_within = 0;
};

/// One-way ANOVA over k groups: F = MSB/MSW with df (k-1, N-k), p-value from
/// the upper F tail via the regularized incomplete beta.
inline AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw ContractError("anova_oneway: need at least 2 groups");
    std::size_t total_n = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw ContractError("anova_oneway: every group needs at least 2 values");
        total_n += g.size();
    }

    double grand = 0.0;
    for (const auto& g : groups)
        for (double v : g) grand += v;
    grand /= static_cast<double>(total_n);

    double ssb = 0.0, ssw = 0.0;
    for (const auto& g : groups) {
        const double m = mean_of(g);
        ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) ssw += (v - m) * (v - m);
    }

    AnovaResult r;
    r.df_between = static_cast<int>(groups.size()) - 1;
    r.df_within = static_cast<int>(total_n - groups.size());
    if (ssw <= 0.0) throw DegenerateError("anova_oneway: zero within-group variance");
    const double msb = ssb / r.df_between;
    const double msw = ssw / r.df_within;
    r.f_value = msb / msw;
    r.p_value = f_upper_tail(r.f_value, r.df_between, r.df_within);
    return r;
}

inline AnovaResult anova_oneway(std::span<const double> group_a, std::span<const double> group_b) {
    return anova_oneway(std::vector<std::vector<double>>{
        std::vector<double>(group_a.begin(), group_a.end()),
        std::vector<double>(group_b.begin(), group_b.end())});
}

} // namespace mstfolio
