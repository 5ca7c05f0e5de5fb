#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mstfolio/errors.hpp"
#include "mstfolio/prices.hpp"
#include "mstfolio/stats.hpp"

namespace mstfolio {

/// Daily log returns, one column per return day. Column j is the return
/// realized on the source panel's date j+1, and dates[j] carries that date,
/// so the panel has one date fewer than its source.
struct ReturnPanel {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    Eigen::MatrixXd returns;

    Eigen::Index n_stocks() const { return returns.rows(); }
    Eigen::Index n_days() const { return returns.cols(); }
};

inline ReturnPanel compute_returns(const PricePanel& panel) {
    if (panel.n_days() < 2) throw ContractError("compute_returns: need at least 2 dates");
    if (!panel.complete())
        throw ContractError("compute_returns: panel has unfilled missing days; run filter_liquidity first");

    ReturnPanel out;
    out.tickers = panel.tickers;
    out.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    out.returns = panel.prices.rightCols(panel.n_days() - 1).array().log() -
                  panel.prices.leftCols(panel.n_days() - 1).array().log();
    return out;
}

/// Descriptive statistics of the pooled return sample (all stocks, all days).
/// stddev uses the n-1 sample normalization; skewness and kurtosis are the
/// standardized third and fourth central moments, kurtosis plain (normal ~3).
struct StatsReport {
    std::size_t stocks = 0;
    std::size_t records = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double max = 0.0;
    double min = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;
};

inline StatsReport summary_stats(const ReturnPanel& panel) {
    const std::size_t n = static_cast<std::size_t>(panel.returns.size());
    if (n < 2) throw ContractError("summary_stats: need at least 2 pooled observations");

    std::vector<double> pooled;
    pooled.reserve(n);
    for (Eigen::Index j = 0; j < panel.n_days(); ++j)
        for (Eigen::Index i = 0; i < panel.n_stocks(); ++i) pooled.push_back(panel.returns(i, j));

    const Moments m = compute_moments(pooled);
    if (m.variance <= 0.0)
        throw DegenerateError("summary_stats: zero pooled variance, skewness/kurtosis undefined");

    StatsReport r;
    r.stocks = panel.tickers.size();
    r.records = n;
    r.mean = m.mean;
    r.stddev = sample_std(pooled);
    r.max = *std::max_element(pooled.begin(), pooled.end());
    r.min = *std::min_element(pooled.begin(), pooled.end());
    r.skewness = m.skewness;
    r.kurtosis = m.kurtosis;
    return r;
}

} // namespace mstfolio
