#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mstfolio/errors.hpp"
#include "mstfolio/returns.hpp"
#include "mstfolio/selection.hpp"
#include "mstfolio/stats.hpp"

namespace mstfolio {

/// Cumulative log return of each portfolio member over the investment
/// horizon [anchor+1, anchor+horizon_days] (return columns), plus their
/// equal-weight mean.
struct HorizonResult {
    int anchor = -1;
    std::string anchor_date;
    std::vector<double> stock_returns;
    double portfolio_return = 0.0;
};

/// Per-stock cumulative return columns: cum(i, j) = sum of returns(i, 0..j-1),
/// with a leading zero column, so a horizon sum is one subtraction.
inline Eigen::MatrixXd cumulative_returns(const ReturnPanel& panel) {
    Eigen::MatrixXd cum(panel.n_stocks(), panel.n_days() + 1);
    cum.col(0).setZero();
    for (Eigen::Index j = 0; j < panel.n_days(); ++j) cum.col(j + 1) = cum.col(j) + panel.returns.col(j);
    return cum;
}

inline int ticker_index(const std::vector<std::string>& tickers, const std::string& name) {
    const auto it = std::lower_bound(tickers.begin(), tickers.end(), name);
    if (it == tickers.end() || *it != name) throw ContractError("unknown ticker " + name);
    return static_cast<int>(it - tickers.begin());
}

inline HorizonResult horizon_return(const Portfolio& portfolio, const ReturnPanel& panel, int anchor,
                                    int horizon_days) {
    if (anchor < 0 || anchor + horizon_days > panel.n_days() - 1)
        throw ContractError("horizon_return: horizon exceeds the return panel");
    HorizonResult r;
    r.anchor = anchor;
    r.anchor_date = panel.dates[anchor];
    r.stock_returns.reserve(portfolio.members.size());
    double sum = 0.0;
    for (const std::string& name : portfolio.members) {
        const int i = ticker_index(panel.tickers, name);
        double cum = 0.0;
        for (int j = anchor + 1; j <= anchor + horizon_days; ++j) cum += panel.returns(i, j);
        r.stock_returns.push_back(cum);
        sum += cum;
    }
    if (r.stock_returns.empty()) throw ContractError("horizon_return: empty portfolio");
    r.portfolio_return = sum / static_cast<double>(r.stock_returns.size());
    return r;
}

/// Difference of the pooled per-stock average returns of two groups.
inline double excess_return(std::span<const double> selected, std::span<const double> random_group) {
    if (selected.empty() || random_group.empty())
        throw InsufficientDataError("excess_return: empty group");
    return mean_of(selected) - mean_of(random_group);
}

/// Mean over sample standard deviation of an excess-return series.
inline double sharpe(std::span<const double> excess_series) {
    if (excess_series.size() < 2) throw ContractError("sharpe: need at least 2 values");
    const double m = mean_of(excess_series);
    const double sd = sample_std(excess_series);
    // constant series leave rounding dust instead of an exact zero
    if (sd <= std::abs(m) * 1e-12 + 1e-300) throw DegenerateError("sharpe: zero standard deviation");
    return m / sd;
}

} // namespace mstfolio
