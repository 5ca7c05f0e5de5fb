#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mstfolio/errors.hpp"
#include "mstfolio/returns.hpp"

namespace mstfolio {

/// Symmetric Pearson matrix with unit diagonal, entries clamped to [-1, 1].
struct CorrMatrix {
    std::vector<std::string> tickers;
    Eigen::MatrixXd values;

    Eigen::Index size() const { return values.rows(); }
};

/// Symmetric matrix of d(i,j) = sqrt(2(1-rho(i,j))), entries in [0, 2],
/// zero diagonal. Small distance means strong positive correlation.
struct DistMatrix {
    std::vector<std::string> tickers;
    Eigen::MatrixXd values;

    Eigen::Index size() const { return values.rows(); }
};

/// Pearson correlations over return columns [first_col, last_col], inclusive.
/// Population normalization is used throughout; the ratio is invariant to it.
inline CorrMatrix pearson_matrix(const ReturnPanel& panel, int first_col, int last_col) {
    if (first_col < 0 || last_col >= panel.n_days() || first_col > last_col)
        throw ContractError("pearson_matrix: window out of range");
    const Eigen::Index len = last_col - first_col + 1;
    if (len < 2) throw ContractError("pearson_matrix: window shorter than 2 days");

    Eigen::MatrixXd w = panel.returns.middleCols(first_col, len);
    const Eigen::VectorXd means = w.rowwise().mean();
    w.colwise() -= means;

    const Eigen::MatrixXd cov = (w * w.transpose()) / static_cast<double>(len);
    const Eigen::Index n = cov.rows();

    Eigen::VectorXd sd(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double var = cov(i, i);
        const double floor = 1e-300 + std::pow(std::abs(means(i)) * 1e-13, 2);
        if (var <= floor)
            throw DegenerateError("pearson_matrix: zero-variance series for ticker " + panel.tickers[i] +
                                  " in window");
        sd(i) = std::sqrt(var);
    }

    CorrMatrix out;
    out.tickers = panel.tickers;
    out.values = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double r = cov(i, j) / (sd(i) * sd(j));
            if (r > 1.0) r = 1.0;
            if (r < -1.0) r = -1.0;
            out.values(i, j) = r;
            out.values(j, i) = r;
        }
    }
    return out;
}

inline DistMatrix distance_matrix(const CorrMatrix& corr) {
    DistMatrix out;
    out.tickers = corr.tickers;
    const Eigen::Index n = corr.size();
    out.values = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d = std::sqrt(std::max(0.0, 2.0 * (1.0 - corr.values(i, j))));
            if (d > 2.0) d = 2.0;
            out.values(i, j) = d;
            out.values(j, i) = d;
        }
    }
    return out;
}

} // namespace mstfolio
