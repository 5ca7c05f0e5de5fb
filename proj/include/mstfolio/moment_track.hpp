#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mstfolio/correlation.hpp"
#include "mstfolio/stats.hpp"
#include "mstfolio/window.hpp"

namespace mstfolio {

/// Per-anchor moments of the off-diagonal elements of the correlation and
/// distance matrices, and the Pearson cross-correlation of each paired
/// moment track over anchors. A cross-correlation is absent when there are
/// fewer than 2 anchors or a track has no variation.
struct MomentTrack {
    std::vector<int> anchors;
    std::vector<std::string> anchor_dates;
    std::vector<Moments> corr_moments;
    std::vector<Moments> dist_moments;
    std::optional<double> cross_mean;
    std::optional<double> cross_variance;
    std::optional<double> cross_skewness;
    std::optional<double> cross_kurtosis;
};

namespace detail {

inline std::vector<double> upper_triangle(const Eigen::MatrixXd& m) {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(m.rows()) * (m.rows() - 1) / 2);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

inline std::optional<double> safe_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) return std::nullopt;
    try {
        return pearson(x, y);
    } catch (const DegenerateError&) {
        return std::nullopt;
    }
}

} // namespace detail

inline MomentTrack moment_track(const WindowSchedule& schedule, const ReturnPanel& panel) {
    if (schedule.anchors.empty()) throw ContractError("moment_track: empty schedule");

    MomentTrack track;
    std::vector<double> cm, cv, cs, ck, dm, dv, ds, dk;
    for (int t : schedule.anchors) {
        const CorrMatrix corr = pearson_matrix(panel, t - schedule.window_days + 1, t);
        const DistMatrix dist = distance_matrix(corr);
        const Moments mc = compute_moments(detail::upper_triangle(corr.values));
        const Moments md = compute_moments(detail::upper_triangle(dist.values));
        track.anchors.push_back(t);
        track.anchor_dates.push_back(panel.dates[t]);
        track.corr_moments.push_back(mc);
        track.dist_moments.push_back(md);
        cm.push_back(mc.mean);
        cv.push_back(mc.variance);
        cs.push_back(mc.skewness);
        ck.push_back(mc.kurtosis);
        dm.push_back(md.mean);
        dv.push_back(md.variance);
        ds.push_back(md.skewness);
        dk.push_back(md.kurtosis);
    }

    track.cross_mean = detail::safe_pearson(cm, dm);
    track.cross_variance = detail::safe_pearson(cv, dv);
    track.cross_skewness = detail::safe_pearson(cs, ds);
    track.cross_kurtosis = detail::safe_pearson(ck, dk);
    return track;
}

} // namespace mstfolio
