#pragma once

#include <vector>

#include "mstfolio/errors.hpp"

namespace mstfolio {

/// Rolling selection/investment windows over a daily panel.
///
/// total_days counts the panel's price rows; differencing drops the first
/// row, so anchors index the derived return series (column t is the return
/// realized on price day t+1). Anchor t spans selection returns
/// [t-window_days+1, t] and investment returns [t+1, t+horizon_days]; the
/// last investment return must exist, which bounds t+horizon_days by
/// total_days-2.
struct WindowSchedule {
    int window_days = 0;
    int step_days = 0;
    int horizon_days = 0;
    std::vector<int> anchors;
};

inline WindowSchedule make_schedule(int total_days, int window_days, int step_days, int horizon_days) {
    if (window_days < 2) throw ContractError("make_schedule: window_days must be >= 2");
    if (step_days < 1) throw ContractError("make_schedule: step_days must be >= 1");
    if (horizon_days < 1) throw ContractError("make_schedule: horizon_days must be >= 1");

    WindowSchedule s;
    s.window_days = window_days;
    s.step_days = step_days;
    s.horizon_days = horizon_days;
    for (long t = window_days - 1; t + horizon_days <= static_cast<long>(total_days) - 2; t += step_days)
        s.anchors.push_back(static_cast<int>(t));
    if (s.anchors.empty())
        throw InsufficientDataError("empty schedule: " + std::to_string(total_days) +
                                    " days cannot hold one selection window plus one horizon");
    return s;
}

} // namespace mstfolio
