#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "mstfolio/errors.hpp"
#include "mstfolio/prices.hpp"

namespace mstfolio {

/// Daily closing levels of the market index, aligned to panel dates.
struct IndexSeries {
    std::vector<std::string> dates;
    std::vector<double> levels;

    std::size_t size() const { return levels.size(); }

    void validate() const {
        if (dates.size() != levels.size()) throw ValidationError("index series: date/level size mismatch");
        for (std::size_t j = 0; j < levels.size(); ++j)
            if (!std::isfinite(levels[j]) || levels[j] <= 0.0)
                throw ValidationError("index series: non-positive level on " + dates[j]);
        for (std::size_t j = 1; j < dates.size(); ++j)
            if (!(dates[j - 1] < dates[j]))
                throw ValidationError("index series: dates not strictly increasing at " + dates[j]);
    }
};

/// Read rows of (date, close).
inline IndexSeries load_index(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty index input", 1);
    ++line_no;

    IndexSeries s;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty()) continue;
        const std::size_t c = sv.find(',');
        if (c == std::string_view::npos) throw ParseError("expected 2 comma-separated fields", line_no);
        const std::string_view date_f = detail::trim(sv.substr(0, c));
        if (!detail::looks_like_iso_date(date_f))
            throw ParseError("date '" + std::string(date_f) + "' is not YYYY-MM-DD", line_no);
        s.dates.emplace_back(date_f);
        s.levels.push_back(detail::parse_price(detail::trim(sv.substr(c + 1)), line_no));
    }
    s.validate();
    return s;
}

inline IndexSeries load_index_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open index file: " + path);
    return load_index(in);
}

/// Market condition over a horizon: drawup (U), stable (S) or drawdown (D).
enum class Condition { drawup, stable, drawdown };

inline char to_char(Condition c) {
    switch (c) {
    case Condition::drawup: return 'U';
    case Condition::stable: return 'S';
    case Condition::drawdown: return 'D';
    }
    return '?';
}

enum class RegimeCriterion { trading_day, amplitude, logical_or, logical_and };

inline const char* to_string(RegimeCriterion c) {
    switch (c) {
    case RegimeCriterion::trading_day: return "trading_day";
    case RegimeCriterion::amplitude: return "amplitude";
    case RegimeCriterion::logical_or: return "or";
    case RegimeCriterion::logical_and: return "and";
    }
    return "?";
}

inline const std::vector<RegimeCriterion>& all_criteria() {
    static const std::vector<RegimeCriterion> c{RegimeCriterion::trading_day, RegimeCriterion::amplitude,
                                                RegimeCriterion::logical_or, RegimeCriterion::logical_and};
    return c;
}

struct RegimeConfig {
    double theta_plus = 0.55;
    double theta_minus = 0.45;
    RegimeCriterion criterion = RegimeCriterion::trading_day;

    void validate() const {
        if (!(theta_minus > 0.0 && theta_minus <= theta_plus && theta_plus < 1.0))
            throw ValidationError("regime thresholds must satisfy 0 < theta_minus <= theta_plus < 1");
    }
};

/// Fraction of strictly rising days among the comparable days of the index
/// window [first, last] (the first day has no predecessor inside the window,
/// so there are last-first comparable days). Flat days count as non-rising.
inline double ratio_trading_days(const IndexSeries& index, int first, int last) {
    if (first < 0 || last >= static_cast<int>(index.size()) || last - first + 1 < 2)
        throw ContractError("ratio_trading_days: window shorter than 2 days");
    int rises = 0;
    for (int t = first + 1; t <= last; ++t)
        if (index.levels[t] > index.levels[t - 1]) ++rises;
    return static_cast<double>(rises) / static_cast<double>(last - first);
}

/// Share of the total absolute daily movement that happened on rising days.
inline double ratio_amplitude(const IndexSeries& index, int first, int last) {
    if (first < 0 || last >= static_cast<int>(index.size()) || last - first + 1 < 2)
        throw ContractError("ratio_amplitude: window shorter than 2 days");
    double up = 0.0, total = 0.0;
    for (int t = first + 1; t <= last; ++t) {
        const double change = index.levels[t] - index.levels[t - 1];
        total += std::abs(change);
        if (change > 0.0) up += change;
    }
    if (total == 0.0) throw DegenerateError("ratio_amplitude: all daily changes are zero");
    return up / total;
}

/// Classify a window from its ratios. The stable band is the closed interval
/// [theta_minus, theta_plus]; a ratio exactly on a threshold is stable.
/// Under the "or" criterion, one ratio above theta_plus while the other is
/// below theta_minus is contradictory and raises an error.
inline Condition classify(double r_d, std::optional<double> r_f, const RegimeConfig& config) {
    config.validate();
    const double tp = config.theta_plus, tm = config.theta_minus;
    const auto one = [&](double r) {
        if (r > tp) return Condition::drawup;
        if (r < tm) return Condition::drawdown;
        return Condition::stable;
    };

    switch (config.criterion) {
    case RegimeCriterion::trading_day:
        return one(r_d);
    case RegimeCriterion::amplitude:
        if (!r_f) throw ContractError("classify: amplitude criterion needs r_f");
        return one(*r_f);
    case RegimeCriterion::logical_or: {
        if (!r_f) throw ContractError("classify: 'or' criterion needs r_f");
        const Condition a = one(r_d), b = one(*r_f);
        const bool up = a == Condition::drawup || b == Condition::drawup;
        const bool down = a == Condition::drawdown || b == Condition::drawdown;
        if (up && down)
            throw DegenerateError("classify: contradictory 'or' case, one ratio above theta_plus and "
                                  "the other below theta_minus");
        if (up) return Condition::drawup;
        if (down) return Condition::drawdown;
        return Condition::stable;
    }
    case RegimeCriterion::logical_and: {
        if (!r_f) throw ContractError("classify: 'and' criterion needs r_f");
        const Condition a = one(r_d), b = one(*r_f);
        if (a == Condition::drawup && b == Condition::drawup) return Condition::drawup;
        if (a == Condition::drawdown && b == Condition::drawdown) return Condition::drawdown;
        return Condition::stable;
    }
    }
    throw ContractError("classify: unknown criterion");
}

/// Ordered pair of selection-horizon and investment-horizon conditions:
/// one of the nine labels UU, US, UD, SU, SS, SD, DU, DS, DD.
struct Combination {
    Condition selection = Condition::stable;
    Condition investment = Condition::stable;

    bool operator==(const Combination&) const = default;
};

inline Combination combine(Condition selection, Condition investment) {
    return Combination{selection, investment};
}

inline std::string to_label(Combination c) {
    return std::string{to_char(c.selection), to_char(c.investment)};
}

inline const std::vector<Combination>& all_combinations() {
    static const std::vector<Combination> all = [] {
        std::vector<Combination> v;
        for (Condition s : {Condition::drawup, Condition::stable, Condition::drawdown})
            for (Condition i : {Condition::drawup, Condition::stable, Condition::drawdown})
                v.push_back({s, i});
        return v;
    }();
    return all;
}

} // namespace mstfolio
