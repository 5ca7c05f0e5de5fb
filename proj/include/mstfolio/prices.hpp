#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "mstfolio/errors.hpp"

namespace mstfolio {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Aligned daily adjusted closing prices, one row per stock (tickers in
/// lexicographic order), one column per trading date (strictly increasing
/// ISO-8601). missing(i, j) marks days on which ticker i did not trade;
/// prices at missing cells are meaningless until filter_liquidity fills them.
struct PricePanel {
    std::vector<std::string> tickers;
    std::vector<std::string> dates;
    Eigen::MatrixXd prices;
    BoolMatrix missing;

    Eigen::Index n_stocks() const { return prices.rows(); }
    Eigen::Index n_days() const { return prices.cols(); }

    bool complete() const {
        for (Eigen::Index i = 0; i < missing.rows(); ++i)
            for (Eigen::Index j = 0; j < missing.cols(); ++j)
                if (missing(i, j)) return false;
        return true;
    }

    Eigen::Index missing_days(Eigen::Index stock) const {
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < missing.cols(); ++j)
            if (missing(stock, j)) ++c;
        return c;
    }

    void validate() const {
        if (prices.rows() != static_cast<Eigen::Index>(tickers.size()) ||
            prices.cols() != static_cast<Eigen::Index>(dates.size()))
            throw ValidationError("price panel dimensions do not match ticker/date lists");
        if (missing.rows() != prices.rows() || missing.cols() != prices.cols())
            throw ValidationError("missing-mask dimensions do not match price matrix");
        for (std::size_t j = 1; j < dates.size(); ++j)
            if (!(dates[j - 1] < dates[j]))
                throw ValidationError("dates not strictly increasing at " + dates[j]);
        for (Eigen::Index i = 0; i < prices.rows(); ++i)
            for (Eigen::Index j = 0; j < prices.cols(); ++j)
                if (!missing(i, j) && (!std::isfinite(prices(i, j)) || prices(i, j) <= 0.0))
                    throw ValidationError("non-positive or non-finite price for " + tickers[i] +
                                          " on " + dates[j]);
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool looks_like_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline double parse_price(std::string_view s, std::size_t line) {
    const std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw ParseError("unreadable price field '" + buf + "'", line);
    return v;
}

} // namespace detail

/// Read rows of (date, ticker, adjusted_close) into a panel aligned on the
/// union of all dates. Days a ticker did not trade are marked missing.
/// Ticker order is lexicographic so every downstream tie-break is
/// deterministic.
inline PricePanel load_prices(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty input", 1);
    ++line_no;
    // header row: date,ticker,adjusted_close
    {
        std::string_view h = detail::trim(line);
        if (h.substr(0, 4) != "date") throw ParseError("missing 'date,ticker,adjusted_close' header", line_no);
    }

    struct Row {
        std::string date, ticker;
        double price;
    };
    std::vector<Row> rows;
    std::map<std::string, int> date_ix;
    std::map<std::string, int> ticker_ix;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = detail::trim(line);
        if (sv.empty()) continue;
        const std::size_t c1 = sv.find(',');
        const std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos : sv.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw ParseError("expected 3 comma-separated fields", line_no);
        const std::string_view date_f = detail::trim(sv.substr(0, c1));
        const std::string_view ticker_f = detail::trim(sv.substr(c1 + 1, c2 - c1 - 1));
        const std::string_view price_f = detail::trim(sv.substr(c2 + 1));
        if (!detail::looks_like_iso_date(date_f))
            throw ParseError("date '" + std::string(date_f) + "' is not YYYY-MM-DD", line_no);
        if (ticker_f.empty()) throw ParseError("empty ticker field", line_no);
        const double price = detail::parse_price(price_f, line_no);
        if (!std::isfinite(price) || price <= 0.0)
            throw ValidationError("non-positive price " + std::string(price_f) + " for " +
                                  std::string(ticker_f) + " on " + std::string(date_f) + " (line " +
                                  std::to_string(line_no) + ")");
        rows.push_back({std::string(date_f), std::string(ticker_f), price});
        date_ix.emplace(rows.back().date, 0);
        ticker_ix.emplace(rows.back().ticker, 0);
    }

    if (date_ix.size() < 2) throw ValidationError("need at least 2 distinct dates");

    PricePanel panel;
    panel.dates.reserve(date_ix.size());
    for (auto& [d, ix] : date_ix) {
        ix = static_cast<int>(panel.dates.size());
        panel.dates.push_back(d);
    }
    panel.tickers.reserve(ticker_ix.size());
    for (auto& [t, ix] : ticker_ix) {
        ix = static_cast<int>(panel.tickers.size());
        panel.tickers.push_back(t);
    }

    const auto n = static_cast<Eigen::Index>(panel.tickers.size());
    const auto d = static_cast<Eigen::Index>(panel.dates.size());
    panel.prices = Eigen::MatrixXd::Zero(n, d);
    panel.missing = BoolMatrix::Constant(n, d, true);

    for (const Row& row : rows) {
        const Eigen::Index i = ticker_ix[row.ticker];
        const Eigen::Index j = date_ix[row.date];
        if (!panel.missing(i, j))
            throw ValidationError("duplicate (date,ticker) pair " + row.date + "," + row.ticker);
        panel.prices(i, j) = row.price;
        panel.missing(i, j) = false;
    }

    panel.validate();
    return panel;
}

inline PricePanel load_prices_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open data file: " + path);
    return load_prices(in);
}

/// Drop every ticker with more than max_gap_days missing days; fill the
/// surviving gaps with the last observed price, so filled days carry zero
/// return. Gaps before the first observation take the first observed price.
inline PricePanel filter_liquidity(const PricePanel& panel, int max_gap_days) {
    if (max_gap_days < 0) throw ContractError("filter_liquidity: max_gap_days must be >= 0");

    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < panel.n_stocks(); ++i)
        if (panel.missing_days(i) <= max_gap_days) keep.push_back(i);
    if (keep.empty()) throw InsufficientDataError("empty universe: every ticker exceeds the gap limit");

    PricePanel out;
    out.dates = panel.dates;
    out.tickers.reserve(keep.size());
    for (Eigen::Index i : keep) out.tickers.push_back(panel.tickers[i]);

    const auto n = static_cast<Eigen::Index>(keep.size());
    const Eigen::Index d = panel.n_days();
    out.prices = Eigen::MatrixXd::Zero(n, d);
    out.missing = BoolMatrix::Constant(n, d, false);

    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index src = keep[r];
        Eigen::Index first_obs = -1;
        for (Eigen::Index j = 0; j < d; ++j) {
            if (!panel.missing(src, j)) {
                first_obs = j;
                break;
            }
        }
        if (first_obs < 0) throw ValidationError("ticker " + panel.tickers[src] + " has no observations");
        double last = panel.prices(src, first_obs);
        for (Eigen::Index j = 0; j < d; ++j) {
            if (!panel.missing(src, j)) last = panel.prices(src, j);
            out.prices(r, j) = last;
        }
    }

    out.validate();
    return out;
}

} // namespace mstfolio
