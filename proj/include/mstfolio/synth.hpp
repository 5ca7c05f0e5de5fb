#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "mstfolio/errors.hpp"
#include "mstfolio/prices.hpp"
#include "mstfolio/regime.hpp"
#include "mstfolio/rng.hpp"

namespace mstfolio {

namespace detail {

// civil-date <-> serial-day conversion (proleptic Gregorian)
inline long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

inline void civil_from_days(long z, int& y, int& m, int& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yy = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

inline long parse_date_serial(const std::string& iso) {
    if (!looks_like_iso_date(iso)) throw ValidationError("bad ISO date: " + iso);
    return days_from_civil(std::stoi(iso.substr(0, 4)), std::stoi(iso.substr(5, 2)),
                           std::stoi(iso.substr(8, 2)));
}

inline std::string format_date(long serial) {
    int y, m, d;
    civil_from_days(serial, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
    return buf;
}

} // namespace detail

/// One index-regime segment: a run of days with a fixed drift sign.
struct SynthSegment {
    Condition condition = Condition::stable;
    int days = 0;
};

/// Parse "U:600,S:600,D:400" into segments; the pattern repeats to cover the
/// whole sample.
inline std::vector<SynthSegment> parse_segments(const std::string& spec) {
    std::vector<SynthSegment> segs;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        const std::string item = spec.substr(pos, end - pos);
        const std::size_t colon = item.find(':');
        if (colon != 1 || item.size() < 3)
            throw ValidationError("bad segment '" + item + "', expect e.g. U:600");
        SynthSegment s;
        switch (item[0]) {
        case 'U': s.condition = Condition::drawup; break;
        case 'S': s.condition = Condition::stable; break;
        case 'D': s.condition = Condition::drawdown; break;
        default: throw ValidationError("bad segment condition in '" + item + "'");
        }
        s.days = std::stoi(item.substr(colon + 1));
        if (s.days < 1) throw ValidationError("segment length must be positive in '" + item + "'");
        segs.push_back(s);
        pos = end + 1;
    }
    if (segs.empty()) throw ValidationError("empty segment spec");
    return segs;
}

/// Block-correlated Gaussian log-return market with a driftable stock block.
/// The first block_size stocks share a common factor giving pairwise
/// correlation block_rho, and earn planted_drift extra cumulative return per
/// horizon_days on days whose index segment is a drawup. The index itself
/// trends up/down/flat by segment.
struct SynthSpec {
    int n_stocks = 60;
    int n_days = 3600;
    int block_size = 18;
    double block_rho = 0.6;
    double market_rho = 0.0;    // common-factor correlation of non-block stocks
    double stock_vol = 0.005;   // daily log-return sigma
    double index_vol = 0.01;
    double index_trend = 0.007; // daily drift magnitude inside U/D segments
    double planted_drift = 0.0; // extra block return per horizon_days in U segments
    int horizon_days = 200;
    std::string segments = "S:100000";
    std::uint64_t seed = 1;
    double base_price = 100.0;
    std::string start_date = "2000-01-03";

    void validate() const {
        if (n_stocks < 2 || n_days < 3) throw ValidationError("synth: need >= 2 stocks and >= 3 days");
        if (block_size < 0 || block_size > n_stocks)
            throw ValidationError("synth: block_size out of range");
        if (!(block_rho >= 0.0 && block_rho < 1.0))
            throw ValidationError("synth: block_rho must lie in [0, 1)");
        if (!(market_rho >= 0.0 && market_rho < 1.0))
            throw ValidationError("synth: market_rho must lie in [0, 1)");
        if (!(stock_vol > 0.0 && index_vol > 0.0)) throw ValidationError("synth: vols must be positive");
        if (horizon_days < 1) throw ValidationError("synth: horizon_days must be >= 1");
    }
};

struct SynthMarket {
    PricePanel panel;
    IndexSeries index;
    std::vector<Condition> day_condition; // per day, from the segment pattern
    std::vector<std::string> block_tickers;
};

inline SynthMarket generate_market(const SynthSpec& spec) {
    spec.validate();
    const std::vector<SynthSegment> segs = parse_segments(spec.segments);

    SynthMarket mkt;
    mkt.day_condition.reserve(spec.n_days);
    {
        std::size_t si = 0;
        int left = segs[0].days;
        for (int d = 0; d < spec.n_days; ++d) {
            mkt.day_condition.push_back(segs[si].condition);
            if (--left == 0) {
                si = (si + 1) % segs.size();
                left = segs[si].days;
            }
        }
    }

    mkt.panel.dates.reserve(spec.n_days);
    const long start = detail::parse_date_serial(spec.start_date);
    for (int d = 0; d < spec.n_days; ++d) mkt.panel.dates.push_back(detail::format_date(start + d));

    mkt.panel.tickers.reserve(spec.n_stocks);
    for (int i = 0; i < spec.n_stocks; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "S%04d", i);
        mkt.panel.tickers.emplace_back(buf);
        if (i < spec.block_size) mkt.block_tickers.emplace_back(buf);
    }

    // one common factor; loadings set pairwise correlations to block_rho
    // inside the block, market_rho outside, sqrt(block_rho*market_rho) across
    const double block_load = std::sqrt(spec.block_rho);
    const double block_noise = std::sqrt(1.0 - spec.block_rho);
    const double market_load = std::sqrt(spec.market_rho);
    const double market_noise = std::sqrt(1.0 - spec.market_rho);
    const double daily_drift = spec.planted_drift / spec.horizon_days;

    Rng rng(derive_seed(spec.seed, 0xD47Aull));
    mkt.panel.prices = Eigen::MatrixXd::Zero(spec.n_stocks, spec.n_days);
    mkt.panel.missing = BoolMatrix::Constant(spec.n_stocks, spec.n_days, false);
    mkt.panel.prices.col(0).setConstant(spec.base_price);

    for (int d = 1; d < spec.n_days; ++d) {
        const bool up_day = mkt.day_condition[d] == Condition::drawup;
        const double factor = rng.normal();
        for (int i = 0; i < spec.n_stocks; ++i) {
            const bool in_block = i < spec.block_size;
            const double load = in_block ? block_load : market_load;
            const double noise = in_block ? block_noise : market_noise;
            double r = spec.stock_vol * (load * factor + noise * rng.normal());
            if (up_day && in_block) r += daily_drift;
            mkt.panel.prices(i, d) = mkt.panel.prices(i, d - 1) * std::exp(r);
        }
    }

    Rng idx_rng(derive_seed(spec.seed, 0x1D38ull));
    mkt.index.dates = mkt.panel.dates;
    mkt.index.levels.resize(spec.n_days);
    mkt.index.levels[0] = 1000.0;
    for (int d = 1; d < spec.n_days; ++d) {
        double drift = 0.0;
        if (mkt.day_condition[d] == Condition::drawup) drift = spec.index_trend;
        if (mkt.day_condition[d] == Condition::drawdown) drift = -spec.index_trend;
        mkt.index.levels[d] = mkt.index.levels[d - 1] * std::exp(drift + spec.index_vol * idx_rng.normal());
    }

    mkt.panel.validate();
    mkt.index.validate();
    return mkt;
}

inline void write_prices_csv(const PricePanel& panel, std::ostream& out) {
    out << "date,ticker,adjusted_close\n";
    char buf[32];
    for (Eigen::Index j = 0; j < panel.n_days(); ++j) {
        for (Eigen::Index i = 0; i < panel.n_stocks(); ++i) {
            if (panel.missing(i, j)) continue;
            std::snprintf(buf, sizeof buf, "%.8f", panel.prices(i, j));
            out << panel.dates[j] << ',' << panel.tickers[i] << ',' << buf << '\n';
        }
    }
}

inline void write_index_csv(const IndexSeries& index, std::ostream& out) {
    out << "date,close\n";
    char buf[32];
    for (std::size_t j = 0; j < index.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.8f", index.levels[j]);
        out << index.dates[j] << ',' << buf << '\n';
    }
}

} // namespace mstfolio
