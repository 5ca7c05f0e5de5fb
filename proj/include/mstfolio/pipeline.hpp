#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mstfolio/anova.hpp"
#include "mstfolio/backtest.hpp"
#include "mstfolio/correlation.hpp"
#include "mstfolio/errors.hpp"
#include "mstfolio/mst.hpp"
#include "mstfolio/prices.hpp"
#include "mstfolio/regime.hpp"
#include "mstfolio/returns.hpp"
#include "mstfolio/rng.hpp"
#include "mstfolio/selection.hpp"
#include "mstfolio/topology.hpp"
#include "mstfolio/window.hpp"

namespace mstfolio {

inline Parameter parse_parameter(const std::string& s) {
    for (Parameter p : all_parameters())
        if (s == to_string(p)) return p;
    throw ValidationError("unknown parameter '" + s + "' (expect K, C, D_degree, D_correlation, D_distance)");
}

inline RegimeCriterion parse_criterion(const std::string& s) {
    for (RegimeCriterion c : all_criteria())
        if (s == to_string(c)) return c;
    throw ValidationError("unknown criterion '" + s + "' (expect trading_day, amplitude, or, and)");
}

/// Every knob of a run. Defaults follow the headline configuration: 200-day
/// selection windows stepped by 20 days, 200-day investment horizons, 10%
/// portfolios, thresholds 0.55/0.45, 1000 benchmark draws, 11-sample
/// reporting floor, 10% significance.
struct RunConfig {
    std::string data_path;
    std::string index_path;
    std::string out_dir = "out";

    int window_days = 200;
    int step_days = 20;
    int horizon_days = 200;
    int max_gap_days = 46;
    double fraction = 0.10;

    double theta_plus = 0.55;
    double theta_minus = 0.45;
    RegimeCriterion criterion = RegimeCriterion::trading_day;
    Parameter parameter = Parameter::degree;

    std::uint64_t base_seed = 1;
    int random_draws = 1000;
    int min_samples = 11;
    double significance = 0.10;

    std::string train_end;   // anchor trains when its horizon ends on/before this date
    std::string test_start;  // anchor tests when its anchor date is on/after this date

    bool simple_returns = false; // report exp(sum)-1 instead of summed log returns
    bool hop_distance = false;   // distance metrics count hops instead of edge weights

    RegimeConfig regime(RegimeCriterion c) const { return RegimeConfig{theta_plus, theta_minus, c}; }

    void validate() const {
        if (window_days < 2 || step_days < 1 || horizon_days < 1)
            throw ValidationError("window/step/horizon sizes out of range");
        if (max_gap_days < 0) throw ValidationError("max_gap_days must be >= 0");
        if (!(fraction > 0.0 && fraction <= 0.5)) throw ValidationError("fraction must lie in (0, 0.5]");
        regime(criterion).validate();
        if (random_draws < 1) throw ValidationError("random_draws must be >= 1");
        if (min_samples < 1) throw ValidationError("min_samples must be >= 1");
        if (!(significance > 0.0 && significance < 1.0))
            throw ValidationError("significance must lie in (0, 1)");
        if (!train_end.empty() && !test_start.empty() && test_start < train_end)
            throw ValidationError("test_start must not precede train_end");
    }
};

/// A loaded market ready for anchor-by-anchor analysis: filtered panel, log
/// returns, index aligned to the panel dates, schedule, and cumulative
/// return columns for O(1) horizon sums.
struct MarketData {
    PricePanel panel;
    ReturnPanel returns;
    IndexSeries index;
    WindowSchedule schedule;
    Eigen::MatrixXd cum;
};

inline MarketData prepare_market(const PricePanel& raw_panel, const IndexSeries& raw_index,
                                 const RunConfig& config) {
    config.validate();
    MarketData md;
    md.panel = filter_liquidity(raw_panel, config.max_gap_days);
    md.returns = compute_returns(md.panel);
    md.schedule = make_schedule(static_cast<int>(md.panel.n_days()), config.window_days,
                                config.step_days, config.horizon_days);
    md.cum = cumulative_returns(md.returns);

    md.index.dates = md.panel.dates;
    md.index.levels.reserve(md.panel.dates.size());
    std::size_t k = 0;
    for (const std::string& d : md.panel.dates) {
        while (k < raw_index.dates.size() && raw_index.dates[k] < d) ++k;
        if (k >= raw_index.dates.size() || raw_index.dates[k] != d)
            throw ValidationError("index series has no level for panel date " + d);
        md.index.levels.push_back(raw_index.levels[k]);
    }
    return md;
}

constexpr std::size_t n_criteria = 4;
constexpr std::size_t n_parameters = 5;

inline std::size_t criterion_index(RegimeCriterion c) { return static_cast<std::size_t>(c); }
inline std::size_t parameter_index(Parameter p) { return static_cast<std::size_t>(p); }
inline std::size_t combination_index(Combination c) {
    return 3 * static_cast<std::size_t>(c.selection) + static_cast<std::size_t>(c.investment);
}

/// Everything one anchor contributes: regime conditions under each
/// criterion, the ten topological portfolios, per-stock horizon returns,
/// and the benchmark mean averaged over the seeded random draws.
struct AnchorResult {
    int anchor = -1;
    std::string anchor_date;   // date of the anchor's return column
    std::string horizon_end_date;

    std::array<bool, n_criteria> condition_ok{};
    std::array<Condition, n_criteria> selection_condition{};
    std::array<Condition, n_criteria> investment_condition{};

    // window ratios behind the classifications; amplitude ratios are NaN
    // when the window had no price movement at all
    double selection_r_d = 0.0, investment_r_d = 0.0;
    double selection_r_f = 0.0, investment_r_f = 0.0;

    std::array<Portfolio, n_parameters> central;
    std::array<Portfolio, n_parameters> peripheral;

    std::vector<double> stock_return; // per universe stock over the horizon
    double random_mean = 0.0;

    NodeMetrics metrics;

    Combination combination(RegimeCriterion c) const {
        return combine(selection_condition[criterion_index(c)],
                       investment_condition[criterion_index(c)]);
    }
};

namespace detail {

/// k distinct indices in [0, n) drawn with a partial Fisher-Yates pass.
inline void sample_indices(std::vector<int>& pool, std::size_t k, Rng& rng, std::vector<int>& out) {
    const std::size_t n = pool.size();
    std::iota(pool.begin(), pool.end(), 0);
    out.clear();
    for (std::size_t i = 0; i < k && i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
}

inline double horizon_sum(const Eigen::MatrixXd& cum, int stock, int anchor, int horizon_days,
                          bool simple) {
    const double s = cum(stock, anchor + horizon_days + 1) - cum(stock, anchor + 1);
    return simple ? std::expm1(s) : s;
}

} // namespace detail

/// Seed tags keep the random streams of distinct purposes disjoint.
inline std::uint64_t peripheral_seed(const RunConfig& config, int anchor, Parameter p) {
    return derive_seed(config.base_seed,
                       (static_cast<std::uint64_t>(anchor) << 8) | parameter_index(p));
}
inline std::uint64_t benchmark_seed(const RunConfig& config, int anchor) {
    return derive_seed(config.base_seed, (static_cast<std::uint64_t>(anchor) << 8) | 0xBEull);
}

/// Run the full anchor loop. Anchors whose regime classification is
/// contradictory under a criterion stay in the output with condition_ok
/// false for that criterion; contradiction_count reports how many.
inline std::vector<AnchorResult> run_pipeline(const MarketData& md, const RunConfig& config,
                                              int* contradiction_count = nullptr) {
    config.validate();
    const int n = static_cast<int>(md.returns.n_stocks());
    const std::size_t members = portfolio_size(static_cast<std::size_t>(n), config.fraction);
    if (contradiction_count) *contradiction_count = 0;

    std::vector<AnchorResult> results;
    results.reserve(md.schedule.anchors.size());

    std::vector<int> pool(static_cast<std::size_t>(n)), picked;
    picked.reserve(members);

    for (const int t : md.schedule.anchors) {
        AnchorResult r;
        r.anchor = t;
        r.anchor_date = md.returns.dates[t];
        r.horizon_end_date = md.returns.dates[t + config.horizon_days];

        const CorrMatrix corr = pearson_matrix(md.returns, t - config.window_days + 1, t);
        const DistMatrix dist = distance_matrix(corr);
        const MstGraph tree = build_mst(dist);
        r.metrics = compute_node_metrics(tree, corr, config.hop_distance);

        for (Parameter p : all_parameters()) {
            const std::size_t pi = parameter_index(p);
            r.central[pi] = select_central(r.metrics, p, config.fraction);
            r.peripheral[pi] = select_peripheral(r.metrics, p, config.fraction,
                                                 peripheral_seed(config, t, p));
            for (Portfolio* pf : {&r.central[pi], &r.peripheral[pi]}) {
                pf->anchor = t;
                pf->anchor_date = r.anchor_date;
            }
        }

        r.stock_return.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            r.stock_return[static_cast<std::size_t>(i)] =
                detail::horizon_sum(md.cum, i, t, config.horizon_days, config.simple_returns);

        Rng bench_rng(benchmark_seed(config, t));
        double mean_of_draws = 0.0;
        for (int draw = 0; draw < config.random_draws; ++draw) {
            detail::sample_indices(pool, members, bench_rng, picked);
            double s = 0.0;
            for (int i : picked) s += r.stock_return[static_cast<std::size_t>(i)];
            mean_of_draws += s / static_cast<double>(picked.size());
        }
        r.random_mean = mean_of_draws / config.random_draws;

        // day-space index windows around the anchor day t+1
        const int day = t + 1;
        r.selection_r_d = ratio_trading_days(md.index, day - config.window_days, day);
        r.investment_r_d = ratio_trading_days(md.index, day, day + config.horizon_days);
        std::optional<double> sel_rf, inv_rf;
        try {
            sel_rf = ratio_amplitude(md.index, day - config.window_days, day);
        } catch (const DegenerateError&) {
        }
        try {
            inv_rf = ratio_amplitude(md.index, day, day + config.horizon_days);
        } catch (const DegenerateError&) {
        }
        r.selection_r_f = sel_rf.value_or(std::numeric_limits<double>::quiet_NaN());
        r.investment_r_f = inv_rf.value_or(std::numeric_limits<double>::quiet_NaN());

        for (RegimeCriterion c : all_criteria()) {
            const std::size_t ci = criterion_index(c);
            try {
                r.selection_condition[ci] = classify(r.selection_r_d, sel_rf, config.regime(c));
                r.investment_condition[ci] = classify(r.investment_r_d, inv_rf, config.regime(c));
                r.condition_ok[ci] = true;
            } catch (const Error&) {
                // contradictory 'or' classification or an undefined amplitude
                r.condition_ok[ci] = false;
                if (contradiction_count) ++*contradiction_count;
            }
        }

        results.push_back(std::move(r));
    }
    return results;
}

/// One row of the regime-conditioned comparison table.
struct ComparisonCell {
    Parameter parameter = Parameter::degree;
    Combination combination;
    int num = 0;        // anchors in the bucket
    bool computed = false;
    double f_value = 0.0;
    double p_value = 1.0;
    double central_excess = 0.0;
    double peripheral_excess = 0.0;
    bool significant_5 = false;
    bool significant_10 = false;
    bool hidden = true;
};

using AnchorFilter = std::function<bool(const AnchorResult&)>;

inline bool accept_all_anchors(const AnchorResult&) { return true; }

/// Bucket the anchors by market-condition combination under one criterion
/// and compare central vs peripheral pooled per-stock returns, each taken in
/// excess of the anchor's random-benchmark mean. Cells with fewer than
/// min_samples anchors or an insignificant ANOVA stay computed but hidden.
inline std::vector<ComparisonCell> compare_regimes(const std::vector<AnchorResult>& anchors,
                                                   const RunConfig& config, RegimeCriterion criterion,
                                                   const AnchorFilter& filter = accept_all_anchors) {
    const std::size_t ci = criterion_index(criterion);
    std::vector<ComparisonCell> cells;
    cells.reserve(n_parameters * 9);

    for (Parameter p : all_parameters()) {
        const std::size_t pi = parameter_index(p);
        for (Combination combo : all_combinations()) {
            ComparisonCell cell;
            cell.parameter = p;
            cell.combination = combo;

            std::vector<double> central_pool, peripheral_pool;
            for (const AnchorResult& a : anchors) {
                if (!a.condition_ok[ci] || !(a.combination(criterion) == combo) || !filter(a)) continue;
                ++cell.num;
                for (const std::string& name : a.central[pi].members) {
                    const int i = ticker_index(a.metrics.tickers, name);
                    central_pool.push_back(a.stock_return[static_cast<std::size_t>(i)] - a.random_mean);
                }
                for (const std::string& name : a.peripheral[pi].members) {
                    const int i = ticker_index(a.metrics.tickers, name);
                    peripheral_pool.push_back(a.stock_return[static_cast<std::size_t>(i)] - a.random_mean);
                }
            }

            if (central_pool.size() >= 2 && peripheral_pool.size() >= 2) {
                cell.central_excess = mean_of(central_pool);
                cell.peripheral_excess = mean_of(peripheral_pool);
                try {
                    const AnovaResult av = anova_oneway(central_pool, peripheral_pool);
                    cell.computed = true;
                    cell.f_value = av.f_value;
                    cell.p_value = av.p_value;
                    cell.significant_5 = av.p_value < 0.05;
                    cell.significant_10 = av.p_value < 0.10;
                } catch (const DegenerateError&) {
                    cell.computed = false;
                }
            }
            cell.hidden = !cell.computed || cell.num < config.min_samples ||
                          cell.p_value >= config.significance;
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

enum class StrategyChoice { central, peripheral, none };

inline const char* to_string(StrategyChoice c) {
    switch (c) {
    case StrategyChoice::central: return "central";
    case StrategyChoice::peripheral: return "peripheral";
    case StrategyChoice::none: return "none";
    }
    return "?";
}

/// The trained decision per (criterion, parameter, combination): invest the
/// central or peripheral portfolio, or stay out.
struct StrategyMap {
    std::array<std::array<std::array<StrategyChoice, 9>, n_parameters>, n_criteria> choice{};

    StrategyMap() {
        for (auto& per_criterion : choice)
            for (auto& per_parameter : per_criterion) per_parameter.fill(StrategyChoice::none);
    }

    StrategyChoice get(RegimeCriterion c, Parameter p, Combination m) const {
        return choice[criterion_index(c)][parameter_index(p)][combination_index(m)];
    }
    void set(RegimeCriterion c, Parameter p, Combination m, StrategyChoice s) {
        choice[criterion_index(c)][parameter_index(p)][combination_index(m)] = s;
    }
};

/// Train on the filtered anchors: a combination earns a choice only when its
/// bucket reaches min_samples anchors and the central/peripheral ANOVA is
/// significant; the side with the higher excess return wins. Unseen or
/// insignificant combinations stay at none.
inline StrategyMap train_strategy(const std::vector<AnchorResult>& anchors, const RunConfig& config,
                                  const AnchorFilter& train_filter) {
    bool any = false;
    for (const AnchorResult& a : anchors)
        if (train_filter(a)) any = true;
    if (!any) throw InsufficientDataError("train_strategy: empty training set");

    StrategyMap map;
    for (RegimeCriterion c : all_criteria()) {
        const std::vector<ComparisonCell> cells = compare_regimes(anchors, config, c, train_filter);
        for (const ComparisonCell& cell : cells) {
            if (!cell.computed || cell.num < config.min_samples ||
                cell.p_value >= config.significance)
                continue;
            map.set(c, cell.parameter, cell.combination,
                    cell.central_excess >= cell.peripheral_excess ? StrategyChoice::central
                                                                  : StrategyChoice::peripheral);
        }
    }
    return map;
}

struct HorizonPoint {
    std::string date;
    double strategy_return = 0.0;
    double random_return = 0.0;
};

/// Out-of-sample record of one (criterion, parameter) strategy.
struct EmpiricalReport {
    RegimeCriterion criterion = RegimeCriterion::trading_day;
    Parameter parameter = Parameter::degree;
    int total_anchors = 0;
    int invested = 0;
    bool no_investments = false;
    double excess = 0.0;       // mean strategy return minus mean benchmark return
    double win_fraction = 0.0; // share of invested horizons beating the benchmark
    std::vector<HorizonPoint> horizons;
};

inline EmpiricalReport evaluate_strategy(const std::vector<AnchorResult>& anchors,
                                         const StrategyMap& map, const RunConfig& config,
                                         RegimeCriterion criterion, Parameter parameter,
                                         const AnchorFilter& test_filter) {
    config.validate();
    const std::size_t ci = criterion_index(criterion);
    const std::size_t pi = parameter_index(parameter);

    EmpiricalReport rep;
    rep.criterion = criterion;
    rep.parameter = parameter;

    double strat_sum = 0.0, rand_sum = 0.0;
    int wins = 0;
    for (const AnchorResult& a : anchors) {
        if (!test_filter(a)) continue;
        ++rep.total_anchors;
        if (!a.condition_ok[ci]) continue;
        const StrategyChoice choice = map.get(criterion, parameter, a.combination(criterion));
        if (choice == StrategyChoice::none) continue;

        const Portfolio& pf = choice == StrategyChoice::central ? a.central[pi] : a.peripheral[pi];
        double s = 0.0;
        for (const std::string& name : pf.members)
            s += a.stock_return[static_cast<std::size_t>(ticker_index(a.metrics.tickers, name))];
        s /= static_cast<double>(pf.members.size());

        rep.horizons.push_back({a.anchor_date, s, a.random_mean});
        strat_sum += s;
        rand_sum += a.random_mean;
        if (s > a.random_mean) ++wins;
        ++rep.invested;
    }

    if (rep.invested == 0) {
        rep.no_investments = true;
    } else {
        rep.excess = (strat_sum - rand_sum) / rep.invested;
        rep.win_fraction = static_cast<double>(wins) / rep.invested;
    }
    return rep;
}

inline AnchorFilter train_filter_for(const RunConfig& config) {
    const std::string cut = config.train_end;
    if (cut.empty()) return accept_all_anchors;
    return [cut](const AnchorResult& a) { return a.horizon_end_date <= cut; };
}

inline AnchorFilter test_filter_for(const RunConfig& config) {
    const std::string cut = config.test_start;
    if (cut.empty()) return accept_all_anchors;
    return [cut](const AnchorResult& a) { return a.anchor_date >= cut; };
}

/// Sharpe ratios per (parameter, kind) for each candidate investment
/// horizon, plus a one-way ANOVA across the horizon groups of per-anchor
/// excess returns. p_value is absent when only one candidate is given or a
/// group degenerates.
struct SweepRow {
    Parameter parameter = Parameter::degree;
    PortfolioKind kind = PortfolioKind::central;
    std::vector<std::optional<double>> sharpe_by_horizon;
    std::optional<double> p_value;
};

struct SweepTable {
    std::vector<int> horizons;
    std::vector<SweepRow> rows;
};

inline SweepTable horizon_sweep(const PricePanel& raw_panel, const IndexSeries& raw_index,
                                const RunConfig& base_config, const std::vector<int>& candidates) {
    if (candidates.empty()) throw ContractError("horizon_sweep: no horizon candidates");

    SweepTable table;
    table.horizons = candidates;

    // excess series per (parameter, kind, horizon)
    std::vector<std::array<std::vector<double>, 2 * n_parameters>> series(candidates.size());
    for (std::size_t h = 0; h < candidates.size(); ++h) {
        RunConfig cfg = base_config;
        cfg.horizon_days = candidates[h];
        const MarketData md = prepare_market(raw_panel, raw_index, cfg);
        const std::vector<AnchorResult> anchors = run_pipeline(md, cfg);
        for (const AnchorResult& a : anchors) {
            for (Parameter p : all_parameters()) {
                const std::size_t pi = parameter_index(p);
                for (int kind = 0; kind < 2; ++kind) {
                    const Portfolio& pf = kind == 0 ? a.central[pi] : a.peripheral[pi];
                    double s = 0.0;
                    for (const std::string& name : pf.members)
                        s += a.stock_return[static_cast<std::size_t>(
                            ticker_index(a.metrics.tickers, name))];
                    s /= static_cast<double>(pf.members.size());
                    series[h][2 * pi + static_cast<std::size_t>(kind)].push_back(s - a.random_mean);
                }
            }
        }
    }

    for (Parameter p : all_parameters()) {
        const std::size_t pi = parameter_index(p);
        for (int kind = 0; kind < 2; ++kind) {
            SweepRow row;
            row.parameter = p;
            row.kind = kind == 0 ? PortfolioKind::central : PortfolioKind::peripheral;
            std::vector<std::vector<double>> groups;
            for (std::size_t h = 0; h < candidates.size(); ++h) {
                const auto& xs = series[h][2 * pi + static_cast<std::size_t>(kind)];
                try {
                    row.sharpe_by_horizon.push_back(sharpe(xs));
                } catch (const Error&) {
                    row.sharpe_by_horizon.push_back(std::nullopt);
                }
                groups.push_back(xs);
            }
            if (groups.size() >= 2) {
                try {
                    row.p_value = anova_oneway(groups).p_value;
                } catch (const Error&) {
                    row.p_value = std::nullopt;
                }
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

} // namespace mstfolio
