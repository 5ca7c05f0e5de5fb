#pragma once

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mstfolio/io.hpp"
#include "mstfolio/pipeline.hpp"
#include "mstfolio/synth.hpp"

namespace mstfolio {

namespace detail {

inline std::filesystem::path ensure_out_dir(const RunConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline MarketData load_market(const RunConfig& config) {
    const PricePanel panel = load_prices_file(config.data_path);
    const IndexSeries index = load_index_file(config.index_path);
    return prepare_market(panel, index, config);
}

} // namespace detail

/// stats: descriptive statistics of the filtered universe's pooled returns.
inline std::vector<std::string> cmd_stats(const RunConfig& config, std::ostream& log = std::cerr) {
    config.validate();
    const auto dir = detail::ensure_out_dir(config);

    const PricePanel panel = filter_liquidity(load_prices_file(config.data_path), config.max_gap_days);
    const ReturnPanel returns = compute_returns(panel);
    const StatsReport report = summary_stats(returns);

    {
        auto out = open_out(dir / "stats.json");
        out << stats_json(report).dump(2) << '\n';
    }
    {
        auto out = open_out(dir / "stats.csv");
        write_stats_csv(report, out);
    }
    std::vector<std::string> outputs{"stats.json", "stats.csv"};
    write_manifest(dir, "stats", config_json(config), {config.data_path}, outputs);
    log << "stats: " << report.stocks << " stocks, " << report.records << " pooled returns\n";
    outputs.push_back("manifest.json");
    return outputs;
}

/// network: per-anchor trees, node metrics, moment tracks, metric PDFs and
/// tail fits.
inline std::vector<std::string> cmd_network(const RunConfig& config, std::ostream& log = std::cerr) {
    config.validate();
    const auto dir = detail::ensure_out_dir(config);
    const MarketData md = detail::load_market(config);

    std::vector<std::string> outputs;
    std::vector<double> pooled_degree, pooled_betweenness;
    std::vector<double> pooled_dd, pooled_dc, pooled_dx;

    for (const int t : md.schedule.anchors) {
        const std::string date = md.returns.dates[t];
        const CorrMatrix corr = pearson_matrix(md.returns, t - config.window_days + 1, t);
        const DistMatrix dist = distance_matrix(corr);
        const MstGraph tree = build_mst(dist);
        const NodeMetrics metrics = compute_node_metrics(tree, corr, config.hop_distance);

        {
            auto out = open_out(dir / ("mst_" + date + ".dot"));
            write_dot(tree, out);
            outputs.push_back("mst_" + date + ".dot");
        }
        {
            auto out = open_out(dir / ("metrics_" + date + ".csv"));
            write_metrics_csv(metrics, date, out);
            outputs.push_back("metrics_" + date + ".csv");
        }
        for (std::size_t i = 0; i < metrics.size(); ++i) {
            pooled_degree.push_back(metrics.degree[i]);
            pooled_betweenness.push_back(static_cast<double>(metrics.betweenness[i]));
            pooled_dd.push_back(metrics.dist_degree[i]);
            pooled_dc.push_back(metrics.dist_correlation[i]);
            pooled_dx.push_back(metrics.dist_distance[i]);
        }
    }

    const MomentTrack track = moment_track(md.schedule, md.returns);
    {
        auto out = open_out(dir / "moment_track.csv");
        write_moment_track_csv(track, out);
        outputs.push_back("moment_track.csv");
    }
    {
        auto out = open_out(dir / "moment_cross.csv");
        write_moment_cross_csv(track, out);
        outputs.push_back("moment_cross.csv");
    }

    const auto emit_pdf = [&](const char* name, const std::vector<double>& samples) {
        try {
            auto out = open_out(dir / (std::string("pdf_") + name + ".csv"));
            write_pdf_csv(log_binned_pdf(samples), out);
            outputs.push_back(std::string("pdf_") + name + ".csv");
        } catch (const InsufficientDataError&) {
            log << "network: too few positive samples for pdf_" << name << "\n";
        }
    };
    emit_pdf("degree", pooled_degree);
    emit_pdf("betweenness", pooled_betweenness);
    emit_pdf("D_degree", pooled_dd);
    emit_pdf("D_correlation", pooled_dc);
    emit_pdf("D_distance", pooled_dx);

    // tail exponents: degree fits from K >= 1; betweenness from its smallest
    // positive value (leaves sit at exactly 0 and are excluded)
    Json fits = Json::object();
    try {
        const PowerLawFit kf = fit_power_law(pooled_degree, 1.0);
        fits["K"] = {{"alpha", kf.alpha}, {"x_min", kf.x_min}, {"count", kf.count}};
    } catch (const Error& e) {
        log << "network: degree tail fit unavailable: " << e.what() << "\n";
    }
    double c_min = 0.0;
    for (double c : pooled_betweenness)
        if (c > 0.0 && (c_min == 0.0 || c < c_min)) c_min = c;
    if (c_min > 0.0) {
        try {
            const PowerLawFit cf = fit_power_law(pooled_betweenness, c_min);
            fits["C"] = {{"alpha", cf.alpha}, {"x_min", cf.x_min}, {"count", cf.count}};
        } catch (const Error& e) {
            log << "network: betweenness tail fit unavailable: " << e.what() << "\n";
        }
    }
    {
        auto out = open_out(dir / "powerlaw.json");
        out << fits.dump(2) << '\n';
        outputs.push_back("powerlaw.json");
    }

    write_manifest(dir, "network", config_json(config), {config.data_path, config.index_path}, outputs);
    log << "network: " << md.schedule.anchors.size() << " anchors\n";
    outputs.push_back("manifest.json");
    return outputs;
}

/// compare: the regime-conditioned central/peripheral comparison tables for
/// the configured criterion, one file per parameter.
inline std::vector<std::string> cmd_compare(const RunConfig& config, std::ostream& log = std::cerr) {
    config.validate();
    const auto dir = detail::ensure_out_dir(config);
    const MarketData md = detail::load_market(config);

    int contradictions = 0;
    const std::vector<AnchorResult> anchors = run_pipeline(md, config, &contradictions);
    if (contradictions > 0)
        log << "compare: " << contradictions << " anchor classifications were contradictory and skipped\n";

    const std::vector<ComparisonCell> cells = compare_regimes(anchors, config, config.criterion);

    std::vector<std::string> outputs;
    int hidden = 0;
    for (Parameter p : all_parameters()) {
        std::vector<ComparisonCell> rows;
        for (const ComparisonCell& c : cells)
            if (c.parameter == p) rows.push_back(c);
        for (const ComparisonCell& c : rows)
            if (c.hidden) ++hidden;
        const std::string name =
            std::string("comparison_") + to_string(config.criterion) + "_" + to_string(p) + ".csv";
        auto out = open_out(dir / name);
        write_comparison_csv(rows, out);
        outputs.push_back(name);
    }
    log << "compare: " << hidden << " of " << cells.size() << " cells hidden\n";

    {
        auto out = open_out(dir / "regime_track.csv");
        write_regime_track_csv(anchors, out);
        outputs.push_back("regime_track.csv");
    }
    {
        auto out = open_out(dir / "portfolios.jsonl");
        write_portfolios_jsonl(anchors, out);
        outputs.push_back("portfolios.jsonl");
    }

    write_manifest(dir, "compare", config_json(config), {config.data_path, config.index_path}, outputs);
    outputs.push_back("manifest.json");
    return outputs;
}

/// backtest: train the optimal-strategy map on the training span, then
/// evaluate every (criterion, parameter) strategy on the test span.
inline std::vector<std::string> cmd_backtest(const RunConfig& config, std::ostream& log = std::cerr) {
    config.validate();
    const auto dir = detail::ensure_out_dir(config);
    const MarketData md = detail::load_market(config);
    if (config.train_end.empty() || config.test_start.empty())
        log << "backtest: no train/test split given, evaluation runs in-sample\n";

    const std::vector<AnchorResult> anchors = run_pipeline(md, config);
    const StrategyMap map = train_strategy(anchors, config, train_filter_for(config));

    std::vector<std::string> outputs;
    {
        auto out = open_out(dir / "strategy_map.json");
        out << strategy_map_json(map).dump(2) << '\n';
        outputs.push_back("strategy_map.json");
    }

    Json all_reports = Json::object();
    int invested_total = 0;
    for (RegimeCriterion c : all_criteria()) {
        Json per_param = Json::object();
        for (Parameter p : all_parameters()) {
            const EmpiricalReport rep =
                evaluate_strategy(anchors, map, config, c, p, test_filter_for(config));
            per_param[to_string(p)] = empirical_report_json(rep);
            invested_total += rep.invested;
            const std::string name =
                std::string("strategy_horizons_") + to_string(c) + "_" + to_string(p) + ".csv";
            auto out = open_out(dir / name);
            write_horizon_points_csv(rep, out);
            outputs.push_back(name);
        }
        all_reports[to_string(c)] = per_param;
    }
    {
        auto out = open_out(dir / "empirical_report.json");
        out << all_reports.dump(2) << '\n';
        outputs.push_back("empirical_report.json");
    }
    if (invested_total == 0) log << "backtest: no investments were made on the test span\n";

    write_manifest(dir, "backtest", config_json(config), {config.data_path, config.index_path}, outputs);
    outputs.push_back("manifest.json");
    return outputs;
}

/// synth: write a generated market (prices + index) and its generator
/// metadata.
inline std::vector<std::string> cmd_synth(const SynthSpec& spec, const std::string& out_dir,
                                          std::ostream& log = std::cerr) {
    spec.validate();
    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);

    const SynthMarket mkt = generate_market(spec);
    {
        auto out = open_out(dir / "data.csv");
        write_prices_csv(mkt.panel, out);
    }
    {
        auto out = open_out(dir / "index.csv");
        write_index_csv(mkt.index, out);
    }

    Json meta;
    meta["n_stocks"] = spec.n_stocks;
    meta["n_days"] = spec.n_days;
    meta["block_size"] = spec.block_size;
    meta["block_rho"] = spec.block_rho;
    meta["market_rho"] = spec.market_rho;
    meta["stock_vol"] = spec.stock_vol;
    meta["index_vol"] = spec.index_vol;
    meta["index_trend"] = spec.index_trend;
    meta["planted_drift"] = spec.planted_drift;
    meta["horizon_days"] = spec.horizon_days;
    meta["segments"] = spec.segments;
    meta["seed"] = spec.seed;
    meta["base_price"] = spec.base_price;
    meta["start_date"] = spec.start_date;
    meta["block_tickers"] = mkt.block_tickers;
    {
        auto out = open_out(dir / "synth_meta.json");
        out << meta.dump(2) << '\n';
    }

    std::vector<std::string> outputs{"data.csv", "index.csv", "synth_meta.json"};
    write_manifest(dir, "synth", meta, {}, outputs);
    log << "synth: " << spec.n_stocks << " stocks x " << spec.n_days << " days\n";
    outputs.push_back("manifest.json");
    return outputs;
}

} // namespace mstfolio
