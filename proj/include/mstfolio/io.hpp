#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstfolio/errors.hpp"
#include "mstfolio/moment_track.hpp"
#include "mstfolio/pipeline.hpp"
#include "mstfolio/powerlaw.hpp"
#include "mstfolio/returns.hpp"
#include "mstfolio/topology.hpp"

namespace mstfolio {

using Json = nlohmann::ordered_json;

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// FNV-1a 64-bit digest of a file, hex-encoded. Identifies run inputs in the
/// manifest; not a cryptographic hash.
inline std::string fnv1a_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file for digest: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (got < static_cast<std::streamsize>(sizeof buf)) break;
    }
    char out[24];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps \n fixed across platforms
    if (!out) throw ValidationError("cannot open output file: " + path.string());
    return out;
}

inline Json stats_json(const StatsReport& r) {
    Json j;
    j["stocks"] = r.stocks;
    j["records"] = r.records;
    j["mean"] = r.mean;
    j["stddev"] = r.stddev;
    j["max"] = r.max;
    j["min"] = r.min;
    j["skewness"] = r.skewness;
    j["kurtosis"] = r.kurtosis;
    return j;
}

inline void write_stats_csv(const StatsReport& r, std::ostream& out) {
    out << "stocks,records,mean,stddev,max,min,skewness,kurtosis\n";
    out << r.stocks << ',' << r.records << ',' << fmt(r.mean) << ',' << fmt(r.stddev) << ','
        << fmt(r.max) << ',' << fmt(r.min) << ',' << fmt(r.skewness) << ',' << fmt(r.kurtosis)
        << '\n';
}

inline void write_metrics_csv(const NodeMetrics& m, const std::string& anchor_date, std::ostream& out) {
    out << "anchor_date,ticker,K,C,D_degree,D_correlation,D_distance\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << anchor_date << ',' << m.tickers[i] << ',' << m.degree[i] << ',' << m.betweenness[i]
            << ',' << fmt(m.dist_degree[i]) << ',' << fmt(m.dist_correlation[i]) << ','
            << fmt(m.dist_distance[i]) << '\n';
    }
}

inline void write_moment_track_csv(const MomentTrack& t, std::ostream& out) {
    out << "anchor_date,corr_mean,corr_std,corr_variance,corr_skewness,corr_kurtosis,"
           "dist_mean,dist_std,dist_variance,dist_skewness,dist_kurtosis\n";
    for (std::size_t i = 0; i < t.anchors.size(); ++i) {
        const Moments& c = t.corr_moments[i];
        const Moments& d = t.dist_moments[i];
        out << t.anchor_dates[i] << ',' << fmt(c.mean) << ',' << fmt(std::sqrt(c.variance)) << ','
            << fmt(c.variance) << ',' << fmt(c.skewness) << ',' << fmt(c.kurtosis) << ','
            << fmt(d.mean) << ',' << fmt(std::sqrt(d.variance)) << ',' << fmt(d.variance) << ','
            << fmt(d.skewness) << ',' << fmt(d.kurtosis) << '\n';
    }
}

inline void write_moment_cross_csv(const MomentTrack& t, std::ostream& out) {
    out << "pair,defined,correlation\n";
    const auto row = [&](const char* name, const std::optional<double>& v) {
        out << name << ',' << (v ? 1 : 0) << ',' << (v ? fmt(*v) : "") << '\n';
    };
    row("mean", t.cross_mean);
    row("variance", t.cross_variance);
    row("skewness", t.cross_skewness);
    row("kurtosis", t.cross_kurtosis);
}

inline void write_pdf_csv(const std::vector<PdfBin>& bins, std::ostream& out) {
    out << "bin_center,density\n";
    for (const PdfBin& b : bins) out << fmt(b.center) << ',' << fmt(b.density) << '\n';
}

/// Comparison table rows in a fixed column order; hidden cells keep their
/// computed values but carry hidden=1 so plotting can drop them.
inline void write_comparison_csv(const std::vector<ComparisonCell>& cells, std::ostream& out) {
    out << "parameter,market_condition,num,f_value,p_value,central,peripheral,"
           "significant_5,significant_10,hidden\n";
    for (const ComparisonCell& c : cells) {
        out << to_string(c.parameter) << ',' << to_label(c.combination) << ',' << c.num << ',';
        if (c.computed)
            out << fmt(c.f_value) << ',' << fmt(c.p_value) << ',' << fmt(c.central_excess) << ','
                << fmt(c.peripheral_excess);
        else
            out << ",,,";
        out << ',' << (c.significant_5 ? 1 : 0) << ',' << (c.significant_10 ? 1 : 0) << ','
            << (c.hidden ? 1 : 0) << '\n';
    }
}

inline Json strategy_map_json(const StrategyMap& map) {
    Json j;
    for (RegimeCriterion c : all_criteria()) {
        Json per_param;
        for (Parameter p : all_parameters()) {
            Json per_combo;
            for (Combination m : all_combinations())
                per_combo[to_label(m)] = to_string(map.get(c, p, m));
            per_param[to_string(p)] = per_combo;
        }
        j[to_string(c)] = per_param;
    }
    return j;
}

inline Json empirical_report_json(const EmpiricalReport& r) {
    Json j;
    j["criterion"] = to_string(r.criterion);
    j["parameter"] = to_string(r.parameter);
    j["total_anchors"] = r.total_anchors;
    j["invested"] = r.invested;
    j["no_investments"] = r.no_investments;
    j["excess_return"] = r.excess;
    j["win_fraction"] = r.win_fraction;
    return j;
}

inline void write_horizon_points_csv(const EmpiricalReport& r, std::ostream& out) {
    out << "anchor_date,strategy_return,random_return\n";
    for (const HorizonPoint& h : r.horizons)
        out << h.date << ',' << fmt(h.strategy_return) << ',' << fmt(h.random_return) << '\n';
}

inline void write_sweep_csv(const SweepTable& t, std::ostream& out) {
    out << "parameter,kind";
    for (int h : t.horizons) out << ",sharpe_" << h;
    out << ",p_value\n";
    for (const SweepRow& row : t.rows) {
        out << to_string(row.parameter) << ',' << to_string(row.kind);
        for (const auto& s : row.sharpe_by_horizon) out << ',' << (s ? fmt(*s) : "");
        out << ',' << (row.p_value ? fmt(*row.p_value) : "") << '\n';
    }
}

/// One JSON object per line for every selected portfolio, anchors in order,
/// parameters in enum order, central before peripheral.
inline void write_portfolios_jsonl(const std::vector<AnchorResult>& anchors, std::ostream& out) {
    for (const AnchorResult& a : anchors) {
        for (Parameter p : all_parameters()) {
            const std::size_t pi = parameter_index(p);
            for (const Portfolio* pf : {&a.central[pi], &a.peripheral[pi]}) {
                Json j;
                j["anchor"] = pf->anchor_date;
                j["parameter"] = to_string(p);
                j["kind"] = to_string(pf->kind);
                j["members"] = pf->members;
                j["seed"] = pf->seed;
                out << j.dump() << '\n';
            }
        }
    }
}

/// Per-anchor regime ratios and labels, one label column per criterion;
/// anchors a criterion could not classify carry "NA".
inline void write_regime_track_csv(const std::vector<AnchorResult>& anchors, std::ostream& out) {
    out << "anchor_date,selection_r_d,selection_r_f,investment_r_d,investment_r_f";
    for (RegimeCriterion c : all_criteria()) out << ',' << to_string(c);
    out << '\n';
    for (const AnchorResult& a : anchors) {
        out << a.anchor_date << ',' << fmt(a.selection_r_d) << ',' << fmt(a.selection_r_f) << ','
            << fmt(a.investment_r_d) << ',' << fmt(a.investment_r_f);
        for (RegimeCriterion c : all_criteria()) {
            const std::size_t ci = criterion_index(c);
            if (a.condition_ok[ci])
                out << ',' << to_char(a.selection_condition[ci]) << to_char(a.investment_condition[ci]);
            else
                out << ",NA";
        }
        out << '\n';
    }
}

inline Json config_json(const RunConfig& c) {
    Json j;
    j["data"] = c.data_path;
    j["index"] = c.index_path;
    j["out"] = c.out_dir;
    j["window_days"] = c.window_days;
    j["step_days"] = c.step_days;
    j["horizon_days"] = c.horizon_days;
    j["max_gap_days"] = c.max_gap_days;
    j["fraction"] = c.fraction;
    j["theta_plus"] = c.theta_plus;
    j["theta_minus"] = c.theta_minus;
    j["criterion"] = to_string(c.criterion);
    j["parameter"] = to_string(c.parameter);
    j["seed"] = c.base_seed;
    j["random_draws"] = c.random_draws;
    j["min_samples"] = c.min_samples;
    j["significance"] = c.significance;
    j["train_end"] = c.train_end;
    j["test_start"] = c.test_start;
    j["simple_returns"] = c.simple_returns;
    j["hop_distance"] = c.hop_distance;
    return j;
}

/// Reproducibility record: the full configuration, the digests of every
/// input, the generator name, and the files written. No wall-clock state, so
/// a rerun writes the identical manifest.
inline void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                           const Json& config, const std::vector<std::string>& input_paths,
                           std::vector<std::string> outputs) {
    Json j;
    j["command"] = command;
    j["version"] = "0.1.0";
    j["rng"] = rng_name();
    j["config"] = config;
    Json inputs = Json::object();
    for (const std::string& p : input_paths) inputs[p] = fnv1a_digest(p);
    j["inputs"] = inputs;
    std::sort(outputs.begin(), outputs.end());
    j["outputs"] = outputs;
    auto out = open_out(out_dir / "manifest.json");
    out << j.dump(2) << '\n';
}

} // namespace mstfolio
