// Command-line front end: stats, network, compare, backtest, synth.
// Exit codes: 0 success, 1 internal error, 2 input/config error.

#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mstfolio/commands.hpp"
#include "mstfolio/pipeline.hpp"
#include "mstfolio/synth.hpp"

namespace {

/// Flat key=value config layer. Precedence is flags > file > defaults, so a
/// file value applies only when the matching flag was not given.
class ConfigKeys {
public:
    template <typename T>
    void bind(const std::string& key, T& target) {
        setters_[key] = [&target](const std::string& value) { target = parse_as<T>(value); };
    }

    void apply_file(CLI::App* cmd, const std::string& path) const {
        std::ifstream in(path);
        if (!in) throw mstfolio::ValidationError("cannot open config file: " + path);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::string trimmed;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
            if (trimmed.empty()) continue;
            const std::size_t eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw mstfolio::ValidationError("config line " + std::to_string(line_no) +
                                                " is not key=value");
            const std::string key = trimmed.substr(0, eq);
            const std::string value = trimmed.substr(eq + 1);
            const auto it = setters_.find(key);
            if (it == setters_.end())
                throw mstfolio::ValidationError("unknown config key '" + key + "'");
            if (cmd->count("--" + key) > 0) continue; // flag wins
            it->second(value);
        }
    }

private:
    template <typename T>
    static T parse_as(const std::string& value) {
        if constexpr (std::is_same_v<T, std::string>) {
            return value;
        } else if constexpr (std::is_same_v<T, bool>) {
            if (value == "true" || value == "1") return true;
            if (value == "false" || value == "0") return false;
            throw mstfolio::ValidationError("expected a boolean, got '" + value + "'");
        } else {
            T out{};
            std::istringstream ss(value);
            ss >> out;
            if (ss.fail() || !ss.eof())
                throw mstfolio::ValidationError("cannot parse config value '" + value + "'");
            return out;
        }
    }

    std::map<std::string, std::function<void(const std::string&)>> setters_;
};

struct CliOptions {
    mstfolio::RunConfig config;
    std::string criterion = "trading_day";
    std::string parameter = "K";
    std::string config_file;
    bool needs_index = false;
    ConfigKeys keys;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt, bool needs_index) {
    auto& c = opt.config;
    opt.needs_index = needs_index;
    const auto bind = [&](const std::string& key, auto& target, const std::string& help) {
        auto* option = cmd->add_option("--" + key, target, help);
        opt.keys.bind(key, target);
        return option;
    };
    // data/index are required, but the config file may supply them, so the
    // presence check runs after the file is applied
    bind("data", c.data_path, "price CSV (date,ticker,adjusted_close)");
    if (needs_index) bind("index", c.index_path, "index CSV (date,close)");
    bind("out", c.out_dir, "output directory");
    bind("window-days", c.window_days, "selection window length in trading days");
    bind("step-days", c.step_days, "anchor step in trading days");
    bind("horizon-days", c.horizon_days, "investment horizon in trading days");
    bind("max-gap-days", c.max_gap_days, "drop stocks with more missing days than this");
    bind("fraction", c.fraction, "portfolio fraction of the universe");
    bind("theta-plus", c.theta_plus, "drawup threshold");
    bind("theta-minus", c.theta_minus, "drawdown threshold");
    bind("criterion", opt.criterion, "trading_day | amplitude | or | and");
    bind("parameter", opt.parameter, "K | C | D_degree | D_correlation | D_distance");
    bind("seed", c.base_seed, "base seed for every random stream");
    bind("random-draws", c.random_draws, "benchmark draws per anchor");
    bind("min-samples", c.min_samples, "reporting floor on bucket size");
    bind("significance", c.significance, "ANOVA significance level");
    bind("train-end", c.train_end, "last horizon-end date of the training span");
    bind("test-start", c.test_start, "first anchor date of the test span");
    cmd->add_flag("--simple-returns", c.simple_returns, "report exp(sum)-1 horizon returns");
    opt.keys.bind("simple-returns", c.simple_returns);
    cmd->add_flag("--hop-distance", c.hop_distance, "distance metrics count hops, not edge weights");
    opt.keys.bind("hop-distance", c.hop_distance);
    cmd->add_option("--config", opt.config_file, "flat key=value config file; flags override it");
}

struct SynthOptions {
    mstfolio::SynthSpec spec;
    std::string out_dir = "out";
    std::string config_file;
    ConfigKeys keys;
};

void add_synth_flags(CLI::App* cmd, SynthOptions& opt) {
    auto& s = opt.spec;
    const auto bind = [&](const std::string& key, auto& target, const std::string& help) {
        cmd->add_option("--" + key, target, help);
        opt.keys.bind(key, target);
    };
    bind("out", opt.out_dir, "output directory");
    bind("stocks", s.n_stocks, "number of stocks");
    bind("days", s.n_days, "number of trading days");
    bind("block-size", s.block_size, "correlated block size");
    bind("block-rho", s.block_rho, "pairwise correlation inside the block");
    bind("market-rho", s.market_rho, "common-factor correlation outside the block");
    bind("stock-vol", s.stock_vol, "daily stock volatility");
    bind("index-vol", s.index_vol, "daily index volatility");
    bind("index-trend", s.index_trend, "daily index drift in U/D segments");
    bind("planted-drift", s.planted_drift, "extra block return per horizon in U segments");
    bind("horizon-days", s.horizon_days, "horizon used to scale the drift");
    bind("segments", s.segments, "repeating pattern, e.g. U:600,S:600");
    bind("seed", s.seed, "generator seed");
    bind("base-price", s.base_price, "starting price level");
    bind("start-date", s.start_date, "first trading date (YYYY-MM-DD)");
    cmd->add_option("--config", opt.config_file, "flat key=value config file; flags override it");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MST network portfolio toolkit"};
    app.require_subcommand(1);

    CliOptions stats_opt, network_opt, compare_opt, backtest_opt;
    CLI::App* stats = app.add_subcommand("stats", "summary statistics of the filtered universe");
    add_common_flags(stats, stats_opt, false);
    CLI::App* network = app.add_subcommand("network", "per-anchor trees, metrics and moment tracks");
    add_common_flags(network, network_opt, true);
    CLI::App* compare = app.add_subcommand("compare", "regime-conditioned portfolio comparison");
    add_common_flags(compare, compare_opt, true);
    CLI::App* backtest = app.add_subcommand("backtest", "train and evaluate the optimal strategy");
    add_common_flags(backtest, backtest_opt, true);

    SynthOptions synth_opt;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic market");
    add_synth_flags(synth, synth_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const auto run = [](CLI::App* cmd, CliOptions& opt, auto&& fn) {
            if (!opt.config_file.empty()) opt.keys.apply_file(cmd, opt.config_file);
            if (opt.config.data_path.empty())
                throw mstfolio::ValidationError("--data is required (flag or config file)");
            if (opt.needs_index && opt.config.index_path.empty())
                throw mstfolio::ValidationError("--index is required (flag or config file)");
            opt.config.criterion = mstfolio::parse_criterion(opt.criterion);
            opt.config.parameter = mstfolio::parse_parameter(opt.parameter);
            fn(opt.config);
        };
        if (stats->parsed())
            run(stats, stats_opt, [](const mstfolio::RunConfig& c) { mstfolio::cmd_stats(c); });
        if (network->parsed())
            run(network, network_opt, [](const mstfolio::RunConfig& c) { mstfolio::cmd_network(c); });
        if (compare->parsed())
            run(compare, compare_opt, [](const mstfolio::RunConfig& c) { mstfolio::cmd_compare(c); });
        if (backtest->parsed())
            run(backtest, backtest_opt, [](const mstfolio::RunConfig& c) { mstfolio::cmd_backtest(c); });
        if (synth->parsed()) {
            if (!synth_opt.config_file.empty())
                synth_opt.keys.apply_file(synth, synth_opt.config_file);
            mstfolio::cmd_synth(synth_opt.spec, synth_opt.out_dir);
        }
    } catch (const mstfolio::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mstfolio::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mstfolio::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mstfolio::InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
