#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

#include "mstfolio/correlation.hpp"
#include "mstfolio/regime.hpp"
#include "mstfolio/returns.hpp"
#include "mstfolio/synth.hpp"

using namespace mstfolio;

TEST_CASE("segment parsing") {
    const std::vector<SynthSegment> segs = parse_segments("U:600,S:300,D:100");
    REQUIRE(segs.size() == 3);
    REQUIRE(segs[0].condition == Condition::drawup);
    REQUIRE(segs[0].days == 600);
    REQUIRE(segs[2].condition == Condition::drawdown);
    REQUIRE_THROWS_AS(parse_segments("X:10"), ValidationError);
    REQUIRE_THROWS_AS(parse_segments("U:0"), ValidationError);
    REQUIRE_THROWS_AS(parse_segments(""), ValidationError);
}

TEST_CASE("generated dates are consecutive ISO days") {
    SynthSpec spec;
    spec.n_stocks = 3;
    spec.n_days = 40;
    spec.block_size = 0;
    spec.start_date = "2000-02-27"; // crosses the Feb-29 leap boundary
    const SynthMarket mkt = generate_market(spec);
    REQUIRE(mkt.panel.dates[0] == "2000-02-27");
    REQUIRE(mkt.panel.dates[2] == "2000-02-29");
    REQUIRE(mkt.panel.dates[3] == "2000-03-01");
    for (std::size_t j = 1; j < mkt.panel.dates.size(); ++j)
        REQUIRE(mkt.panel.dates[j - 1] < mkt.panel.dates[j]);
}

TEST_CASE("block correlation lands near its target at 200 days") {
    SynthSpec spec;
    spec.n_stocks = 30;
    spec.n_days = 201;
    spec.block_size = 18;
    spec.block_rho = 0.6;
    spec.seed = 31;
    const SynthMarket mkt = generate_market(spec);
    const ReturnPanel r = compute_returns(mkt.panel);
    const CorrMatrix c = pearson_matrix(r, 0, static_cast<int>(r.n_days()) - 1);
    double block_sum = 0.0;
    int block_pairs = 0;
    double off_sum = 0.0;
    int off_pairs = 0;
    for (int i = 0; i < 30; ++i) {
        for (int j = i + 1; j < 30; ++j) {
            if (i < 18 && j < 18) {
                block_sum += c.values(i, j);
                ++block_pairs;
            } else if (i >= 18 && j >= 18) {
                off_sum += c.values(i, j);
                ++off_pairs;
            }
        }
    }
    REQUIRE(block_sum / block_pairs == Approx(0.6).margin(0.05));
    REQUIRE(std::abs(off_sum / off_pairs) < 0.05);
}

TEST_CASE("zero-drift index stays near r_d = 0.5 over long windows") {
    SynthSpec spec;
    spec.n_stocks = 2;
    spec.n_days = 4000;
    spec.block_size = 0;
    spec.segments = "S:100000";
    spec.seed = 77;
    const SynthMarket mkt = generate_market(spec);
    const double rd = ratio_trading_days(mkt.index, 0, spec.n_days - 1);
    REQUIRE(rd == Approx(0.5).margin(0.03));
}

TEST_CASE("trending segments push r_d across the thresholds") {
    SynthSpec spec;
    spec.n_stocks = 2;
    spec.n_days = 1200;
    spec.block_size = 0;
    spec.segments = "U:400,S:400,D:400";
    spec.index_trend = 0.007;
    spec.index_vol = 0.01;
    spec.seed = 5;
    const SynthMarket mkt = generate_market(spec);
    REQUIRE(ratio_trading_days(mkt.index, 1, 399) > 0.55);
    REQUIRE(ratio_trading_days(mkt.index, 401, 799) == Approx(0.5).margin(0.08));
    REQUIRE(ratio_trading_days(mkt.index, 801, 1199) < 0.45);
}

TEST_CASE("same seed reproduces identical files") {
    SynthSpec spec;
    spec.n_stocks = 5;
    spec.n_days = 30;
    spec.block_size = 2;
    spec.seed = 12345;
    const SynthMarket a = generate_market(spec);
    const SynthMarket b = generate_market(spec);
    std::ostringstream da, db, ia, ib;
    write_prices_csv(a.panel, da);
    write_prices_csv(b.panel, db);
    write_index_csv(a.index, ia);
    write_index_csv(b.index, ib);
    REQUIRE(da.str() == db.str());
    REQUIRE(ia.str() == ib.str());
    REQUIRE(da.str().substr(0, 28) == "date,ticker,adjusted_close\n2");
}

TEST_CASE("planted drift raises block returns only inside drawup segments") {
    SynthSpec spec;
    spec.n_stocks = 20;
    spec.n_days = 801;
    spec.block_size = 10;
    spec.block_rho = 0.0;
    spec.stock_vol = 0.001;
    spec.planted_drift = 0.02;
    spec.horizon_days = 200;
    spec.segments = "U:400,S:400";
    spec.seed = 9;
    const SynthMarket mkt = generate_market(spec);
    const ReturnPanel r = compute_returns(mkt.panel);
    // mean daily return of block vs non-block inside the U segment
    double block_u = 0.0, other_u = 0.0, block_s = 0.0, other_s = 0.0;
    for (int j = 0; j < 399; ++j)
        for (int i = 0; i < 20; ++i) (i < 10 ? block_u : other_u) += r.returns(i, j);
    for (int j = 400; j < 799; ++j)
        for (int i = 0; i < 20; ++i) (i < 10 ? block_s : other_s) += r.returns(i, j);
    const double daily = spec.planted_drift / spec.horizon_days;
    REQUIRE(block_u / (399 * 10) - other_u / (399 * 10) == Approx(daily).margin(daily * 0.6));
    REQUIRE(std::abs(block_s / (399 * 10) - other_s / (399 * 10)) < daily * 0.5);
}

TEST_CASE("round-trip: generated files load back into an identical panel") {
    SynthSpec spec;
    spec.n_stocks = 4;
    spec.n_days = 25;
    spec.block_size = 2;
    spec.seed = 21;
    const SynthMarket mkt = generate_market(spec);
    std::ostringstream data, index;
    write_prices_csv(mkt.panel, data);
    write_index_csv(mkt.index, index);
    std::istringstream data_in(data.str()), index_in(index.str());
    const PricePanel panel = load_prices(data_in);
    const IndexSeries idx = load_index(index_in);
    REQUIRE(panel.tickers == mkt.panel.tickers);
    REQUIRE(panel.dates == mkt.panel.dates);
    REQUIRE(idx.dates == mkt.index.dates);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 25; ++j)
            REQUIRE(panel.prices(i, j) == Approx(mkt.panel.prices(i, j)).epsilon(1e-8));
}
