#include <catch2/catch.hpp>

#include <cmath>

#include "mstfolio/correlation.hpp"
#include "mstfolio/moment_track.hpp"
#include "mstfolio/mst.hpp"
#include "mstfolio/rng.hpp"
#include "oracles.hpp"

using namespace mstfolio;

namespace {

ReturnPanel panel_from(const std::vector<std::vector<double>>& rows) {
    ReturnPanel p;
    const std::size_t days = rows[0].size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "S%02zu", i);
        p.tickers.emplace_back(buf);
    }
    for (std::size_t j = 0; j < days; ++j) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "2020-%02u-%02u", static_cast<unsigned>(1 + j / 28),
                      static_cast<unsigned>(1 + j % 28));
        p.dates.emplace_back(buf);
    }
    p.returns.resize(rows.size(), days);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < days; ++j) p.returns(i, j) = rows[i][j];
    return p;
}

DistMatrix dist_from(const Eigen::MatrixXd& values) {
    DistMatrix d;
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "S%02u", static_cast<unsigned>(i));
        d.tickers.emplace_back(buf);
    }
    d.values = values;
    return d;
}

} // namespace

TEST_CASE("pearson_matrix worked values") {
    SECTION("self-correlation is 1, exact anticorrelation is -1") {
        const ReturnPanel p = panel_from({{1, 2, 3}, {1, 2, 3}, {3, 2, 1}});
        const CorrMatrix c = pearson_matrix(p, 0, 2);
        REQUIRE(c.values(0, 1) == Approx(1.0).margin(1e-12));
        REQUIRE(c.values(0, 2) == Approx(-1.0).margin(1e-12));
        REQUIRE(c.values(0, 0) == 1.0);
    }
    SECTION("hand-computed off-diagonal") {
        const ReturnPanel p = panel_from({{1, 2, 3}, {1, 2, 4}});
        const CorrMatrix c = pearson_matrix(p, 0, 2);
        REQUIRE(c.values(0, 1) == Approx(std::sqrt(27.0 / 28.0)).margin(1e-12));
    }
    SECTION("zero-variance stock names the ticker") {
        const ReturnPanel p = panel_from({{1, 2, 3}, {5, 5, 5}});
        REQUIRE_THROWS_WITH(pearson_matrix(p, 0, 2), Catch::Contains("S01"));
    }
    SECTION("window must hold at least 2 days") {
        const ReturnPanel p = panel_from({{1, 2, 3}, {1, 2, 4}});
        REQUIRE_THROWS_AS(pearson_matrix(p, 1, 1), ContractError);
    }
}

TEST_CASE("pearson_matrix is invariant under positive affine rescaling") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> rows(4, std::vector<double>(30));
        for (auto& r : rows)
            for (double& x : r) x = rng.normal();
        const CorrMatrix base = pearson_matrix(panel_from(rows), 0, 29);

        const double a = rng.uniform(0.1, 10.0);
        const double b = rng.uniform(-5.0, 5.0);
        for (double& x : rows[2]) x = a * x + b;
        const CorrMatrix scaled = pearson_matrix(panel_from(rows), 0, 29);

        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                REQUIRE(scaled.values(i, j) == Approx(base.values(i, j)).margin(1e-10));
    }
}

TEST_CASE("distance_matrix endpoints and monotonicity") {
    CorrMatrix c;
    c.tickers = {"A", "B", "C", "D"};
    c.values = Eigen::MatrixXd::Identity(4, 4);
    c.values(0, 1) = c.values(1, 0) = 1.0;
    c.values(0, 2) = c.values(2, 0) = -1.0;
    c.values(0, 3) = c.values(3, 0) = 0.0;
    c.values(1, 2) = c.values(2, 1) = 0.25;
    c.values(1, 3) = c.values(3, 1) = 0.75;
    c.values(2, 3) = c.values(3, 2) = 0.5;
    const DistMatrix d = distance_matrix(c);
    REQUIRE(d.values(0, 1) == Approx(0.0).margin(1e-12));
    REQUIRE(d.values(0, 2) == Approx(2.0).margin(1e-12));
    REQUIRE(d.values(0, 3) == Approx(std::sqrt(2.0)).margin(1e-12));
    // ordering flips: rho(1,3)=0.75 > rho(2,3)=0.5 > rho(1,2)=0.25
    REQUIRE(d.values(1, 3) < d.values(2, 3));
    REQUIRE(d.values(2, 3) < d.values(1, 2));
    REQUIRE(d.values(2, 2) == 0.0);
}

TEST_CASE("distance transform reverses the correlation order everywhere") {
    Rng rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 8;
        CorrMatrix c;
        for (int i = 0; i < n; ++i) c.tickers.push_back("S" + std::to_string(i));
        c.values = Eigen::MatrixXd::Identity(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double r = rng.uniform(-1.0, 1.0);
                c.values(i, j) = r;
                c.values(j, i) = r;
            }
        const DistMatrix d = distance_matrix(c);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int x = 0; x < n; ++x)
                    for (int y = x + 1; y < n; ++y) {
                        if (c.values(a, b) < c.values(x, y))
                            REQUIRE(d.values(a, b) > d.values(x, y));
                    }
    }
}

TEST_CASE("build_mst worked example and brute force") {
    SECTION("three nodes") {
        Eigen::MatrixXd m(3, 3);
        m << 0.0, 0.5, 1.0, 0.5, 0.0, 0.8, 1.0, 0.8, 0.0;
        const MstGraph t = build_mst(dist_from(m));
        REQUIRE(t.edges.size() == 2);
        REQUIRE(t.total_weight() == Approx(1.3).margin(1e-12));
        REQUIRE(t.edges[0].a == 0);
        REQUIRE(t.edges[0].b == 1);
        REQUIRE(t.edges[1].a == 1);
        REQUIRE(t.edges[1].b == 2);
    }
    SECTION("all-equal distances fall to the lexicographic tie rule") {
        const int n = 5;
        const double w = 0.7;
        Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, w);
        m.diagonal().setZero();
        const MstGraph t = build_mst(dist_from(m));
        REQUIRE(t.total_weight() == Approx((n - 1) * w).margin(1e-12));
        // deterministic: every edge attaches to the lexicographically first node
        for (const MstEdge& e : t.edges) REQUIRE(e.a == 0);
        const MstGraph again = build_mst(dist_from(m));
        REQUIRE(again.edges.size() == t.edges.size());
        for (std::size_t i = 0; i < t.edges.size(); ++i) {
            REQUIRE(again.edges[i].a == t.edges[i].a);
            REQUIRE(again.edges[i].b == t.edges[i].b);
        }
    }
    SECTION("n=6 random matrices meet the exhaustive minimum") {
        Rng rng(42);
        for (int trial = 0; trial < 25; ++trial) {
            const Eigen::MatrixXd m = oracles::random_dist_matrix(6, rng);
            const MstGraph t = build_mst(dist_from(m));
            REQUIRE(t.total_weight() == Approx(oracles::brute_force_mst_weight(m)).margin(1e-12));
        }
    }
    SECTION("trivial graph") {
        REQUIRE_THROWS_AS(build_mst(dist_from(Eigen::MatrixXd::Zero(1, 1))), ContractError);
    }
}

TEST_CASE("Prim equals Kruskal total weight on random instances") {
    Rng rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(40));
        const Eigen::MatrixXd m = oracles::random_dist_matrix(n, rng);
        const MstGraph t = build_mst(dist_from(m));
        REQUIRE(static_cast<int>(t.edges.size()) == n - 1);
        REQUIRE(t.total_weight() == Approx(oracles::kruskal_weight(m)).margin(1e-9));
    }
}

TEST_CASE("mst is connected and acyclic") {
    Rng rng(303);
    const Eigen::MatrixXd m = oracles::random_dist_matrix(25, rng);
    const MstGraph t = build_mst(dist_from(m));
    // n-1 edges + full reachability implies a tree
    std::vector<bool> seen(25, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 0;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        ++count;
        for (const auto& [v, w] : t.adjacency[u])
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    REQUIRE(count == 25);
    REQUIRE(t.edges.size() == 24);
}

TEST_CASE("moment_track cross-correlations") {
    SECTION("identical windows leave the cross-correlation undefined") {
        // returns repeat with period 4 and the window length is 4, so every
        // window sees the same sample and all tracks are constant
        std::vector<std::vector<double>> rows(3, std::vector<double>(16));
        const double base[3][4] = {{0.01, -0.02, 0.005, 0.0},
                                   {-0.015, 0.01, 0.02, -0.01},
                                   {0.02, 0.0, -0.01, 0.012}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 16; ++j) rows[i][j] = base[i][j % 4];
        const ReturnPanel p = panel_from(rows);
        WindowSchedule s;
        s.window_days = 4;
        s.step_days = 4;
        s.horizon_days = 1;
        s.anchors = {3, 7, 11};
        const MomentTrack t = moment_track(s, p);
        REQUIRE(t.anchors.size() == 3);
        REQUIRE(t.corr_moments[0].mean == Approx(t.corr_moments[2].mean).margin(1e-12));
        REQUIRE_FALSE(t.cross_mean.has_value());
    }
    SECTION("two-regime data: mean tracks anticorrelate by construction") {
        Rng rng(9);
        const int days = 80, n = 6;
        std::vector<std::vector<double>> rows(n, std::vector<double>(days));
        for (int j = 0; j < days; ++j) {
            const double common = rng.normal();
            const double load = j < 40 ? 0.2 : 0.9; // low-rho then high-rho regime
            for (int i = 0; i < n; ++i)
                rows[i][j] = load * common + std::sqrt(1.0 - load * load) * rng.normal();
        }
        const ReturnPanel p = panel_from(rows);
        WindowSchedule s;
        s.window_days = 20;
        s.step_days = 10;
        s.horizon_days = 1;
        s.anchors = {19, 29, 39, 49, 59, 69};
        const MomentTrack t = moment_track(s, p);
        REQUIRE(t.cross_mean.has_value());
        REQUIRE(*t.cross_mean < 0.0);
    }
    SECTION("mean-track cross-correlation equals a direct Pearson recomputation") {
        Rng rng(17);
        const int days = 200, n = 5;
        std::vector<std::vector<double>> rows(n, std::vector<double>(days));
        for (int j = 0; j < days; ++j) {
            const double common = rng.normal();
            const double load = 0.3 + 0.4 * std::sin(j * 0.15);
            for (int i = 0; i < n; ++i)
                rows[i][j] = load * common + rng.normal();
        }
        const ReturnPanel p = panel_from(rows);
        WindowSchedule s;
        s.window_days = 30;
        s.step_days = 15;
        s.horizon_days = 1;
        for (int t0 = 29; t0 + 1 < days && s.anchors.size() < 10; t0 += 15) s.anchors.push_back(t0);
        const MomentTrack t = moment_track(s, p);
        REQUIRE(t.anchors.size() == 10);

        // oracle: run the two mean tracks through pearson_matrix as a 2-stock panel
        std::vector<std::vector<double>> tracks(2);
        for (std::size_t i = 0; i < t.anchors.size(); ++i) {
            tracks[0].push_back(t.corr_moments[i].mean);
            tracks[1].push_back(t.dist_moments[i].mean);
        }
        const CorrMatrix via_matrix = pearson_matrix(panel_from(tracks), 0, 9);
        REQUIRE(*t.cross_mean == Approx(via_matrix.values(0, 1)).margin(1e-12));
    }
}
