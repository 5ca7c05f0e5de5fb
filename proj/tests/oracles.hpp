// Independent reference implementations used only to check the library.
// Deliberately slow and simple; nothing here shares code with the
// implementations under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "mstfolio/correlation.hpp"
#include "mstfolio/mst.hpp"
#include "mstfolio/rng.hpp"

namespace oracles {

// ---------------------------------------------------------------- Kruskal
inline int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

inline double kruskal_weight(const Eigen::MatrixXd& dist) {
    const int n = static_cast<int>(dist.rows());
    struct E {
        double w;
        int a, b;
    };
    std::vector<E> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({dist(i, j), i, j});
    std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) {
        return std::tie(x.w, x.a, x.b) < std::tie(y.w, y.a, y.b);
    });
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    double total = 0.0;
    int used = 0;
    for (const E& e : edges) {
        const int ra = uf_find(parent, e.a), rb = uf_find(parent, e.b);
        if (ra == rb) continue;
        parent[ra] = rb;
        total += e.w;
        if (++used == n - 1) break;
    }
    return total;
}

// -------------------------------------------- exhaustive spanning trees
// Decode a Pruefer sequence into tree edges (labels 0..n-1).
inline std::vector<std::pair<int, int>> pruefer_decode(const std::vector<int>& seq, int n) {
    std::vector<int> deg(n, 1);
    for (int s : seq) ++deg[s];
    std::vector<std::pair<int, int>> edges;
    std::vector<bool> used(n, false);
    for (int s : seq) {
        for (int leaf = 0; leaf < n; ++leaf) {
            if (deg[leaf] == 1 && !used[leaf]) {
                edges.emplace_back(leaf, s);
                used[leaf] = true;
                --deg[s];
                break;
            }
        }
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i) {
        if (deg[i] == 1 && !used[i]) {
            if (u < 0)
                u = i;
            else
                v = i;
        }
    }
    edges.emplace_back(u, v);
    return edges;
}

/// Minimum spanning-tree weight by enumerating all n^(n-2) labeled trees.
inline double brute_force_mst_weight(const Eigen::MatrixXd& dist) {
    const int n = static_cast<int>(dist.rows());
    if (n == 2) return dist(0, 1);
    const int len = n - 2;
    std::vector<int> seq(len, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        double w = 0.0;
        for (const auto& [a, b] : pruefer_decode(seq, n)) w += dist(a, b);
        best = std::min(best, w);
        int k = len - 1;
        while (k >= 0 && seq[k] == n - 1) seq[k--] = 0;
        if (k < 0) break;
        ++seq[k];
    }
    return best;
}

// ------------------------------------------------- pathwalk betweenness
/// For every unordered pair, walk the unique tree path and credit each
/// interior node. O(n^3)-ish; the reference for the closed-form counts.
inline std::vector<std::int64_t> pathwalk_betweenness(const mstfolio::MstGraph& tree) {
    const int n = tree.size();
    std::vector<std::int64_t> c(n, 0);
    std::vector<int> parent(n), order;
    for (int s = 0; s < n; ++s) {
        // BFS parents from s
        std::fill(parent.begin(), parent.end(), -2);
        parent[s] = -1;
        order.assign(1, s);
        for (std::size_t q = 0; q < order.size(); ++q) {
            const int u = order[q];
            for (const auto& [v, w] : tree.adjacency[u])
                if (parent[v] == -2) {
                    parent[v] = u;
                    order.push_back(v);
                }
        }
        for (int t = s + 1; t < n; ++t) {
            // credit every node strictly between t and s
            int x = parent[t];
            while (x != s && x != -1) {
                ++c[x];
                x = parent[x];
            }
        }
    }
    return c;
}

// -------------------------------------------------- random test fixtures
inline Eigen::MatrixXd random_dist_matrix(int n, mstfolio::Rng& rng) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double w = rng.uniform(0.05, 2.0);
            d(i, j) = w;
            d(j, i) = w;
        }
    return d;
}

inline mstfolio::MstGraph random_tree(int n, mstfolio::Rng& rng) {
    mstfolio::MstGraph tree;
    for (int i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "T%03d", i);
        tree.tickers.emplace_back(buf);
    }
    tree.adjacency.assign(n, {});
    if (n == 2) {
        tree.edges.push_back({0, 1, rng.uniform(0.1, 2.0)});
    } else {
        std::vector<int> seq(n - 2);
        for (int& s : seq) s = static_cast<int>(rng.next_below(n));
        for (const auto& [a, b] : pruefer_decode(seq, n)) {
            const auto [lo, hi] = std::minmax(a, b);
            tree.edges.push_back({lo, hi, rng.uniform(0.1, 2.0)});
        }
    }
    for (const mstfolio::MstEdge& e : tree.edges) {
        tree.adjacency[e.a].emplace_back(e.b, e.weight);
        tree.adjacency[e.b].emplace_back(e.a, e.weight);
    }
    std::sort(tree.edges.begin(), tree.edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    for (auto& adj : tree.adjacency) std::sort(adj.begin(), adj.end());
    return tree;
}

// --------------------------------------------------- F-tail by quadrature
/// P(F_{d1,d2} > f0) via Simpson integration of the F density on a
/// compactified grid. Accurate to ~1e-8 for moderate df; used as the
/// independent reference for the incomplete-beta path.
inline double f_tail_by_quadrature(double f0, double d1, double d2) {
    const double ln_norm = std::lgamma((d1 + d2) / 2) - std::lgamma(d1 / 2) - std::lgamma(d2 / 2) +
                           (d1 / 2) * std::log(d1 / d2);
    const auto pdf = [&](double x) {
        if (x <= 0.0) return 0.0;
        return std::exp(ln_norm + (d1 / 2 - 1) * std::log(x) -
                        ((d1 + d2) / 2) * std::log(1.0 + d1 * x / d2));
    };
    // substitute x = f0 + s/(1-s), s in [0,1): integrand g(s) = pdf(x)/(1-s)^2
    const auto g = [&](double s) {
        const double om = 1.0 - s;
        return pdf(f0 + s / om) / (om * om);
    };
    const int n = 200000; // even
    const double h = 1.0 / n;
    double acc = g(0.0);
    for (int i = 1; i < n; ++i) acc += g(i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// two-sample pooled-variance t statistic, for the F = t^2 identity
inline double pooled_t_stat(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double ma = 0.0, mb = 0.0;
    for (double v : a) ma += v;
    for (double v : b) mb += v;
    ma /= na;
    mb /= nb;
    double ssa = 0.0, ssb = 0.0;
    for (double v : a) ssa += (v - ma) * (v - ma);
    for (double v : b) ssb += (v - mb) * (v - mb);
    const double sp2 = (ssa + ssb) / (na + nb - 2.0);
    return (ma - mb) / std::sqrt(sp2 * (1.0 / na + 1.0 / nb));
}

} // namespace oracles
