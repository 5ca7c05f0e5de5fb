#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "mstfolio/correlation.hpp"
#include "mstfolio/errors.hpp"
#include "mstfolio/mst.hpp"

namespace mstfolio {

inline std::vector<int> degree(const MstGraph& tree) {
    std::vector<int> k(tree.size(), 0);
    for (const MstEdge& e : tree.edges) {
        ++k[e.a];
        ++k[e.b];
    }
    return k;
}

/// Betweenness of node v: the number of unordered node pairs {i, j}, both
/// distinct from v, whose unique tree path passes through v. Removing v
/// splits the tree into components of sizes s_1..s_k, and the count is
/// sum_{a<b} s_a*s_b; one rooted subtree-size pass gives it in O(n).
/// Leaves score 0.
inline std::vector<std::int64_t> betweenness(const MstGraph& tree) {
    const int n = tree.size();
    std::vector<std::int64_t> c(n, 0);
    if (n < 3) return c;

    std::vector<std::int64_t> subtree(n, 1);
    std::vector<int> parent(n, -1), order;
    order.reserve(n);
    std::vector<int> stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (const auto& [v, w] : tree.adjacency[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            parent[v] = u;
            stack.push_back(v);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) subtree[parent[*it]] += subtree[*it];

    for (int v = 0; v < n; ++v) {
        // component sizes around v: each child subtree, plus the parent side
        std::int64_t rest = n - 1;
        std::int64_t pair_sum = 0, sq_sum = 0;
        for (const auto& [u, w] : tree.adjacency[v]) {
            const std::int64_t s = (parent[u] == v) ? subtree[u] : rest - (subtree[v] - 1);
            pair_sum += s;
            sq_sum += s * s;
        }
        c[v] = (pair_sum * pair_sum - sq_sum) / 2;
    }
    return c;
}

/// Tree-path distance (sum of edge weights along the unique path) from every
/// node to center; the center itself is 0.
inline std::vector<double> node_distances(const MstGraph& tree, int center) {
    const int n = tree.size();
    if (center < 0 || center >= n) throw ContractError("node_distances: center node out of range");
    std::vector<double> dist(n, -1.0);
    dist[center] = 0.0;
    std::vector<int> stack{center};
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : tree.adjacency[u]) {
            if (dist[v] >= 0.0) continue;
            dist[v] = dist[u] + w;
            stack.push_back(v);
        }
    }
    return dist;
}

inline std::vector<double> node_distances(const MstGraph& tree, const std::string& center) {
    const auto it = std::lower_bound(tree.tickers.begin(), tree.tickers.end(), center);
    if (it == tree.tickers.end() || *it != center)
        throw ContractError("node_distances: unknown center ticker " + center);
    return node_distances(tree, static_cast<int>(it - tree.tickers.begin()));
}

enum class CenterCriterion { degree, correlation, distance };

/// Central node of the tree. degree: largest K. correlation: largest sum of
/// correlation coefficients with tree neighbors. distance: smallest mean
/// tree-path distance to all other nodes. Ties go to the lexicographically
/// smaller ticker, which is the smaller index.
inline int central_node(const MstGraph& tree, const CorrMatrix& corr, CenterCriterion criterion) {
    const int n = tree.size();
    if (n < 2) throw ContractError("central_node: trivial graph");

    switch (criterion) {
    case CenterCriterion::degree: {
        const std::vector<int> k = degree(tree);
        int best = 0;
        for (int v = 1; v < n; ++v)
            if (k[v] > k[best]) best = v;
        return best;
    }
    case CenterCriterion::correlation: {
        if (corr.size() != n) throw ContractError("central_node: correlation matrix size mismatch");
        int best = 0;
        double best_sum = 0.0;
        for (int v = 0; v < n; ++v) {
            double s = 0.0;
            for (const auto& [u, w] : tree.adjacency[v]) s += corr.values(v, u);
            if (v == 0 || s > best_sum) {
                best = v;
                best_sum = s;
            }
        }
        return best;
    }
    case CenterCriterion::distance: {
        int best = 0;
        double best_sum = 0.0;
        for (int v = 0; v < n; ++v) {
            const std::vector<double> d = node_distances(tree, v);
            double s = 0.0;
            for (double x : d) s += x;
            if (v == 0 || s < best_sum) {
                best = v;
                best_sum = s;
            }
        }
        return best;
    }
    }
    throw ContractError("central_node: unknown criterion");
}

/// Per-node topology of one window's tree: degree K, betweenness C, and the
/// distance to the central node under each of the three center definitions.
struct NodeMetrics {
    std::vector<std::string> tickers;
    std::vector<int> degree;
    std::vector<std::int64_t> betweenness;
    std::vector<double> dist_degree;
    std::vector<double> dist_correlation;
    std::vector<double> dist_distance;
    std::string center_degree;
    std::string center_correlation;
    std::string center_distance;

    std::size_t size() const { return tickers.size(); }
};

/// hop_count switches the distance measures from edge-weight sums to hop
/// counts.
inline NodeMetrics compute_node_metrics(const MstGraph& tree, const CorrMatrix& corr,
                                        bool hop_count = false) {
    NodeMetrics m;
    m.tickers = tree.tickers;
    m.degree = degree(tree);
    m.betweenness = betweenness(tree);

    const MstGraph* measured = &tree;
    MstGraph unit;
    if (hop_count) {
        unit = tree;
        for (MstEdge& e : unit.edges) e.weight = 1.0;
        for (auto& adj : unit.adjacency)
            for (auto& [v, w] : adj) w = 1.0;
        measured = &unit;
    }

    const int c_deg = central_node(*measured, corr, CenterCriterion::degree);
    const int c_cor = central_node(*measured, corr, CenterCriterion::correlation);
    const int c_dis = central_node(*measured, corr, CenterCriterion::distance);
    m.center_degree = tree.tickers[c_deg];
    m.center_correlation = tree.tickers[c_cor];
    m.center_distance = tree.tickers[c_dis];
    m.dist_degree = node_distances(*measured, c_deg);
    m.dist_correlation = node_distances(*measured, c_cor);
    m.dist_distance = node_distances(*measured, c_dis);
    return m;
}

} // namespace mstfolio
