#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mstfolio/correlation.hpp"
#include "mstfolio/errors.hpp"

namespace mstfolio {

struct MstEdge {
    int a = 0; // a < b, indices into tickers
    int b = 0;
    double weight = 0.0;
};

/// Minimum spanning tree over the complete distance-weighted stock graph:
/// exactly n-1 edges, connected, acyclic. Edges are kept sorted by (a, b).
struct MstGraph {
    std::vector<std::string> tickers;
    std::vector<MstEdge> edges;
    std::vector<std::vector<std::pair<int, double>>> adjacency;

    int size() const { return static_cast<int>(tickers.size()); }

    double total_weight() const {
        double w = 0.0;
        for (const MstEdge& e : edges) w += e.weight;
        return w;
    }
};

/// Prim on the dense matrix, O(n^2) with a key array — the right shape for
/// complete graphs. Ties are broken toward the lexicographically smaller
/// (i, j) pair; since tickers are sorted, index order is ticker order.
inline MstGraph build_mst(const DistMatrix& dist) {
    const int n = static_cast<int>(dist.size());
    if (n < 2) throw ContractError("build_mst: trivial graph, need at least 2 nodes");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!std::isfinite(dist.values(i, j)))
                throw ContractError("build_mst: non-finite distance between " + dist.tickers[i] +
                                    " and " + dist.tickers[j]);

    std::vector<bool> in_tree(n, false);
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    key[0] = 0.0;

    MstGraph tree;
    tree.tickers = dist.tickers;
    tree.adjacency.assign(n, {});

    auto edge_pair = [](int u, int v) { return std::pair<int, int>(std::min(u, v), std::max(u, v)); };

    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (best < 0 || key[v] < key[best]) {
                best = v;
            } else if (key[v] == key[best] && parent[v] >= 0 && parent[best] >= 0 &&
                       edge_pair(parent[v], v) < edge_pair(parent[best], best)) {
                best = v;
            }
        }
        in_tree[best] = true;
        if (parent[best] >= 0) {
            const auto [a, b] = edge_pair(parent[best], best);
            tree.edges.push_back({a, b, key[best]});
            tree.adjacency[a].emplace_back(b, key[best]);
            tree.adjacency[b].emplace_back(a, key[best]);
        }
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double w = dist.values(best, v);
            if (w < key[v] ||
                (w == key[v] && (parent[v] < 0 || edge_pair(best, v) < edge_pair(parent[v], v)))) {
                key[v] = w;
                parent[v] = best;
            }
        }
    }

    std::sort(tree.edges.begin(), tree.edges.end(),
              [](const MstEdge& x, const MstEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (auto& adj : tree.adjacency) std::sort(adj.begin(), adj.end());
    return tree;
}

/// DOT export. Line width is inversely proportional to distance so that a
/// thicker line stands for a shorter distance.
inline void write_dot(const MstGraph& tree, std::ostream& out) {
    out << "graph mst {\n";
    out << "  node [shape=ellipse];\n";
    for (const std::string& t : tree.tickers) out << "  \"" << t << "\";\n";
    char buf[96];
    for (const MstEdge& e : tree.edges) {
        const double d = std::max(e.weight, 1e-6);
        std::snprintf(buf, sizeof buf, "[weight=\"%.6f\", penwidth=\"%.3f\"]", e.weight,
                      std::min(1.0 / d, 20.0));
        out << "  \"" << tree.tickers[e.a] << "\" -- \"" << tree.tickers[e.b] << "\" " << buf << ";\n";
    }
    out << "}\n";
}

} // namespace mstfolio
