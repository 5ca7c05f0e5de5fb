#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mstfolio/errors.hpp"
#include "mstfolio/rng.hpp"
#include "mstfolio/topology.hpp"

namespace mstfolio {

/// The five topological ranking parameters.
enum class Parameter { degree, betweenness, dist_degree, dist_correlation, dist_distance };

inline const char* to_string(Parameter p) {
    switch (p) {
    case Parameter::degree: return "K";
    case Parameter::betweenness: return "C";
    case Parameter::dist_degree: return "D_degree";
    case Parameter::dist_correlation: return "D_correlation";
    case Parameter::dist_distance: return "D_distance";
    }
    return "?";
}

inline const std::vector<Parameter>& all_parameters() {
    static const std::vector<Parameter> p{Parameter::degree, Parameter::betweenness,
                                          Parameter::dist_degree, Parameter::dist_correlation,
                                          Parameter::dist_distance};
    return p;
}

enum class PortfolioKind { central, peripheral, random };

inline const char* to_string(PortfolioKind k) {
    switch (k) {
    case PortfolioKind::central: return "central";
    case PortfolioKind::peripheral: return "peripheral";
    case PortfolioKind::random: return "random";
    }
    return "?";
}

/// Equal-weight stock basket for one anchor. Members are distinct tickers in
/// lexicographic order; every member carries weight 1/|members|.
struct Portfolio {
    int anchor = -1;
    std::string anchor_date;
    Parameter parameter = Parameter::degree;
    PortfolioKind kind = PortfolioKind::central;
    std::vector<std::string> members;
    std::uint64_t seed = 0;

    double weight() const { return members.empty() ? 0.0 : 1.0 / static_cast<double>(members.size()); }
};

inline std::size_t portfolio_size(std::size_t universe, double fraction) {
    // the epsilon keeps fractions like 0.3 * 10 from flooring to 2
    const auto k = static_cast<std::size_t>(fraction * static_cast<double>(universe) + 1e-9);
    return std::max<std::size_t>(1, k);
}

namespace detail {

inline const std::vector<double>& distance_values(const NodeMetrics& m, Parameter p) {
    switch (p) {
    case Parameter::dist_degree: return m.dist_degree;
    case Parameter::dist_correlation: return m.dist_correlation;
    case Parameter::dist_distance: return m.dist_distance;
    default: throw ContractError("not a distance parameter");
    }
}

/// Node indices ordered by (value ascending, ticker ascending). Central and
/// peripheral distance portfolios are the head and tail of this one order,
/// which keeps them disjoint whenever 2*k <= N regardless of ties.
template <typename V>
std::vector<int> order_ascending(const std::vector<V>& values) {
    std::vector<int> ix(values.size());
    std::iota(ix.begin(), ix.end(), 0);
    std::stable_sort(ix.begin(), ix.end(), [&](int a, int b) { return values[a] < values[b]; });
    return ix;
}

/// Node indices ordered by (value descending, ticker ascending).
template <typename V>
std::vector<int> order_descending(const std::vector<V>& values) {
    std::vector<int> ix(values.size());
    std::iota(ix.begin(), ix.end(), 0);
    std::sort(ix.begin(), ix.end(), [&](int a, int b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return a < b;
    });
    return ix;
}

} // namespace detail

/// Central portfolio: the floor(fraction*N) nodes with the largest degree or
/// betweenness, or the smallest distance to the center. Ties resolve by
/// lexicographic ticker.
inline Portfolio select_central(const NodeMetrics& metrics, Parameter parameter, double fraction) {
    if (!(fraction > 0.0 && fraction <= 0.5))
        throw ContractError("select_central: fraction must lie in (0, 0.5]");
    const std::size_t k = portfolio_size(metrics.size(), fraction);

    std::vector<int> picked;
    if (parameter == Parameter::degree) {
        std::vector<int> ix = detail::order_descending(metrics.degree);
        picked.assign(ix.begin(), ix.begin() + k);
    } else if (parameter == Parameter::betweenness) {
        std::vector<int> ix = detail::order_descending(metrics.betweenness);
        picked.assign(ix.begin(), ix.begin() + k);
    } else {
        std::vector<int> ix = detail::order_ascending(detail::distance_values(metrics, parameter));
        picked.assign(ix.begin(), ix.begin() + k);
    }
    Portfolio p;
    p.parameter = parameter;
    p.kind = PortfolioKind::central;
    for (int i : picked) p.members.push_back(metrics.tickers[i]);
    std::sort(p.members.begin(), p.members.end());
    return p;
}

/// Peripheral portfolio. For degree/betweenness it is a seeded uniform
/// subsample of the leaf set {K=1} / {C=0}, which in a tree always exceeds
/// 10% of the nodes; for the distance parameters it is the far tail of the
/// distance ranking.
inline Portfolio select_peripheral(const NodeMetrics& metrics, Parameter parameter, double fraction,
                                   std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 0.5))
        throw ContractError("select_peripheral: fraction must lie in (0, 0.5]");
    const std::size_t k = portfolio_size(metrics.size(), fraction);

    Portfolio p;
    p.parameter = parameter;
    p.kind = PortfolioKind::peripheral;
    p.seed = seed;

    if (parameter == Parameter::degree || parameter == Parameter::betweenness) {
        std::vector<std::string> eligible;
        for (std::size_t i = 0; i < metrics.size(); ++i) {
            const bool leaf = parameter == Parameter::degree ? metrics.degree[i] == 1
                                                             : metrics.betweenness[i] == 0;
            if (leaf) eligible.push_back(metrics.tickers[i]);
        }
        if (eligible.size() < k)
            throw InsufficientDataError("select_peripheral: selection infeasible, only " +
                                        std::to_string(eligible.size()) + " eligible nodes for " +
                                        std::to_string(k) + " slots");
        Rng rng(seed);
        p.members = sample_without_replacement(std::move(eligible), k, rng);
    } else {
        const std::vector<int> ix = detail::order_ascending(detail::distance_values(metrics, parameter));
        for (auto it = ix.end() - static_cast<std::ptrdiff_t>(k); it != ix.end(); ++it)
            p.members.push_back(metrics.tickers[*it]);
        std::sort(p.members.begin(), p.members.end());
    }
    return p;
}

/// Seeded uniform sample of floor(fraction*N) tickers, the benchmark basket.
inline Portfolio select_random(const std::vector<std::string>& universe, double fraction,
                               std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ContractError("select_random: fraction must lie in (0, 1)");
    if (universe.empty()) throw ContractError("select_random: empty universe");
    const std::size_t k = portfolio_size(universe.size(), fraction);

    Portfolio p;
    p.kind = PortfolioKind::random;
    p.seed = seed;
    Rng rng(seed);
    p.members = sample_without_replacement(universe, k, rng);
    return p;
}

} // namespace mstfolio
