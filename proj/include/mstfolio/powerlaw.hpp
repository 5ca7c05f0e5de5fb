#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "mstfolio/errors.hpp"

namespace mstfolio {

struct PowerLawFit {
    double alpha = 0.0;
    double x_min = 0.0;
    std::size_t count = 0; // samples at or above x_min
};

/// Continuous maximum-likelihood fit of P(x) ~ x^-alpha on the tail x >= x_min:
/// alpha = 1 + m / sum(ln(x_k / x_min)). Estimates on fewer than ~10 tail
/// samples are statistically meaningless but still computed.
inline PowerLawFit fit_power_law(const std::vector<double>& samples, double x_min) {
    if (!(x_min > 0.0)) throw ContractError("fit_power_law: x_min must be positive");

    std::size_t m = 0;
    double log_sum = 0.0;
    for (double x : samples) {
        if (x >= x_min) {
            ++m;
            log_sum += std::log(x / x_min);
        }
    }
    if (m == 0) throw InsufficientDataError("fit_power_law: no samples at or above x_min");
    if (log_sum <= 0.0)
        throw DegenerateError("fit_power_law: divergent estimate, all tail samples equal x_min");

    PowerLawFit fit;
    fit.alpha = 1.0 + static_cast<double>(m) / log_sum;
    fit.x_min = x_min;
    fit.count = m;
    return fit;
}

struct PdfBin {
    double center = 0.0;
    double density = 0.0;
};

/// Log-binned empirical density of the positive samples, normalized so the
/// bin densities integrate to one over the included range.
inline std::vector<PdfBin> log_binned_pdf(const std::vector<double>& samples, int bins = 20) {
    std::vector<double> pos;
    for (double x : samples)
        if (x > 0.0) pos.push_back(x);
    if (pos.size() < 2) throw InsufficientDataError("log_binned_pdf: need at least 2 positive samples");
    if (bins < 1) throw ContractError("log_binned_pdf: need at least 1 bin");

    const double lo = *std::min_element(pos.begin(), pos.end());
    const double hi = *std::max_element(pos.begin(), pos.end());
    if (lo == hi) return {{lo, 0.0}};

    const double llo = std::log(lo), lhi = std::log(hi);
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double x : pos) {
        auto b = static_cast<std::size_t>((std::log(x) - llo) / (lhi - llo) * bins);
        if (b >= counts.size()) b = counts.size() - 1;
        ++counts[b];
    }

    std::vector<PdfBin> out;
    out.reserve(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double e0 = std::exp(llo + (lhi - llo) * static_cast<double>(b) / bins);
        const double e1 = std::exp(llo + (lhi - llo) * static_cast<double>(b + 1) / bins);
        out.push_back({std::sqrt(e0 * e1),
                       static_cast<double>(counts[b]) / (static_cast<double>(pos.size()) * (e1 - e0))});
    }
    return out;
}

} // namespace mstfolio
