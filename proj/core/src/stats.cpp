#include "urllc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "urllc/error.hpp"

namespace urllc::stats {

Interval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double binomial_half_width(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) {
        return 1.0;
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    return z * std::sqrt(p * (1.0 - p) / n);
}

MeanCi mean_ci95(std::span<const double> values) {
    MeanCi out;
    out.count = values.size();
    if (values.empty()) {
        return out;
    }
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - out.mean) * (v - out.mean);
    }
    const double se = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    out.ci = {out.mean - 1.959963984540054 * se, out.mean + 1.959963984540054 * se};
    return out;
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) {
            r[order[t]] = avg;
        }
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw UsageError("spearman: need two equally sized samples of length >= 2");
    }
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

double correlation_upper_bound(double rho, std::uint64_t n, double z) {
    if (n <= 3) {
        return 1.0;
    }
    const double clamped = std::clamp(rho, -0.999999999, 0.999999999);
    return std::tanh(std::atanh(clamped) + z / std::sqrt(static_cast<double>(n) - 3.0));
}

}  // namespace urllc::stats
