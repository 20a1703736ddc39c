#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace urllc::stats {

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
/// trials == 0 yields the uninformative [0, 1].
Interval wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Half-width of the normal-approximation binomial interval, z * sqrt(p(1-p)/n).
double binomial_half_width(std::uint64_t successes, std::uint64_t trials,
                           double z = 1.959963984540054);

struct MeanCi {
    double mean = 0.0;
    Interval ci;
    std::uint64_t count = 0;
};

/// Sample mean with a normal-approximation 95% interval (1.96 standard errors).
MeanCi mean_ci95(std::span<const double> values);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

/// One-sided upper confidence bound on a correlation via Fisher's z transform.
double correlation_upper_bound(double rho, std::uint64_t n, double z = 1.6448536269514722);

}  // namespace urllc::stats
