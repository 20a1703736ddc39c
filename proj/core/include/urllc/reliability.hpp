#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "urllc/error.hpp"
#include "urllc/stats.hpp"

namespace urllc::reliability {

/// One observed latency in seconds; std::nullopt marks a dropped packet (infinite latency).
using LatencySample = std::optional<double>;
inline constexpr std::nullopt_t kDrop = std::nullopt;

/// Empirical latency distribution with an explicit drop mass at infinity.
class LatencyCdf {
public:
    /// Empty distribution (zero samples). reliability_at() returns 0 for it.
    LatencyCdf() = default;

    /// Throws UsageError on an empty input, a negative or non-finite latency.
    static LatencyCdf from_samples(std::span<const LatencySample> samples);

    /// Builds from finite latencies plus a drop count. Empty inputs are allowed.
    static LatencyCdf from_parts(std::vector<double> finite, std::uint64_t drops);

    /// Pools two distributions.
    static LatencyCdf merge(const LatencyCdf& a, const LatencyCdf& b);

    std::uint64_t total() const noexcept { return sorted_.size() + drops_; }
    std::uint64_t drops() const noexcept { return drops_; }
    bool empty() const noexcept { return total() == 0; }
    std::span<const double> sorted_samples() const noexcept { return sorted_; }

    /// Number of samples with latency <= deadline. Drops never count.
    std::uint64_t count_within(double deadline) const;

    /// count_within(deadline) / total(). The infinite deadline gives 1 - P_e.
    double reliability_at(double deadline) const;

    /// drops / total, or 0 for an empty distribution.
    double drop_probability() const noexcept;

    /// Wilson interval on reliability_at(deadline).
    stats::Interval reliability_interval(double deadline) const;

    /// Smallest latency t with reliability_at(t) >= level, or nullopt if the asymptote
    /// 1 - P_e lies below `level`.
    std::optional<double> latency_at(double level) const;

private:
    std::vector<double> sorted_;
    std::uint64_t drops_ = 0;
};

/// Product of success probabilities. Generic over the number type so that exact rational
/// arithmetic can be used for verification.
template <class T, class Range>
T product_of(const Range& factors) {
    T result{1};
    for (const auto& f : factors) {
        result *= f;
    }
    return result;
}

/// Success probabilities of auxiliary procedures (detection, estimation, sync),
/// metadata and data for a single packet.
struct StageModel {
    double p_aux = 1.0;
    double p_meta = 1.0;
    double p_data = 1.0;

    void validate() const;
};

/// P_S(A) * P_S(M) * P_S(D).
double packet_success(const StageModel& stages);

/// Ordered per-packet success probabilities of a multi-exchange protocol.
class ProtocolChain {
public:
    ProtocolChain(std::initializer_list<double> steps);
    explicit ProtocolChain(std::vector<double> steps);

    /// Appends one exchange. Never increases chain_success().
    void append(double step_success);

    std::span<const double> steps() const noexcept { return steps_; }

private:
    static void check_step(double p);

    std::vector<double> steps_;
};

double chain_success(const ProtocolChain& chain);

/// Writes `deadline_s,reliability,n_samples,n_drops`, one row per deadline.
void write_csv(std::ostream& out, const LatencyCdf& cdf, std::span<const double> deadlines);

/// `count` log-spaced points from `lo` to `hi` inclusive (both > 0).
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace urllc::reliability
