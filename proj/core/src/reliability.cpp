#include "urllc/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "urllc/csv.hpp"

namespace urllc::reliability {

LatencyCdf LatencyCdf::from_samples(std::span<const LatencySample> samples) {
    if (samples.empty()) {
        throw UsageError("cdf_from_samples: empty input");
    }
    std::vector<double> finite;
    finite.reserve(samples.size());
    std::uint64_t drops = 0;
    for (const auto& s : samples) {
        if (s) {
            finite.push_back(*s);
        } else {
            ++drops;
        }
    }
    return from_parts(std::move(finite), drops);
}

LatencyCdf LatencyCdf::from_parts(std::vector<double> finite, std::uint64_t drops) {
    for (const double v : finite) {
        if (!std::isfinite(v) || v < 0.0) {
            throw UsageError("latency samples must be finite and non-negative");
        }
    }
    std::sort(finite.begin(), finite.end());
    LatencyCdf cdf;
    cdf.sorted_ = std::move(finite);
    cdf.drops_ = drops;
    return cdf;
}

LatencyCdf LatencyCdf::merge(const LatencyCdf& a, const LatencyCdf& b) {
    LatencyCdf out;
    out.sorted_.reserve(a.sorted_.size() + b.sorted_.size());
    std::merge(a.sorted_.begin(), a.sorted_.end(), b.sorted_.begin(), b.sorted_.end(),
               std::back_inserter(out.sorted_));
    out.drops_ = a.drops_ + b.drops_;
    return out;
}

std::uint64_t LatencyCdf::count_within(double deadline) const {
    if (std::isnan(deadline) || deadline < 0.0) {
        throw UsageError("deadline must be non-negative");
    }
    return static_cast<std::uint64_t>(
        std::distance(sorted_.begin(), std::upper_bound(sorted_.begin(), sorted_.end(), deadline)));
}

double LatencyCdf::reliability_at(double deadline) const {
    const auto n = count_within(deadline);
    if (empty()) {
        return 0.0;
    }
    return static_cast<double>(n) / static_cast<double>(total());
}

double LatencyCdf::drop_probability() const noexcept {
    return empty() ? 0.0 : static_cast<double>(drops_) / static_cast<double>(total());
}

stats::Interval LatencyCdf::reliability_interval(double deadline) const {
    return stats::wilson(count_within(deadline), total());
}

std::optional<double> LatencyCdf::latency_at(double level) const {
    if (empty()) {
        return std::nullopt;
    }
    // Smallest count c >= 1 with c / total >= level.
    const double needed = std::ceil(level * static_cast<double>(total()) - 1e-9);
    const auto c = static_cast<std::uint64_t>(std::max(1.0, needed));
    if (c > sorted_.size()) {
        return std::nullopt;
    }
    return sorted_[c - 1];
}

void StageModel::validate() const {
    for (const double p : {p_aux, p_meta, p_data}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw UsageError("stage success probabilities must lie in [0, 1]");
        }
    }
}

double packet_success(const StageModel& stages) {
    stages.validate();
    return product_of<double>(std::initializer_list<double>{stages.p_aux, stages.p_meta, stages.p_data});
}

ProtocolChain::ProtocolChain(std::initializer_list<double> steps)
    : ProtocolChain(std::vector<double>(steps)) {}

ProtocolChain::ProtocolChain(std::vector<double> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) {
        throw UsageError("a protocol chain needs at least one step");
    }
    for (const double p : steps_) {
        check_step(p);
    }
}

void ProtocolChain::append(double step_success) {
    check_step(step_success);
    steps_.push_back(step_success);
}

void ProtocolChain::check_step(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw UsageError("step success probability must lie in [0, 1]");
    }
}

double chain_success(const ProtocolChain& chain) { return product_of<double>(chain.steps()); }

void write_csv(std::ostream& out, const LatencyCdf& cdf, std::span<const double> deadlines) {
    csv::Writer w(out);
    w.header({"deadline_s", "reliability", "n_samples", "n_drops"});
    for (const double d : deadlines) {
        w.row({d, cdf.reliability_at(d), cdf.total(), cdf.drops()});
    }
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
        throw UsageError("log_grid: need 0 < lo <= hi and count >= 1");
    }
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = lo;
        return grid;
    }
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace urllc::reliability
