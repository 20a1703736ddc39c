#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "urllc/reliability.hpp"

namespace urllc::minislot {

inline constexpr unsigned kSlotSymbols = 7;
inline constexpr unsigned kMaxMiniSlot = 6;

/// Consecutive 7-symbol slots. The first `control_prefix` symbols of every slot carry
/// control/pilots and can never be preempted; every other symbol carries eMBB data.
struct RadioTimeline {
    std::uint64_t n_slots = 1;
    unsigned control_prefix = 1;
    double symbol_duration = 1.0 / 14000.0;

    void validate() const;
    std::uint64_t horizon_symbols() const noexcept { return n_slots * kSlotSymbols; }
    std::uint64_t preemptable_symbols() const noexcept {
        return n_slots * (kSlotSymbols - control_prefix);
    }
    bool is_control(std::uint64_t symbol) const noexcept {
        return symbol % kSlotSymbols < control_prefix;
    }
};

struct UrllcArrival {
    double arrival_time = 0.0;
    unsigned size_symbols = 1;
};

enum class Policy { earliest_fit };

struct ArrivalOutcome {
    UrllcArrival arrival;
    /// First symbol of the mini-slot; nullopt when the arrival did not fit the horizon.
    std::optional<std::uint64_t> start_symbol;
    double completion_time = 0.0;
    double latency = 0.0;

    bool dropped() const noexcept { return !start_symbol.has_value(); }
};

struct ScheduleResult {
    std::vector<ArrivalOutcome> outcomes;
    std::uint64_t preempted_symbols = 0;
    std::uint64_t preemptable_symbols = 0;

    /// Fraction of eMBB symbols replaced by mini-slots.
    double embb_loss_fraction() const noexcept;
    reliability::LatencyCdf latency_cdf() const;
};

/// Places each arrival, in order, in the earliest run of size_symbols free preemptable
/// symbols that starts strictly after the arrival time. Arrivals must be sorted by time.
ScheduleResult schedule(const RadioTimeline& timeline, std::span<const UrllcArrival> arrivals,
                        Policy policy = Policy::earliest_fit);

struct LoadParams {
    /// Poisson arrival rate in arrivals per second.
    double arrival_rate = 0.0;
    /// Relative weights of mini-slot sizes 1..6.
    std::array<double, kMaxMiniSlot> size_weights{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    std::uint64_t horizon_slots = 1000;
    unsigned control_prefix = 1;
    double symbol_duration = 1.0 / 14000.0;
    std::uint64_t seed = 0;

    void validate() const;
    /// Offered mini-slot symbols per preemptable symbol.
    double utilization() const;
};

struct LoadResult {
    reliability::LatencyCdf cdf;
    ScheduleResult schedule;
    RadioTimeline timeline;
};

/// Seeded Poisson arrivals over the horizon, scheduled with earliest_fit.
LoadResult urllc_latency_cdf(const LoadParams& params);

/// `arrival_time_s,size_symbols,latency_s,dropped` followed by a
/// `# embb_loss_fraction,<value>` summary line.
void write_schedule_csv(std::ostream& out, const ScheduleResult& result);

}  // namespace urllc::minislot
