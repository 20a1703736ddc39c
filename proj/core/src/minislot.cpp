#include "urllc/minislot.hpp"

#include <cmath>
#include <random>

#include "urllc/csv.hpp"
#include "urllc/error.hpp"
#include "urllc/seed.hpp"

namespace urllc::minislot {

void RadioTimeline::validate() const {
    if (n_slots < 1) {
        throw UsageError("timeline needs at least one slot");
    }
    if (control_prefix < 1 || control_prefix > kMaxMiniSlot) {
        throw UsageError("control_prefix must lie in [1, 6]");
    }
    if (!(symbol_duration > 0.0) || !std::isfinite(symbol_duration)) {
        throw UsageError("symbol_duration must be finite and > 0");
    }
}

double ScheduleResult::embb_loss_fraction() const noexcept {
    return preemptable_symbols == 0
               ? 0.0
               : static_cast<double>(preempted_symbols) / static_cast<double>(preemptable_symbols);
}

reliability::LatencyCdf ScheduleResult::latency_cdf() const {
    std::vector<double> finite;
    std::uint64_t drops = 0;
    for (const auto& o : outcomes) {
        if (o.dropped()) {
            ++drops;
        } else {
            finite.push_back(o.latency);
        }
    }
    return reliability::LatencyCdf::from_parts(std::move(finite), drops);
}

ScheduleResult schedule(const RadioTimeline& timeline, std::span<const UrllcArrival> arrivals, Policy) {
    timeline.validate();
    const std::uint64_t horizon = timeline.horizon_symbols();
    const double ts = timeline.symbol_duration;
    std::vector<bool> busy(horizon, false);

    ScheduleResult result;
    result.preemptable_symbols = timeline.preemptable_symbols();
    result.outcomes.reserve(arrivals.size());
    double previous = -INFINITY;
    for (const auto& a : arrivals) {
        if (a.size_symbols < 1 || a.size_symbols > kMaxMiniSlot) {
            throw UsageError("mini-slot size must lie in [1, 6] symbols");
        }
        if (!std::isfinite(a.arrival_time) || a.arrival_time < 0.0) {
            throw UsageError("arrival times must be finite and >= 0");
        }
        if (a.arrival_time < previous) {
            throw UsageError("arrivals must be sorted by time");
        }
        previous = a.arrival_time;

        ArrivalOutcome out{a, std::nullopt, 0.0, 0.0};
        // First symbol boundary strictly after the arrival.
        const double first = std::floor(a.arrival_time / ts) + 1.0;
        std::uint64_t j = first >= static_cast<double>(horizon) ? horizon : static_cast<std::uint64_t>(first);
        while (j + a.size_symbols <= horizon) {
            std::uint64_t blocked = horizon;
            for (std::uint64_t q = j; q < j + a.size_symbols; ++q) {
                if (busy[q] || timeline.is_control(q)) {
                    blocked = q;
                    break;
                }
            }
            if (blocked == horizon) {
                out.start_symbol = j;
                break;
            }
            j = blocked + 1;
        }
        if (out.start_symbol) {
            for (std::uint64_t q = *out.start_symbol; q < *out.start_symbol + a.size_symbols; ++q) {
                busy[q] = true;
            }
            result.preempted_symbols += a.size_symbols;
            out.completion_time = static_cast<double>(*out.start_symbol + a.size_symbols) * ts;
            out.latency = out.completion_time - a.arrival_time;
        }
        result.outcomes.push_back(out);
    }
    return result;
}

void LoadParams::validate() const {
    if (!(arrival_rate >= 0.0) || !std::isfinite(arrival_rate)) {
        throw UsageError("arrival_rate must be finite and >= 0");
    }
    double total = 0.0;
    for (const double w : size_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw UsageError("size weights must be finite and >= 0");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw UsageError("size weights must not all be zero");
    }
    RadioTimeline{horizon_slots, control_prefix, symbol_duration}.validate();
}

double LoadParams::utilization() const {
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < size_weights.size(); ++i) {
        total += size_weights[i];
        mean += size_weights[i] * static_cast<double>(i + 1);
    }
    mean /= total;
    const double preemptable_share =
        static_cast<double>(kSlotSymbols - control_prefix) / static_cast<double>(kSlotSymbols);
    return arrival_rate * mean * symbol_duration / preemptable_share;
}

LoadResult urllc_latency_cdf(const LoadParams& params) {
    params.validate();
    LoadResult out;
    out.timeline = RadioTimeline{params.horizon_slots, params.control_prefix, params.symbol_duration};
    const double end = static_cast<double>(out.timeline.horizon_symbols()) * params.symbol_duration;

    std::vector<UrllcArrival> arrivals;
    if (params.arrival_rate > 0.0) {
        Rng rng(derive_seed(params.seed, "minislot", 0));
        std::exponential_distribution<double> gap(params.arrival_rate);
        std::discrete_distribution<unsigned> size(params.size_weights.begin(), params.size_weights.end());
        double t = gap(rng);
        while (t < end) {
            arrivals.push_back({t, size(rng) + 1});
            t += gap(rng);
        }
    }
    out.schedule = schedule(out.timeline, arrivals);
    out.cdf = out.schedule.latency_cdf();
    return out;
}

void write_schedule_csv(std::ostream& out, const ScheduleResult& result) {
    csv::Writer w(out);
    w.header({"arrival_time_s", "size_symbols", "latency_s", "dropped"});
    for (const auto& o : result.outcomes) {
        w.row({o.arrival.arrival_time, o.arrival.size_symbols,
               o.dropped() ? csv::Cell("") : csv::Cell(o.latency), o.dropped()});
    }
    w.comment("embb_loss_fraction," + csv::format_double(result.embb_loss_fraction()));
}

}  // namespace urllc::minislot
