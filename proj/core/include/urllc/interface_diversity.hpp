#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "urllc/reliability.hpp"

namespace urllc::pd {

/// One packet sent over an interface. latency_s == nullopt marks a lost packet.
struct TraceEvent {
    double send_time_s = 0.0;
    std::optional<double> latency_s;
};

/// Latency record of one interface, ordered by strictly increasing send time.
struct InterfaceTrace {
    std::string name;
    std::vector<TraceEvent> events;

    /// Throws UsageError on non-increasing send times or non-positive latencies.
    void validate() const;
};

/// Parses the trace CSV schema: header `send_time_s,latency_ms`, one event per row,
/// latency_ms = -1 for a lost packet. Blank lines are ignored. Throws LoadError with the
/// offending line number.
InterfaceTrace load_trace(std::istream& in, std::string name);
/// Same as above; the trace is named after the file stem.
InterfaceTrace load_trace(const std::filesystem::path& path);

void write_trace(std::ostream& out, const InterfaceTrace& trace);

/// Latency model of a synthetic interface: lognormal body plus a Pareto spike component,
/// and independent losses.
struct LatencyMixture {
    double base_median_s = 0.02;
    /// Standard deviation of log-latency of the body.
    double base_log_sigma = 0.3;
    /// Probability that a delivered packet takes the spike component.
    double spike_weight = 0.0;
    /// Pareto scale (minimum spike latency) and tail index.
    double spike_scale_s = 0.1;
    double spike_shape = 1.5;
    double loss_prob = 0.0;

    void validate() const;
};

/// Events at send times i / rate_hz for i < duration_s * rate_hz, so traces generated with
/// equal (duration, rate) share their grid exactly.
InterfaceTrace synth_trace(std::string name, const LatencyMixture& model, double duration_s,
                           double rate_hz, std::uint64_t seed);

/// Named subset of interfaces carrying duplicates of every packet.
struct PdConfig {
    std::string name;
    std::vector<std::string> interfaces;
};

struct AlignOptions {
    /// Nearest-neighbour window used when send-time grids differ.
    double tolerance_s = 0.05;
};

struct PdSamples {
    std::vector<reliability::LatencySample> samples;
    /// Reference events dropped because some selected interface had no event in the window.
    std::size_t unmatched = 0;
};

/// Per send time, the first arrival over the selected interfaces; a drop when every copy
/// was lost. Identical grids are joined directly, otherwise events are matched to the
/// first selected trace within the tolerance.
PdSamples pd_latency(std::span<const InterfaceTrace> traces, const PdConfig& config,
                     const AlignOptions& align = {});

struct ReliabilityPoint {
    double latency_s = 0.0;
    double reliability = 0.0;
};

std::vector<ReliabilityPoint> reliability_curve(std::span<const reliability::LatencySample> samples,
                                                std::span<const double> latency_grid);

/// Log-spaced latency grid used when none is given: 1 ms to 1 s, 61 points.
std::vector<double> default_latency_grid();

}  // namespace urllc::pd
