#include "urllc/interface_diversity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>

#include "urllc/csv.hpp"
#include "urllc/error.hpp"
#include "urllc/seed.hpp"

namespace urllc::pd {

void InterfaceTrace::validate() const {
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (!std::isfinite(e.send_time_s)) {
            throw UsageError(name + ": non-finite send time");
        }
        if (i > 0 && !(e.send_time_s > events[i - 1].send_time_s)) {
            throw UsageError(name + ": send times must be strictly increasing");
        }
        if (e.latency_s && !(*e.latency_s > 0.0 && std::isfinite(*e.latency_s))) {
            throw UsageError(name + ": latencies must be finite and > 0");
        }
    }
}

namespace {

double parse_number(std::string_view text, std::size_t line, const char* column) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw LoadError(line, std::string("cannot parse ") + column + " '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

InterfaceTrace load_trace(std::istream& in, std::string name) {
    InterfaceTrace trace;
    trace.name = std::move(name);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        const auto fields = csv::split_line(line);
        if (!have_header) {
            if (fields.size() != 2 || fields[0] != "send_time_s" || fields[1] != "latency_ms") {
                throw LoadError(line_no, "expected header 'send_time_s,latency_ms'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 2) {
            throw LoadError(line_no, "expected 2 fields, got " + std::to_string(fields.size()));
        }
        const double send = parse_number(fields[0], line_no, "send_time_s");
        const double latency_ms = parse_number(fields[1], line_no, "latency_ms");
        if (!std::isfinite(send)) {
            throw LoadError(line_no, "send_time_s must be finite");
        }
        if (!trace.events.empty() && !(send > trace.events.back().send_time_s)) {
            throw LoadError(line_no, "send_time_s must be strictly increasing");
        }
        TraceEvent ev{send, std::nullopt};
        if (latency_ms != -1.0) {
            if (!(latency_ms > 0.0) || !std::isfinite(latency_ms)) {
                throw LoadError(line_no, "latency_ms must be > 0 or -1 for a lost packet");
            }
            ev.latency_s = latency_ms / 1000.0;
        }
        trace.events.push_back(ev);
    }
    if (!have_header) {
        throw LoadError(line_no == 0 ? 1 : line_no, "missing header 'send_time_s,latency_ms'");
    }
    return trace;
}

InterfaceTrace load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw LoadError(0, "cannot open " + path.string());
    }
    return load_trace(in, path.stem().string());
}

void write_trace(std::ostream& out, const InterfaceTrace& trace) {
    csv::Writer w(out);
    w.header({"send_time_s", "latency_ms"});
    for (const auto& e : trace.events) {
        w.row({e.send_time_s, e.latency_s ? *e.latency_s * 1000.0 : -1.0});
    }
}

void LatencyMixture::validate() const {
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(base_median_s) || !(base_log_sigma >= 0.0) || !std::isfinite(base_log_sigma)) {
        throw UsageError("latency mixture: base component needs median > 0 and log sigma >= 0");
    }
    if (!(spike_weight >= 0.0 && spike_weight <= 1.0) || !(loss_prob >= 0.0 && loss_prob <= 1.0)) {
        throw UsageError("latency mixture: spike_weight and loss_prob must lie in [0, 1]");
    }
    if (!positive(spike_scale_s) || !positive(spike_shape)) {
        throw UsageError("latency mixture: spike scale and shape must be > 0");
    }
}

InterfaceTrace synth_trace(std::string name, const LatencyMixture& model, double duration_s, double rate_hz,
                           std::uint64_t seed) {
    model.validate();
    if (!(duration_s > 0.0) || !(rate_hz > 0.0) || !std::isfinite(duration_s * rate_hz)) {
        throw UsageError("synth_trace: duration and rate must be positive");
    }
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::lognormal_distribution<double> body(std::log(model.base_median_s), model.base_log_sigma);

    InterfaceTrace trace;
    trace.name = std::move(name);
    const auto count = static_cast<std::uint64_t>(std::ceil(duration_s * rate_hz));
    trace.events.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        TraceEvent ev{static_cast<double>(i) / rate_hz, std::nullopt};
        // Four draws per event keep streams aligned regardless of which branch is taken.
        const double lost = unit(rng);
        const double which = unit(rng);
        const double body_latency = body(rng);
        const double tail = 1.0 - unit(rng);
        if (lost >= model.loss_prob) {
            if (which < model.spike_weight) {
                ev.latency_s = model.spike_scale_s * std::pow(tail, -1.0 / model.spike_shape);
            } else {
                ev.latency_s = body_latency;
            }
        }
        trace.events.push_back(ev);
    }
    return trace;
}

namespace {

const InterfaceTrace& find_trace(std::span<const InterfaceTrace> traces, const std::string& name) {
    const auto it = std::find_if(traces.begin(), traces.end(), [&](const auto& t) { return t.name == name; });
    if (it == traces.end()) {
        throw UsageError("no trace named '" + name + "'");
    }
    return *it;
}

bool same_grid(const InterfaceTrace& a, const InterfaceTrace& b) {
    return a.events.size() == b.events.size() &&
           std::equal(a.events.begin(), a.events.end(), b.events.begin(),
                      [](const auto& x, const auto& y) { return x.send_time_s == y.send_time_s; });
}

const TraceEvent* nearest(const InterfaceTrace& trace, double t, double tolerance) {
    const auto& ev = trace.events;
    const auto it = std::lower_bound(ev.begin(), ev.end(), t,
                                     [](const TraceEvent& e, double v) { return e.send_time_s < v; });
    const TraceEvent* best = nullptr;
    double best_gap = INFINITY;
    if (it != ev.end()) {
        best = &*it;
        best_gap = it->send_time_s - t;
    }
    if (it != ev.begin() && t - std::prev(it)->send_time_s < best_gap) {
        best = &*std::prev(it);
        best_gap = t - best->send_time_s;
    }
    return best_gap <= tolerance ? best : nullptr;
}

}  // namespace

PdSamples pd_latency(std::span<const InterfaceTrace> traces, const PdConfig& config, const AlignOptions& align) {
    if (config.interfaces.empty()) {
        throw UsageError("packet duplication config '" + config.name + "' selects no interface");
    }
    std::vector<const InterfaceTrace*> selected;
    for (const auto& n : config.interfaces) {
        selected.push_back(&find_trace(traces, n));
    }
    const InterfaceTrace& ref = *selected.front();
    const bool aligned = std::all_of(selected.begin(), selected.end(),
                                     [&](const InterfaceTrace* t) { return same_grid(ref, *t); });

    PdSamples out;
    out.samples.reserve(ref.events.size());
    std::vector<const TraceEvent*> row(selected.size());
    for (std::size_t i = 0; i < ref.events.size(); ++i) {
        bool complete = true;
        for (std::size_t k = 0; k < selected.size(); ++k) {
            row[k] = aligned ? &selected[k]->events[i]
                             : nearest(*selected[k], ref.events[i].send_time_s, align.tolerance_s);
            complete = complete && row[k] != nullptr;
        }
        if (!complete) {
            ++out.unmatched;
            continue;
        }
        reliability::LatencySample first = reliability::kDrop;
        for (const auto* e : row) {
            if (e->latency_s && (!first || *e->latency_s < *first)) {
                first = e->latency_s;
            }
        }
        out.samples.push_back(first);
    }
    return out;
}

std::vector<ReliabilityPoint> reliability_curve(std::span<const reliability::LatencySample> samples,
                                                std::span<const double> latency_grid) {
    const auto cdf = reliability::LatencyCdf::from_samples(samples);
    std::vector<ReliabilityPoint> out;
    out.reserve(latency_grid.size());
    for (const double t : latency_grid) {
        out.push_back({t, cdf.reliability_at(t)});
    }
    return out;
}

std::vector<double> default_latency_grid() { return reliability::log_grid(1e-3, 1.0, 61); }

}  // namespace urllc::pd
