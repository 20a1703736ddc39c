#include "urllc/access.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "urllc/csv.hpp"
#include "urllc/error.hpp"
#include "urllc/parallel.hpp"
#include "urllc/seed.hpp"

namespace urllc::access {

AccessPattern generate_access_pattern(std::uint64_t seed, unsigned frame_len, unsigned k_replicas) {
    if (k_replicas == 0 || frame_len == 0) {
        throw UsageError("access pattern needs k_replicas >= 1 and frame_len >= 1");
    }
    if (k_replicas > frame_len) {
        throw UsageError("k_replicas exceeds frame_len");
    }
    // Partial Fisher-Yates over the slot indices.
    Rng rng(seed);
    std::vector<unsigned> slots(frame_len);
    std::iota(slots.begin(), slots.end(), 0u);
    for (unsigned i = 0; i < k_replicas; ++i) {
        std::uniform_int_distribution<unsigned> pick(i, frame_len - 1);
        std::swap(slots[i], slots[pick(rng)]);
    }
    slots.resize(k_replicas);
    std::sort(slots.begin(), slots.end());
    return {seed, frame_len, std::move(slots)};
}

SlotGrid::SlotGrid(unsigned frame_len, double slot_duration)
    : frame_len_(frame_len), slot_duration_(slot_duration), occupancy_(frame_len) {
    if (frame_len == 0) {
        throw UsageError("frame_len must be >= 1");
    }
    if (!(slot_duration > 0.0) || !std::isfinite(slot_duration)) {
        throw UsageError("slot_duration must be finite and > 0");
    }
}

void SlotGrid::add(std::size_t device, std::span<const unsigned> slots) {
    if (slots.empty()) {
        throw UsageError("a device needs at least one slot");
    }
    std::vector<unsigned> sorted(slots.begin(), slots.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw UsageError("a device transmits at most once per slot");
    }
    for (const auto s : sorted) {
        if (s >= frame_len_) {
            throw UsageError("slot index outside the frame");
        }
        for (const auto& t : occupancy_[s]) {
            if (t.device == device) {
                throw UsageError("a device transmits at most once per slot");
            }
        }
    }
    unsigned replica = 0;
    for (const auto s : slots) {
        occupancy_[s].push_back({device, replica++});
    }
    transmissions_ += slots.size();
    const auto it = std::lower_bound(devices_.begin(), devices_.end(), device);
    if (it == devices_.end() || *it != device) {
        devices_.insert(it, device);
    }
}

std::vector<unsigned> SlotGrid::slots_of(std::size_t device) const {
    std::vector<unsigned> out;
    for (unsigned s = 0; s < frame_len_; ++s) {
        for (const auto& t : occupancy_[s]) {
            if (t.device == device) {
                out.push_back(s);
            }
        }
    }
    return out;
}

void ReceiverModel::validate() const {
    if (mpr_gamma < 1) {
        throw UsageError("mpr_gamma must be >= 1");
    }
    if (!(per_replica_success >= 0.0 && per_replica_success <= 1.0)) {
        throw UsageError("per_replica_success must lie in [0, 1]");
    }
}

std::size_t FrameResolution::decoded_count() const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(),
                                                  [](const auto& o) { return o.decoded; }));
}

namespace {

constexpr unsigned kNever = std::numeric_limits<unsigned>::max();

struct DeviceState {
    std::vector<unsigned> slots;
    /// Per replica decode outcome once clean (always true with combining).
    std::vector<bool> usable;
    /// Clean usable replicas needed to decode; slots.size() + 1 means never.
    std::size_t needed = 1;
};

}  // namespace

FrameResolution resolve_frame(const SlotGrid& grid, const ReceiverModel& receiver, std::uint64_t seed) {
    receiver.validate();
    const auto devices = grid.devices();
    const std::size_t n = devices.size();
    const unsigned frame_len = grid.frame_len();
    const unsigned gamma = receiver.mpr_gamma;

    // Replica outcomes are drawn up front, in device order, so they do not depend on the
    // order in which slots become clean.
    Rng rng(seed);
    std::bernoulli_distribution replica_ok(receiver.per_replica_success);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double miss = 1.0 - receiver.per_replica_success;
    std::vector<DeviceState> state(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& st = state[i];
        st.slots = grid.slots_of(devices[i]);
        if (!receiver.combining_enabled) {
            for (std::size_t r = 0; r < st.slots.size(); ++r) {
                st.usable.push_back(replica_ok(rng));
            }
            continue;
        }
        st.usable.assign(st.slots.size(), true);
        const double draw = unit(rng);
        st.needed = st.slots.size() + 1;
        for (std::size_t j = 1; j <= st.slots.size(); ++j) {
            if (1.0 - std::pow(miss, static_cast<double>(j)) > draw) {
                st.needed = j;
                break;
            }
        }
    }

    FrameResolution res;
    res.outcomes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        res.outcomes[i].device = devices[i];
    }

    // Decoding passes: which devices decode, and after how many passes.
    std::vector<std::size_t> present(frame_len);
    for (unsigned s = 0; s < frame_len; ++s) {
        present[s] = grid.occupancy(s).size();
    }
    std::vector<bool> decoded(n, false);
    std::size_t decoded_total = 0;
    while (decoded_total < n) {
        ++res.iterations;
        std::vector<std::size_t> newly;
        for (std::size_t i = 0; i < n; ++i) {
            if (decoded[i]) {
                continue;
            }
            std::size_t clean = 0;
            for (std::size_t r = 0; r < state[i].slots.size(); ++r) {
                clean += state[i].usable[r] && present[state[i].slots[r]] <= gamma ? 1 : 0;
            }
            if (clean >= state[i].needed) {
                newly.push_back(i);
            }
        }
        for (const auto i : newly) {
            decoded[i] = true;
            if (receiver.sic_enabled) {
                for (const unsigned s : state[i].slots) {
                    --present[s];
                }
            }
        }
        decoded_total += newly.size();
        res.decoded_after_pass.push_back(decoded_total);
        if (newly.empty()) {
            break;
        }
    }
    if (res.iterations > std::max<std::size_t>(1, grid.transmissions())) {
        throw std::logic_error("resolve_frame exceeded its iteration bound");
    }

    // Decode slots: a replica in slot s is clean from max(s, time of the last cancellation
    // it needs). Iterating from "never" converges to the earliest consistent times.
    const auto index_of = [&](std::size_t device) {
        return static_cast<std::size_t>(std::lower_bound(devices.begin(), devices.end(), device) - devices.begin());
    };
    const auto slot_time = [&](std::size_t i, unsigned s, const std::vector<unsigned>& t) {
        const auto occ = grid.occupancy(s);
        if (occ.size() <= gamma) {
            return s;
        }
        if (!receiver.sic_enabled) {
            return kNever;
        }
        std::vector<unsigned> others;
        for (const auto& tx : occ) {
            if (tx.device != devices[i]) {
                others.push_back(t[index_of(tx.device)]);
            }
        }
        std::sort(others.begin(), others.end());
        const unsigned last = others[occ.size() - gamma - 1];
        return last == kNever ? kNever : std::max(s, last);
    };
    std::vector<unsigned> times(n, kNever);
    const std::size_t max_rounds = n * (static_cast<std::size_t>(frame_len) + 1) + 1;
    for (std::size_t round = 0;; ++round) {
        if (round > max_rounds) {
            throw std::logic_error("resolve_frame decode times did not converge");
        }
        std::vector<unsigned> next(n, kNever);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<unsigned> clean;
            for (std::size_t r = 0; r < state[i].slots.size(); ++r) {
                if (state[i].usable[r]) {
                    const unsigned c = slot_time(i, state[i].slots[r], times);
                    if (c != kNever) {
                        clean.push_back(c);
                    }
                }
            }
            if (clean.size() >= state[i].needed) {
                std::nth_element(clean.begin(), clean.begin() + (state[i].needed - 1), clean.end());
                next[i] = clean[state[i].needed - 1];
            }
        }
        if (next == times) {
            break;
        }
        times = std::move(next);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if ((times[i] != kNever) != decoded[i]) {
            throw std::logic_error("resolve_frame decode times disagree with the decoding passes");
        }
        res.outcomes[i].decoded = decoded[i];
        if (decoded[i]) {
            res.outcomes[i].decode_slot = times[i];
        }
    }
    return res;
}

std::uint64_t AccessRunResult::activated() const {
    std::uint64_t total = 0;
    for (const auto& f : frames) {
        total += f.activated;
    }
    return total;
}

std::uint64_t AccessRunResult::decoded() const {
    std::uint64_t total = 0;
    for (const auto& f : frames) {
        total += f.decoded;
    }
    return total;
}

double AccessRunResult::throughput() const {
    return slots == 0 ? 0.0 : static_cast<double>(decoded()) / static_cast<double>(slots);
}

namespace {

void check_common(double activation_prob, const ReceiverModel& receiver, unsigned frame_len,
                  double slot_duration) {
    if (!(activation_prob >= 0.0 && activation_prob <= 1.0)) {
        throw UsageError("activation_prob must lie in [0, 1]");
    }
    receiver.validate();
    if (frame_len == 0) {
        throw UsageError("frame_len must be >= 1");
    }
    if (!(slot_duration > 0.0) || !std::isfinite(slot_duration)) {
        throw UsageError("slot_duration must be finite and > 0");
    }
}

struct FrameOutput {
    FrameStats stats;
    std::vector<unsigned> latency_slots;
    std::vector<DeviceRecord> records;
};

template <class PatternFn>
AccessRunResult run_frames(std::size_t n_devices, double activation_prob, const ReceiverModel& receiver,
                           unsigned frame_len, double slot_duration, std::uint64_t n_frames,
                           std::uint64_t seed, bool record, unsigned jobs, PatternFn pattern_for) {
    std::vector<FrameOutput> out(n_frames);
    parallel_for(n_frames, jobs, [&](std::size_t f) {
        const std::uint64_t frame_seed = derive_seed(seed, "frame", f);
        Rng rng(frame_seed);
        std::bernoulli_distribution active(activation_prob);
        SlotGrid grid(frame_len, slot_duration);
        std::vector<bool> activated(n_devices, false);
        for (std::size_t d = 0; d < n_devices; ++d) {
            activated[d] = active(rng);
            if (activated[d]) {
                grid.add(d, pattern_for(frame_seed, d));
            }
        }
        const auto res = resolve_frame(grid, receiver, derive_seed(frame_seed, "resolve", 0));

        FrameOutput& fo = out[f];
        fo.stats.frame = f;
        fo.stats.activated = grid.devices().size();
        fo.stats.iterations = res.iterations;
        std::vector<std::optional<unsigned>> latency(n_devices);
        for (const auto& o : res.outcomes) {
            if (o.decoded) {
                ++fo.stats.decoded;
                latency[o.device] = *o.decode_slot + 1;
                fo.latency_slots.push_back(*o.decode_slot + 1);
            }
        }
        fo.stats.dropped = fo.stats.activated - fo.stats.decoded;
        if (record) {
            fo.records.reserve(n_devices);
            for (std::size_t d = 0; d < n_devices; ++d) {
                fo.records.push_back({f, d, static_cast<bool>(activated[d]), latency[d].has_value(), latency[d]});
            }
        }
    });

    AccessRunResult result;
    result.slots = n_frames * frame_len;
    std::vector<double> finite;
    std::uint64_t drops = 0;
    result.frames.reserve(n_frames);
    for (auto& fo : out) {
        for (const auto l : fo.latency_slots) {
            finite.push_back(static_cast<double>(l) * slot_duration);
        }
        drops += fo.stats.dropped;
        result.frames.push_back(fo.stats);
        result.records.insert(result.records.end(), fo.records.begin(), fo.records.end());
    }
    result.cdf = reliability::LatencyCdf::from_parts(std::move(finite), drops);
    return result;
}

}  // namespace

void GrantFreeConfig::validate() const {
    check_common(activation_prob, receiver, frame_len, slot_duration);
    if (k_replicas == 0 || k_replicas > frame_len) {
        throw UsageError("k_replicas must lie in [1, frame_len]");
    }
}

AccessRunResult run_grant_free(const GrantFreeConfig& config, unsigned jobs) {
    config.validate();
    return run_frames(config.n_devices, config.activation_prob, config.receiver, config.frame_len,
                      config.slot_duration, config.n_frames, config.seed, config.record_devices, jobs,
                      [&](std::uint64_t frame_seed, std::size_t d) {
                          return generate_access_pattern(derive_seed(frame_seed, "pattern", d),
                                                         config.frame_len, config.k_replicas);
                      });
}

void CoordinatedConfig::validate() const {
    check_common(activation_prob, receiver, frame_len, slot_duration);
    for (const auto& p : patterns) {
        if (p.slots.empty()) {
            throw UsageError("every device needs a non-empty access pattern");
        }
        for (const auto s : p.slots) {
            if (s >= frame_len) {
                throw UsageError("access pattern slot outside the frame");
            }
        }
    }
}

AccessRunResult run_coordinated(const CoordinatedConfig& config, unsigned jobs) {
    config.validate();
    return run_frames(config.patterns.size(), config.activation_prob, config.receiver, config.frame_len,
                      config.slot_duration, config.n_frames, config.seed, config.record_devices, jobs,
                      [&](std::uint64_t, std::size_t d) -> const AccessPattern& { return config.patterns[d]; });
}

std::vector<AccessPattern> assign_patterns(std::size_t n_devices, unsigned frame_len, unsigned k_replicas,
                                           AssignStrategy strategy, std::uint64_t seed) {
    if (k_replicas == 0 || frame_len == 0 || k_replicas > frame_len) {
        throw UsageError("k_replicas must lie in [1, frame_len]");
    }
    std::vector<AccessPattern> out;
    out.reserve(n_devices);
    const unsigned stride = frame_len / k_replicas;
    for (std::size_t d = 0; d < n_devices; ++d) {
        const std::uint64_t device_seed = derive_seed(seed, "assign", d);
        if (strategy == AssignStrategy::orthogonal_first && d < stride) {
            AccessPattern p{device_seed, frame_len, {}};
            for (unsigned j = 0; j < k_replicas; ++j) {
                p.slots.push_back(static_cast<unsigned>(d) + j * stride);
            }
            out.push_back(std::move(p));
        } else {
            out.push_back(generate_access_pattern(device_seed, frame_len, k_replicas));
        }
    }
    return out;
}

void GrantBasedConfig::validate() const {
    if (round_trip_slots.size() != 1 && round_trip_slots.size() != chain.steps().size()) {
        throw UsageError("round_trip_slots needs one entry or one per protocol step");
    }
    if (!(slot_duration > 0.0) || !std::isfinite(slot_duration)) {
        throw UsageError("slot_duration must be finite and > 0");
    }
}

GrantBasedResult run_grant_based(const GrantBasedConfig& config, unsigned jobs) {
    config.validate();
    const auto steps = config.chain.steps();
    const auto rtt = [&](std::size_t i) {
        return config.round_trip_slots.size() == 1 ? config.round_trip_slots[0] : config.round_trip_slots[i];
    };
    std::uint64_t exchange_slots = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        exchange_slots += rtt(i);
    }
    const double latency = static_cast<double>(exchange_slots) * config.slot_duration;

    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (config.n_trials + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> ok(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        Rng rng(derive_seed(config.seed, "grant_based", c));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::uint64_t end = std::min(config.n_trials, (c + 1) * kChunk);
        for (std::uint64_t t = c * kChunk; t < end; ++t) {
            bool success = true;
            for (const double p : steps) {
                if (!(unit(rng) < p)) {
                    success = false;
                    break;
                }
            }
            ok[c] += success ? 1 : 0;
        }
    });
    GrantBasedResult result;
    result.successes = std::accumulate(ok.begin(), ok.end(), std::uint64_t{0});
    result.cdf = reliability::LatencyCdf::from_parts(std::vector<double>(result.successes, latency),
                                                     config.n_trials - result.successes);
    return result;
}

void write_device_csv(std::ostream& out, std::span<const DeviceRecord> records) {
    csv::Writer w(out);
    w.header({"frame", "device", "activated", "decoded", "latency_slots"});
    for (const auto& r : records) {
        w.row({r.frame, static_cast<std::uint64_t>(r.device), r.activated, r.decoded, r.latency_slots});
    }
}

}  // namespace urllc::access
