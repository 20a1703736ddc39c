#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "urllc/reliability.hpp"

namespace urllc::access {

/// k distinct slots of a frame, regenerable from (seed, frame_len, k).
struct AccessPattern {
    std::uint64_t seed = 0;
    unsigned frame_len = 0;
    /// Ascending slot indices in [0, frame_len).
    std::vector<unsigned> slots;

    unsigned k_replicas() const noexcept { return static_cast<unsigned>(slots.size()); }
};

/// Uniform k-subset of the frame drawn from `seed`. Throws UsageError when k > frame_len
/// or k == 0.
AccessPattern generate_access_pattern(std::uint64_t seed, unsigned frame_len, unsigned k_replicas);

struct Transmission {
    std::size_t device = 0;
    unsigned replica = 0;
};

/// Replica placements of one frame.
class SlotGrid {
public:
    SlotGrid(unsigned frame_len, double slot_duration = 1.0);

    /// Places one replica per slot of `slots` for `device`. Throws UsageError if a slot is
    /// out of range, repeated, or already used by the device.
    void add(std::size_t device, std::span<const unsigned> slots);
    void add(std::size_t device, const AccessPattern& pattern) { add(device, pattern.slots); }

    unsigned frame_len() const noexcept { return frame_len_; }
    double slot_duration() const noexcept { return slot_duration_; }
    std::span<const Transmission> occupancy(unsigned slot) const { return occupancy_.at(slot); }
    /// Ascending device ids present in the grid.
    std::span<const std::size_t> devices() const noexcept { return devices_; }
    /// Ascending slots used by `device`.
    std::vector<unsigned> slots_of(std::size_t device) const;
    std::size_t transmissions() const noexcept { return transmissions_; }

private:
    unsigned frame_len_;
    double slot_duration_;
    std::vector<std::vector<Transmission>> occupancy_;
    std::vector<std::size_t> devices_;
    std::size_t transmissions_ = 0;
};

/// Receiver decode capabilities.
struct ReceiverModel {
    /// At most this many simultaneous transmissions are decodable in one slot.
    unsigned mpr_gamma = 1;
    bool sic_enabled = false;
    bool combining_enabled = false;
    /// Probability that a clean (post-contention) replica decodes.
    double per_replica_success = 1.0;

    void validate() const;
};

struct DeviceOutcome {
    std::size_t device = 0;
    bool decoded = false;
    /// Slot of the event that enabled decoding (the replica's slot, or a later slot whose
    /// decode cancelled the interference that blocked it).
    std::optional<unsigned> decode_slot;
};

struct FrameResolution {
    /// One entry per device of the grid, ascending device id.
    std::vector<DeviceOutcome> outcomes;
    /// Decoding passes performed; never exceeds the number of transmissions.
    unsigned iterations = 0;
    /// Number of decoded devices after each pass.
    std::vector<std::size_t> decoded_after_pass;

    std::size_t decoded_count() const;
};

/// Iterates MPR decoding, SIC and combining to a fixed point. Deterministic given `seed`.
///
/// A slot holding between 1 and mpr_gamma non-cancelled transmissions is clean. Without
/// combining every replica decodes with per_replica_success once clean (outcomes drawn
/// up front, in device order). With combining a device needs the smallest c clean
/// replicas with 1 - (1 - p)^c above a per-device uniform draw. With SIC decoded devices
/// are cancelled from all their slots. Passes work on the state at their start; the decode
/// slot is the earliest slot at which the needed replicas are clean, given the decode
/// slots of the devices whose cancellation they rely on.
FrameResolution resolve_frame(const SlotGrid& grid, const ReceiverModel& receiver, std::uint64_t seed);

struct DeviceRecord {
    std::uint64_t frame = 0;
    std::size_t device = 0;
    bool activated = false;
    bool decoded = false;
    /// decode_slot + 1 for decoded packets.
    std::optional<unsigned> latency_slots;
};

struct FrameStats {
    std::uint64_t frame = 0;
    std::size_t activated = 0;
    std::size_t decoded = 0;
    std::size_t dropped = 0;
    unsigned iterations = 0;
};

struct AccessRunResult {
    /// Latency measured from frame start; undecoded packets are drops.
    reliability::LatencyCdf cdf;
    std::vector<FrameStats> frames;
    std::vector<DeviceRecord> records;
    std::uint64_t slots = 0;

    std::uint64_t activated() const;
    std::uint64_t decoded() const;
    /// Decoded packets per slot.
    double throughput() const;
};

struct GrantFreeConfig {
    std::size_t n_devices = 10;
    double activation_prob = 0.1;
    unsigned k_replicas = 1;
    ReceiverModel receiver;
    unsigned frame_len = 10;
    double slot_duration = 1e-4;
    std::uint64_t n_frames = 1000;
    std::uint64_t seed = 0;
    /// Keep one DeviceRecord per (frame, device).
    bool record_devices = true;

    void validate() const;
};

/// Each frame: devices activate i.i.d., active devices draw fresh patterns, the frame is
/// resolved, and undecoded packets are dropped (no retransmission across frames).
/// Frame f is seeded with derive_seed(seed, "frame", f).
AccessRunResult run_grant_free(const GrantFreeConfig& config, unsigned jobs = 1);

struct CoordinatedConfig {
    double activation_prob = 0.1;
    /// One pattern per device, reused in every frame.
    std::vector<AccessPattern> patterns;
    ReceiverModel receiver;
    unsigned frame_len = 10;
    double slot_duration = 1e-4;
    std::uint64_t n_frames = 1000;
    std::uint64_t seed = 0;
    bool record_devices = true;

    void validate() const;
};

/// Same decoding as run_grant_free, with patterns fixed across frames and known to the
/// receiver (no activity detection failure).
AccessRunResult run_coordinated(const CoordinatedConfig& config, unsigned jobs = 1);

enum class AssignStrategy { orthogonal_first, random };

/// orthogonal_first interleaves disjoint patterns (device i gets slots i + j * (frame_len / k))
/// while they fit and then falls back to seeded random patterns; random draws every pattern
/// from derive_seed(seed, "assign", device).
std::vector<AccessPattern> assign_patterns(std::size_t n_devices, unsigned frame_len,
                                           unsigned k_replicas, AssignStrategy strategy,
                                           std::uint64_t seed);

struct GrantBasedConfig {
    reliability::ProtocolChain chain{1.0};
    /// Slots spent by each exchange; size 1 applies to every step.
    std::vector<unsigned> round_trip_slots{1};
    std::uint64_t n_trials = 10000;
    double slot_duration = 1e-4;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GrantBasedResult {
    reliability::LatencyCdf cdf;
    std::uint64_t successes = 0;
};

/// Every exchange succeeds i.i.d. with its probability; a failure drops the packet.
GrantBasedResult run_grant_based(const GrantBasedConfig& config, unsigned jobs = 1);

/// `frame,device,activated,decoded,latency_slots`.
void write_device_csv(std::ostream& out, std::span<const DeviceRecord> records);

}  // namespace urllc::access
