#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "urllc/fbl.hpp"

namespace urllc::frame {

/// A downlink message for one device.
struct MessageSpec {
    std::string device_id;
    std::uint64_t b_bits = 1;
    double epsilon_target = 1e-5;

    void validate() const;
};

/// Partition of message indices into jointly encoded blocks.
using Grouping = std::vector<std::vector<std::size_t>>;

struct HeaderOptions {
    /// When false the frame carries no header (single-packet degenerate case).
    bool enabled = true;
    /// Error budget of the header. Defaults to half the smallest device target.
    std::optional<double> epsilon;
};

/// Encoding layout of one downlink frame. All sizes are in channel uses.
struct FramePlan {
    Grouping grouping;
    std::uint64_t header_cu = 0;
    std::uint64_t pointer_bits = 0;
    double header_epsilon = 0.0;
    std::vector<std::uint64_t> block_cu;
    std::vector<double> block_epsilon;
    std::uint64_t total_cu = 0;
    /// Indexed like the input messages.
    std::vector<std::uint64_t> per_device_energy_cu;

    std::uint64_t max_device_energy() const;
    std::uint64_t min_device_energy() const;
};

/// One block per message behind a header holding one pointer per block.
FramePlan plan_separate(std::span<const MessageSpec> messages, fbl::LinkSnr snr,
                        const HeaderOptions& header = {});

/// Header pointing at groups; each group is one jointly encoded block. A single group
/// spanning every message is the joint plan and carries no header.
FramePlan plan_grouped(std::span<const MessageSpec> messages, const Grouping& grouping,
                       fbl::LinkSnr snr, const HeaderOptions& header = {});

/// Every message in one block at the smallest device target, no header. Each device
/// receives and decodes the whole frame.
FramePlan plan_joint(std::span<const MessageSpec> messages, fbl::LinkSnr snr);

struct TradeoffPoint {
    std::size_t grouping_id = 0;
    Grouping grouping;
    std::uint64_t total_cu = 0;
    std::uint64_t max_device_energy_cu = 0;
    std::uint64_t min_device_energy_cu = 0;
};

/// One point per grouping, sorted by total_cu (ties by grouping_id). `partitions` must
/// contain the all-singletons and the single-block groupings.
std::vector<TradeoffPoint> tradeoff_curve(std::span<const MessageSpec> messages, fbl::LinkSnr snr,
                                          std::span<const Grouping> partitions,
                                          const HeaderOptions& header = {});

/// Points not dominated in (total_cu, max_device_energy_cu).
std::vector<TradeoffPoint> pareto_front(std::span<const TradeoffPoint> points);

/// Every set partition of {0, ..., n-1}, in restricted-growth order. n <= 10.
std::vector<Grouping> set_partitions(std::size_t n);

Grouping singletons(std::size_t n);
Grouping single_block(std::size_t n);

/// `grouping_id,total_cu,max_device_energy_cu,min_device_energy_cu`.
void write_tradeoff_csv(std::ostream& out, std::span<const TradeoffPoint> points);

}  // namespace urllc::frame
