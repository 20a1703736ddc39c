#include "urllc/frame.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "urllc/csv.hpp"
#include "urllc/error.hpp"

namespace urllc::frame {

void MessageSpec::validate() const {
    if (b_bits < 1) {
        throw UsageError("message '" + device_id + "': b_bits must be >= 1");
    }
    if (!(epsilon_target > 0.0 && epsilon_target < 1.0)) {
        throw UsageError("message '" + device_id + "': epsilon_target must lie in (0, 1)");
    }
}

std::uint64_t FramePlan::max_device_energy() const {
    return per_device_energy_cu.empty()
               ? 0
               : *std::max_element(per_device_energy_cu.begin(), per_device_energy_cu.end());
}

std::uint64_t FramePlan::min_device_energy() const {
    return per_device_energy_cu.empty()
               ? 0
               : *std::min_element(per_device_energy_cu.begin(), per_device_energy_cu.end());
}

namespace {

constexpr int kMaxPointerIterations = 10;

void check_messages(std::span<const MessageSpec> messages) {
    if (messages.empty()) {
        throw UsageError("a frame needs at least one message");
    }
    for (const auto& m : messages) {
        m.validate();
    }
}

void check_grouping(const Grouping& grouping, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const auto& group : grouping) {
        if (group.empty()) {
            throw UsageError("grouping contains an empty group");
        }
        for (const auto i : group) {
            if (i >= n || seen[i]++ != 0) {
                throw UsageError("grouping is not a partition of the messages");
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw UsageError("grouping is not a partition of the messages");
    }
}

double min_target(std::span<const MessageSpec> messages) {
    double eps = 1.0;
    for (const auto& m : messages) {
        eps = std::min(eps, m.epsilon_target);
    }
    return eps;
}

std::uint64_t ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : std::bit_width(x - 1); }

// Header + one block per group, without the single-group shortcut.
FramePlan build_with_header(std::span<const MessageSpec> messages, const Grouping& grouping,
                            fbl::LinkSnr snr, const HeaderOptions& header) {
    check_messages(messages);
    check_grouping(grouping, messages.size());

    FramePlan plan;
    plan.grouping = grouping;
    const double smallest = min_target(messages);
    if (header.enabled) {
        plan.header_epsilon = header.epsilon.value_or(smallest / 2.0);
        if (!(plan.header_epsilon > 0.0) || plan.header_epsilon >= smallest) {
            throw PlanningError("header error budget leaves no budget for a device message");
        }
    }

    std::uint64_t payload_cu = 0;
    for (const auto& group : grouping) {
        std::uint64_t bits = 0;
        double eps = 1.0;
        for (const auto i : group) {
            bits += messages[i].b_bits;
            eps = std::min(eps, messages[i].epsilon_target - plan.header_epsilon);
        }
        const auto cu = fbl::min_blocklength(bits, eps, snr);
        plan.block_cu.push_back(cu);
        plan.block_epsilon.push_back(eps);
        payload_cu += cu;
    }

    if (header.enabled) {
        // Pointer width depends on the frame length, which depends on the header size.
        std::uint64_t total = payload_cu;
        bool converged = false;
        for (int it = 0; it < kMaxPointerIterations; ++it) {
            plan.pointer_bits = std::max<std::uint64_t>(1, ceil_log2(total));
            plan.header_cu = fbl::min_blocklength(plan.pointer_bits * grouping.size(),
                                                  plan.header_epsilon, snr);
            total = plan.header_cu + payload_cu;
            if (std::max<std::uint64_t>(1, ceil_log2(total)) == plan.pointer_bits) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw PlanningError("header pointer width did not converge");
        }
    }
    plan.total_cu = plan.header_cu + payload_cu;

    plan.per_device_energy_cu.assign(messages.size(), 0);
    for (std::size_t g = 0; g < grouping.size(); ++g) {
        for (const auto i : grouping[g]) {
            plan.per_device_energy_cu[i] = plan.header_cu + plan.block_cu[g];
        }
    }
    return plan;
}

}  // namespace

FramePlan plan_grouped(std::span<const MessageSpec> messages, const Grouping& grouping,
                       fbl::LinkSnr snr, const HeaderOptions& header) {
    check_messages(messages);
    check_grouping(grouping, messages.size());
    if (grouping.size() == 1) {
        return plan_joint(messages, snr);
    }
    return build_with_header(messages, grouping, snr, header);
}

FramePlan plan_separate(std::span<const MessageSpec> messages, fbl::LinkSnr snr,
                        const HeaderOptions& header) {
    check_messages(messages);
    return build_with_header(messages, singletons(messages.size()), snr, header);
}

FramePlan plan_joint(std::span<const MessageSpec> messages, fbl::LinkSnr snr) {
    check_messages(messages);
    FramePlan plan;
    plan.grouping = single_block(messages.size());
    std::uint64_t bits = 0;
    for (const auto& m : messages) {
        bits += m.b_bits;
    }
    const double eps = min_target(messages);
    plan.block_cu = {fbl::min_blocklength(bits, eps, snr)};
    plan.block_epsilon = {eps};
    plan.total_cu = plan.block_cu.front();
    plan.per_device_energy_cu.assign(messages.size(), plan.total_cu);
    return plan;
}

std::vector<TradeoffPoint> tradeoff_curve(std::span<const MessageSpec> messages, fbl::LinkSnr snr,
                                          std::span<const Grouping> partitions,
                                          const HeaderOptions& header) {
    check_messages(messages);
    const auto has = [&](const Grouping& wanted) {
        return std::any_of(partitions.begin(), partitions.end(), [&](const Grouping& g) {
            auto a = g;
            for (auto& group : a) {
                std::sort(group.begin(), group.end());
            }
            std::sort(a.begin(), a.end());
            return a == wanted;
        });
    };
    if (!has(singletons(messages.size())) || !has(single_block(messages.size()))) {
        throw UsageError("tradeoff_curve: partitions must include both extremes");
    }

    std::vector<TradeoffPoint> points;
    points.reserve(partitions.size());
    for (std::size_t id = 0; id < partitions.size(); ++id) {
        const auto plan = plan_grouped(messages, partitions[id], snr, header);
        points.push_back({id, partitions[id], plan.total_cu, plan.max_device_energy(),
                          plan.min_device_energy()});
    }
    std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.total_cu < b.total_cu;
    });
    return points;
}

std::vector<TradeoffPoint> pareto_front(std::span<const TradeoffPoint> points) {
    std::vector<TradeoffPoint> front;
    for (const auto& p : points) {
        const bool dominated = std::any_of(points.begin(), points.end(), [&](const auto& q) {
            return q.total_cu <= p.total_cu && q.max_device_energy_cu <= p.max_device_energy_cu &&
                   (q.total_cu < p.total_cu || q.max_device_energy_cu < p.max_device_energy_cu);
        });
        if (!dominated) {
            front.push_back(p);
        }
    }
    return front;
}

std::vector<Grouping> set_partitions(std::size_t n) {
    if (n == 0 || n > 10) {
        throw UsageError("set_partitions: n must be in [1, 10]");
    }
    // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i)).
    std::vector<Grouping> out;
    std::vector<std::size_t> label(n, 0);
    while (true) {
        const std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
        Grouping g(blocks);
        for (std::size_t i = 0; i < n; ++i) {
            g[label[i]].push_back(i);
        }
        out.push_back(std::move(g));

        std::size_t i = n;
        while (i-- > 1) {
            const std::size_t prefix_max = *std::max_element(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(i));
            if (label[i] <= prefix_max) {
                ++label[i];
                std::fill(label.begin() + static_cast<std::ptrdiff_t>(i) + 1, label.end(), 0);
                break;
            }
        }
        if (i == 0) {
            return out;
        }
    }
}

Grouping singletons(std::size_t n) {
    Grouping g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = {i};
    }
    return g;
}

Grouping single_block(std::size_t n) {
    Grouping g(1);
    g[0].resize(n);
    std::iota(g[0].begin(), g[0].end(), std::size_t{0});
    return g;
}

void write_tradeoff_csv(std::ostream& out, std::span<const TradeoffPoint> points) {
    csv::Writer w(out);
    w.header({"grouping_id", "total_cu", "max_device_energy_cu", "min_device_energy_cu"});
    for (const auto& p : points) {
        w.row({static_cast<std::uint64_t>(p.grouping_id), p.total_cu, p.max_device_energy_cu,
               p.min_device_energy_cu});
    }
}

}  // namespace urllc::frame
