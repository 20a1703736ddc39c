#include "urllc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "urllc/csv.hpp"
#include "urllc/error.hpp"
#include "urllc/parallel.hpp"
#include "urllc/seed.hpp"

namespace urllc::topology {

void NetworkParams::validate() const {
    const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(bs_density) || !positive(user_density) || !positive(area_side)) {
        throw UsageError("densities and area_side must be > 0");
    }
    if (!(pathloss_exponent > 2.0) || !std::isfinite(pathloss_exponent)) {
        throw UsageError("pathloss_exponent must be > 2");
    }
    if (!positive(tx_power) || !positive(noise_power) || !positive(bandwidth)) {
        throw UsageError("tx_power, noise_power and bandwidth must be > 0");
    }
}

NetworkSnapshot sample_network(const NetworkParams& params, std::uint64_t seed) {
    params.validate();
    Rng rng(seed);
    const double area = params.area_side * params.area_side;
    std::uniform_real_distribution<double> coord(0.0, params.area_side);
    NetworkSnapshot snap;
    snap.params = params;
    std::poisson_distribution<std::uint64_t> n_bs(params.bs_density * area);
    std::poisson_distribution<std::uint64_t> n_users(params.user_density * area);
    snap.bs.resize(n_bs(rng));
    for (auto& p : snap.bs) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    snap.users.resize(n_users(rng));
    for (auto& p : snap.users) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return snap;
}

double link_distance(const Point& a, const Point& b, double side) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    dx = std::min(dx, side - dx);
    dy = std::min(dy, side - dy);
    return std::max(1.0, std::hypot(dx, dy));
}

const char* to_string(Mode mode) { return mode == Mode::baseline ? "baseline" : "cooperation"; }

std::vector<bool> AssociationPlan::transmitting() const {
    std::vector<bool> out(idle.size());
    for (std::size_t b = 0; b < idle.size(); ++b) {
        out[b] = transmits(b);
    }
    return out;
}

AssociationPlan associate(const NetworkSnapshot& snapshot, Mode mode) {
    const auto& bs = snapshot.bs;
    const auto& users = snapshot.users;
    const double side = snapshot.params.area_side;
    AssociationPlan plan;
    plan.serving.assign(users.size(), std::nullopt);
    plan.cooperating.assign(users.size(), std::nullopt);
    plan.load.assign(bs.size(), 0);
    plan.coop_load.assign(bs.size(), 0);

    const auto nearest = [&](const Point& u, auto&& eligible) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < bs.size(); ++b) {
            if (!eligible(b)) {
                continue;
            }
            const double d = link_distance(u, bs[b], side);
            if (d < best_d) {
                best_d = d;
                best = b;
            }
        }
        return best;
    };

    for (std::size_t u = 0; u < users.size(); ++u) {
        plan.serving[u] = nearest(users[u], [](std::size_t) { return true; });
        if (plan.serving[u]) {
            ++plan.load[*plan.serving[u]];
        }
    }
    plan.idle.resize(bs.size());
    for (std::size_t b = 0; b < bs.size(); ++b) {
        plan.idle[b] = plan.load[b] == 0;
    }
    if (mode == Mode::cooperation) {
        for (std::size_t u = 0; u < users.size(); ++u) {
            if (!plan.serving[u]) {
                continue;
            }
            plan.cooperating[u] = nearest(users[u], [&](std::size_t b) { return static_cast<bool>(plan.idle[b]); });
            if (plan.cooperating[u]) {
                ++plan.coop_load[*plan.cooperating[u]];
            }
        }
    }
    return plan;
}

double link_sinr(const NetworkSnapshot& snapshot, std::size_t user, std::size_t bs,
                 const std::vector<bool>& transmitting, std::optional<std::size_t> partner) {
    const auto& p = snapshot.params;
    const auto& u = snapshot.users.at(user);
    const double signal = p.tx_power * std::pow(link_distance(u, snapshot.bs.at(bs), p.area_side), -p.pathloss_exponent);
    double interference = 0.0;
    for (std::size_t b = 0; b < snapshot.bs.size(); ++b) {
        if (b == bs || (partner && b == *partner) || !transmitting[b]) {
            continue;
        }
        interference += p.tx_power * std::pow(link_distance(u, snapshot.bs[b], p.area_side), -p.pathloss_exponent);
    }
    return signal / (p.noise_power + interference);
}

double compute_sinr(const NetworkSnapshot& snapshot, const AssociationPlan& plan, std::size_t user) {
    if (!plan.serving.at(user)) {
        throw UsageError("user has no serving BS");
    }
    return link_sinr(snapshot, user, *plan.serving[user], plan.transmitting(), plan.cooperating[user]);
}

double user_latency(const NetworkSnapshot& snapshot, const AssociationPlan& plan, std::size_t user,
                    double payload_bits) {
    const auto serving = plan.serving.at(user);
    if (!serving) {
        throw UsageError("user has no serving BS");
    }
    const auto tx = plan.transmitting();
    const double bandwidth = snapshot.params.bandwidth;
    const auto coop = plan.cooperating[user];

    double rate = bandwidth / static_cast<double>(plan.load[*serving]) *
                  std::log2(1.0 + link_sinr(snapshot, user, *serving, tx, coop));
    if (coop) {
        rate += bandwidth / static_cast<double>(plan.coop_load[*coop]) *
                std::log2(1.0 + link_sinr(snapshot, user, *coop, tx, serving));
    }
    return payload_bits / rate;
}

std::vector<DensityPoint> latency_vs_density(const DensityRequest& request, Mode mode, unsigned jobs) {
    if (request.lambda_bs_grid.empty()) {
        throw UsageError("lambda_bs grid must be non-empty");
    }
    if (!(request.payload_bits > 0.0) || request.replications == 0) {
        throw UsageError("payload_bits and replications must be positive");
    }
    const std::uint64_t reps = request.replications;
    const std::size_t n_points = request.lambda_bs_grid.size();
    std::vector<std::optional<double>> means(n_points * reps);
    parallel_for(means.size(), jobs, [&](std::size_t idx) {
        NetworkParams params = request.network;
        params.bs_density = request.lambda_bs_grid[idx / reps];
        const auto snap = sample_network(params, derive_seed(request.seed, "density", idx));
        const auto plan = associate(snap, mode);
        double sum = 0.0;
        std::size_t served = 0;
        for (std::size_t u = 0; u < snap.users.size(); ++u) {
            if (plan.serving[u]) {
                sum += user_latency(snap, plan, u, request.payload_bits);
                ++served;
            }
        }
        if (served > 0) {
            means[idx] = sum / static_cast<double>(served);
        }
    });

    std::vector<DensityPoint> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        out[i].lambda_bs = request.lambda_bs_grid[i];
        out[i].mode = mode;
        for (std::uint64_t r = 0; r < reps; ++r) {
            if (const auto& m = means[i * reps + r]) {
                out[i].replication_means.push_back(*m);
            }
        }
        out[i].latency = stats::mean_ci95(out[i].replication_means);
    }
    return out;
}

void write_density_csv(std::ostream& out, std::span<const DensityPoint> points) {
    csv::Writer w(out);
    w.header({"lambda_bs", "mode", "mean_latency_s", "ci95_low", "ci95_high", "replications"});
    for (const auto& p : points) {
        w.row({p.lambda_bs, to_string(p.mode), p.latency.mean, p.latency.ci.low, p.latency.ci.high,
               p.latency.count});
    }
}

}  // namespace urllc::topology
