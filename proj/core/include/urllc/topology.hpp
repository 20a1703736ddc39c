#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "urllc/stats.hpp"

namespace urllc::topology {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Densities are per unit area; the window is a square torus of side `area_side`.
struct NetworkParams {
    double bs_density = 0.01;
    double user_density = 0.01;
    double area_side = 100.0;
    double pathloss_exponent = 4.0;
    double tx_power = 1.0;
    double noise_power = 1e-9;
    double bandwidth = 1e6;

    void validate() const;
};

struct NetworkSnapshot {
    NetworkParams params;
    std::vector<Point> bs;
    std::vector<Point> users;
};

/// Poisson counts with uniform placement, deterministic given `seed`.
NetworkSnapshot sample_network(const NetworkParams& params, std::uint64_t seed);

/// Wrap-around distance on the torus, floored at 1 to keep path loss finite.
double link_distance(const Point& a, const Point& b, double side);

enum class Mode { baseline, cooperation };

const char* to_string(Mode mode);

/// Nearest-BS association. In cooperation mode every user also gets the nearest idle
/// BS (one with no associated user), which wakes up to serve it jointly.
struct AssociationPlan {
    std::vector<std::optional<std::size_t>> serving;
    std::vector<std::optional<std::size_t>> cooperating;
    /// True for BSs without associated users.
    std::vector<bool> idle;
    /// Users per serving BS.
    std::vector<std::size_t> load;
    /// Users per awakened cooperating BS.
    std::vector<std::size_t> coop_load;

    /// A BS transmits when it serves users or was woken up for cooperation.
    bool transmits(std::size_t bs) const { return !idle[bs] || coop_load[bs] > 0; }
    std::vector<bool> transmitting() const;
};

AssociationPlan associate(const NetworkSnapshot& snapshot, Mode mode);

/// SINR of the link bs -> user. Interference comes from every transmitting BS except
/// `bs` and `partner` (a cooperating BS whose signal is cancelled for this user).
double link_sinr(const NetworkSnapshot& snapshot, std::size_t user, std::size_t bs,
                 const std::vector<bool>& transmitting,
                 std::optional<std::size_t> partner = std::nullopt);

/// SINR of the user's serving link under `plan`. Throws UsageError for an unserved user.
double compute_sinr(const NetworkSnapshot& snapshot, const AssociationPlan& plan, std::size_t user);

/// payload / (share * bandwidth * log2(1 + SINR)), summed over both links when the
/// user has a cooperating BS. Shares split each BS equally among its users.
double user_latency(const NetworkSnapshot& snapshot, const AssociationPlan& plan, std::size_t user,
                    double payload_bits);

struct DensityRequest {
    double payload_bits = 256.0;
    std::vector<double> lambda_bs_grid;
    /// bs_density is overridden by each grid point.
    NetworkParams network;
    std::uint64_t replications = 1000;
    std::uint64_t seed = 0;
};

struct DensityPoint {
    double lambda_bs = 0.0;
    Mode mode = Mode::baseline;
    stats::MeanCi latency;
    /// Mean user latency of each replication that had at least one served user.
    std::vector<double> replication_means;
};

/// Replication r at grid index i uses derive_seed(seed, "density", i * replications + r)
/// for both modes, so baseline and cooperation runs are paired.
std::vector<DensityPoint> latency_vs_density(const DensityRequest& request, Mode mode, unsigned jobs = 1);

/// `lambda_bs,mode,mean_latency_s,ci95_low,ci95_high,replications`.
void write_density_csv(std::ostream& out, std::span<const DensityPoint> points);

}  // namespace urllc::topology
