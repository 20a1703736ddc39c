#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "urllc/error.hpp"
#include "urllc/topology.hpp"

using namespace urllc;
using topology::Mode;
using topology::NetworkSnapshot;
using topology::Point;

namespace {

NetworkSnapshot fixed(std::vector<Point> bs, std::vector<Point> users) {
    NetworkSnapshot s;
    s.params.area_side = 100.0;
    s.params.pathloss_exponent = 4.0;
    s.params.noise_power = 1e-9;
    s.bs = std::move(bs);
    s.users = std::move(users);
    return s;
}

}  // namespace

TEST_CASE("torus distance") {
    CHECK(topology::link_distance({1, 1}, {99, 1}, 100) == doctest::Approx(2.0));
    CHECK(topology::link_distance({0, 0}, {30, 40}, 100) == doctest::Approx(50.0));
    CHECK(topology::link_distance({5, 5}, {5.2, 5}, 100) == 1.0);
}

TEST_CASE("network parameters") {
    topology::NetworkParams p;
    p.pathloss_exponent = 2.0;
    CHECK_THROWS_AS(p.validate(), UsageError);
    p.pathloss_exponent = 3.0;
    p.bs_density = 0.0;
    CHECK_THROWS_AS(topology::sample_network(p, 1), UsageError);
}

TEST_CASE("poisson snapshots are seeded and have the expected size") {
    topology::NetworkParams p;
    p.bs_density = 0.02;
    p.user_density = 0.01;
    const auto a = topology::sample_network(p, 9);
    const auto b = topology::sample_network(p, 9);
    CHECK(a.bs.size() == b.bs.size());
    CHECK(a.users.front().x == b.users.front().x);
    double total = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto snap = topology::sample_network(p, s);
        total += static_cast<double>(snap.bs.size());
        for (const auto& pt : snap.bs) {
            CHECK((pt.x >= 0.0 && pt.x < 100.0 && pt.y >= 0.0 && pt.y < 100.0));
        }
    }
    // mean 200 per snapshot, standard error sqrt(200 / 200) = 1
    CHECK(std::abs(total / 200.0 - 200.0) < 4.0);
}

TEST_CASE("nearest association and idle base stations") {
    const auto s = fixed({{10, 10}, {20, 10}, {80, 80}}, {{11, 10}, {12, 10}});
    const auto base = topology::associate(s, Mode::baseline);
    CHECK(base.serving[0] == 0u);
    CHECK(base.serving[1] == 0u);
    CHECK(base.load[0] == 2);
    CHECK(base.idle == std::vector<bool>{false, true, true});
    CHECK_FALSE(base.cooperating[0].has_value());
    CHECK(base.transmitting() == std::vector<bool>{true, false, false});

    const auto coop = topology::associate(s, Mode::cooperation);
    CHECK(coop.cooperating[0] == 1u);
    CHECK(coop.cooperating[1] == 1u);
    CHECK(coop.coop_load[1] == 2);
    CHECK(coop.transmitting() == std::vector<bool>{true, true, false});
}

TEST_CASE("sinr and latency by hand") {
    // One user 2 m from BS 0 and 4 m from BS 1; both BSs serve someone.
    auto s = fixed({{10, 10}, {16, 10}}, {{12, 10}, {17, 10}});
    s.params.noise_power = 1e-3;
    s.params.bandwidth = 1e6;
    const auto plan = topology::associate(s, Mode::baseline);
    REQUIRE(plan.serving[0] == 0u);
    REQUIRE(plan.serving[1] == 1u);
    const double signal = std::pow(2.0, -4.0);
    const double interference = std::pow(4.0, -4.0);
    const double sinr = signal / (1e-3 + interference);
    CHECK(topology::compute_sinr(s, plan, 0) == doctest::Approx(sinr));
    CHECK(topology::user_latency(s, plan, 0, 256.0) == doctest::Approx(256.0 / (1e6 * std::log2(1.0 + sinr))));
}

TEST_CASE("cooperation cancels the partner and adds its rate") {
    auto s = fixed({{10, 10}, {14, 10}}, {{12, 10}});
    s.params.noise_power = 1e-3;
    const auto base = topology::associate(s, Mode::baseline);
    const auto coop = topology::associate(s, Mode::cooperation);
    REQUIRE(coop.cooperating[0] == 1u);
    // Baseline: BS 1 is idle, so no interference at all.
    CHECK(topology::compute_sinr(s, base, 0) == doctest::Approx(std::pow(2.0, -4.0) / 1e-3));
    // Cooperation: BS 1 transmits but is cancelled; both links carry data.
    CHECK(topology::compute_sinr(s, coop, 0) == doctest::Approx(std::pow(2.0, -4.0) / 1e-3));
    CHECK(topology::user_latency(s, coop, 0, 256.0) < topology::user_latency(s, base, 0, 256.0));
}

TEST_CASE("unserved users") {
    const auto s = fixed({}, {{1, 1}});
    const auto plan = topology::associate(s, Mode::cooperation);
    CHECK_FALSE(plan.serving[0].has_value());
    CHECK_THROWS_AS(topology::compute_sinr(s, plan, 0), UsageError);
}

TEST_CASE("latency falls with density and cooperation helps") {
    topology::DensityRequest q;
    q.lambda_bs_grid = {0.005, 0.02, 0.08};
    q.network.user_density = 0.01;
    q.network.area_side = 60.0;
    q.replications = 60;
    q.seed = 77;
    const auto base = topology::latency_vs_density(q, Mode::baseline, 2);
    const auto coop = topology::latency_vs_density(q, Mode::cooperation, 1);
    REQUIRE(base.size() == 3);
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        CHECK(base[i + 1].latency.mean < base[i].latency.mean);
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(coop[i].latency.mean <= base[i].latency.mean);
    }
    CHECK(topology::latency_vs_density(q, Mode::baseline, 1)[1].replication_means == base[1].replication_means);
}

TEST_CASE("density csv") {
    topology::DensityPoint p;
    p.lambda_bs = 0.01;
    p.mode = Mode::cooperation;
    p.latency = {0.5, {0.25, 0.75}, 10};
    p.replication_means.assign(10, 0.5);
    std::ostringstream os;
    const topology::DensityPoint pts[] = {p};
    topology::write_density_csv(os, pts);
    CHECK(os.str() == "lambda_bs,mode,mean_latency_s,ci95_low,ci95_high,replications\n0.01,cooperation,0.5,0.25,0.75,10\n");
}
