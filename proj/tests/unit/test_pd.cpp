#include <sstream>
#include <vector>

#include "doctest.h"
#include "urllc/error.hpp"
#include "urllc/interface_diversity.hpp"

using namespace urllc;
using pd::InterfaceTrace;

namespace {

InterfaceTrace parse(const std::string& text, const std::string& name = "t") {
    std::istringstream in(text);
    return pd::load_trace(in, name);
}

std::size_t error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const LoadError& e) {
        return e.line();
    }
    return 0;
}

void check_dominance(std::span<const InterfaceTrace> traces, const pd::PdConfig& combined,
                     std::span<const double> grid) {
    const auto all = pd::pd_latency(traces, combined);
    const auto curve = pd::reliability_curve(all.samples, grid);
    for (const auto& name : combined.interfaces) {
        const auto single = pd::pd_latency(traces, {name, {name}});
        const auto component = pd::reliability_curve(single.samples, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(curve[i].reliability >= component[i].reliability);
        }
    }
}

}  // namespace

TEST_CASE("trace parsing") {
    const auto t = parse("send_time_s,latency_ms\n0.0,12.5\n\n0.1,-1\r\n0.2,3\n");
    REQUIRE(t.events.size() == 3);
    CHECK(t.events[0].latency_s == doctest::Approx(0.0125));
    CHECK_FALSE(t.events[1].latency_s.has_value());
    CHECK(t.events[2].send_time_s == 0.2);
    CHECK_NOTHROW(t.validate());
}

TEST_CASE("trace errors carry the line number") {
    CHECK(error_line("") == 1);
    CHECK(error_line("time,latency\n") == 1);
    CHECK(error_line("send_time_s,latency_ms\n0,1\n0.1\n") == 3);
    CHECK(error_line("send_time_s,latency_ms\n0,1\n0.1,abc\n") == 3);
    CHECK(error_line("send_time_s,latency_ms\n0,1\n0,2\n") == 3);
    CHECK(error_line("send_time_s,latency_ms\n0,1\n0.1,0\n") == 3);
    CHECK(error_line("send_time_s,latency_ms\n0,1\n0.1,-2\n") == 3);
    CHECK(error_line("send_time_s,latency_ms\n\n0,nan\n") == 3);
    CHECK_THROWS_AS(pd::load_trace(std::filesystem::path("/nonexistent/trace.csv")), LoadError);
}

TEST_CASE("write and load round trip") {
    pd::LatencyMixture m;
    m.loss_prob = 0.1;
    m.spike_weight = 0.2;
    const auto t = pd::synth_trace("x", m, 20.0, 5.0, 1);
    std::ostringstream os;
    pd::write_trace(os, t);
    const auto back = parse(os.str(), "x");
    REQUIRE(back.events.size() == t.events.size());
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        CHECK(back.events[i].send_time_s == t.events[i].send_time_s);
        CHECK(back.events[i].latency_s.has_value() == t.events[i].latency_s.has_value());
        if (t.events[i].latency_s) {
            CHECK(*back.events[i].latency_s == doctest::Approx(*t.events[i].latency_s).epsilon(1e-14));
        }
    }
}

TEST_CASE("synthetic traces") {
    pd::LatencyMixture m;
    m.base_median_s = 0.05;
    m.base_log_sigma = 0.0;
    const auto t = pd::synth_trace("flat", m, 10.0, 10.0, 3);
    CHECK(t.events.size() == 100);
    for (const auto& e : t.events) {
        CHECK(*e.latency_s == doctest::Approx(0.05));
    }
    m.loss_prob = 1.0;
    for (const auto& e : pd::synth_trace("dead", m, 1.0, 10.0, 3).events) {
        CHECK_FALSE(e.latency_s.has_value());
    }
    m.loss_prob = 0.0;
    m.spike_weight = 1.0;
    for (const auto& e : pd::synth_trace("spiky", m, 10.0, 10.0, 3).events) {
        CHECK(*e.latency_s >= m.spike_scale_s);
    }
    m.base_median_s = -1.0;
    CHECK_THROWS_AS(pd::synth_trace("bad", m, 1.0, 1.0, 1), UsageError);
}

TEST_CASE("duplication keeps the first arrival") {
    const std::vector<InterfaceTrace> traces{
        parse("send_time_s,latency_ms\n0,10\n1,-1\n2,30\n3,-1\n", "a"),
        parse("send_time_s,latency_ms\n0,20\n1,5\n2,-1\n3,-1\n", "b"),
    };
    const auto r = pd::pd_latency(traces, {"ab", {"a", "b"}});
    REQUIRE(r.samples.size() == 4);
    CHECK(*r.samples[0] == doctest::Approx(0.010));
    CHECK(*r.samples[1] == doctest::Approx(0.005));
    CHECK(*r.samples[2] == doctest::Approx(0.030));
    CHECK_FALSE(r.samples[3].has_value());
    CHECK(r.unmatched == 0);
    CHECK_THROWS_AS(pd::pd_latency(traces, {"x", {"a", "c"}}), UsageError);
    CHECK_THROWS_AS(pd::pd_latency(traces, {"none", {}}), UsageError);
}

TEST_CASE("differing grids are matched by nearest send time") {
    const std::vector<InterfaceTrace> traces{
        parse("send_time_s,latency_ms\n0,10\n1,10\n2,10\n", "a"),
        parse("send_time_s,latency_ms\n0.01,5\n0.98,20\n5,1\n", "b"),
    };
    const auto r = pd::pd_latency(traces, {"ab", {"a", "b"}}, {0.05});
    REQUIRE(r.samples.size() == 2);
    CHECK(r.unmatched == 1);
    CHECK(*r.samples[0] == doctest::Approx(0.005));
    CHECK(*r.samples[1] == doctest::Approx(0.010));
}

TEST_CASE("combined reliability dominates every component on synthetic traces") {
    std::vector<InterfaceTrace> traces;
    for (std::uint64_t i = 0; i < 3; ++i) {
        pd::LatencyMixture m;
        m.base_median_s = 0.01 * static_cast<double>(i + 1);
        m.base_log_sigma = 0.5;
        m.spike_weight = 0.05;
        m.loss_prob = 0.02 * static_cast<double>(i);
        traces.push_back(pd::synth_trace("if" + std::to_string(i), m, 200.0, 10.0, 40 + i));
    }
    const auto grid = pd::default_latency_grid();
    check_dominance(traces, {"all", {"if0", "if1", "if2"}}, grid);
    check_dominance(traces, {"pair", {"if1", "if2"}}, grid);
}

TEST_CASE("combined reliability dominates every component on the sample traces") {
    const std::string dir = URLLC_TEST_DATA "/traces/";
    std::vector<InterfaceTrace> traces;
    for (const char* name : {"lte", "hspa", "wifi"}) {
        traces.push_back(pd::load_trace(std::filesystem::path(dir + name + ".csv")));
        CHECK(traces.back().events.size() == 1000);
    }
    CHECK(traces[0].name == "lte");
    check_dominance(traces, {"all", {"lte", "hspa", "wifi"}}, pd::default_latency_grid());
}

TEST_CASE("reliability curve") {
    const std::vector<reliability::LatencySample> s{0.01, 0.02, reliability::kDrop, 0.5};
    const double grid[] = {0.001, 0.015, 1.0};
    const auto c = pd::reliability_curve(s, grid);
    CHECK(c[0].reliability == 0.0);
    CHECK(c[1].reliability == 0.25);
    CHECK(c[2].reliability == 0.75);
    const auto g = pd::default_latency_grid();
    CHECK(g.size() == 61);
    CHECK(g.front() == 1e-3);
    CHECK(g.back() == 1.0);
}
