#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "urllc/access.hpp"
#include "urllc/fbl.hpp"
#include "urllc/frame.hpp"
#include "urllc/simo.hpp"

using namespace urllc;

static void BM_MinBlocklength(benchmark::State& state) {
    const auto snr = fbl::LinkSnr::from_linear(1.0);
    const auto bits = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fbl::min_blocklength(bits, 1e-5, snr));
    }
}
BENCHMARK(BM_MinBlocklength)->Arg(32)->Arg(256)->Arg(4096);

static void BM_TradeoffCurve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<frame::MessageSpec> msgs;
    for (std::size_t i = 0; i < n; ++i) {
        msgs.push_back({"d" + std::to_string(i), 256, 1e-5});
    }
    const auto parts = frame::set_partitions(n);
    const auto snr = fbl::LinkSnr::from_linear(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(frame::tradeoff_curve(msgs, snr, parts));
    }
}
BENCHMARK(BM_TradeoffCurve)->Arg(4)->Arg(6);

static void BM_ResolveFrame(benchmark::State& state) {
    const auto devices = static_cast<std::size_t>(state.range(0));
    const unsigned frame_len = 100;
    access::SlotGrid grid(frame_len);
    for (std::size_t d = 0; d < devices; ++d) {
        grid.add(d, access::generate_access_pattern(d + 1, frame_len, 2));
    }
    access::ReceiverModel rx;
    rx.sic_enabled = true;
    rx.mpr_gamma = 2;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(access::resolve_frame(grid, rx, ++seed));
    }
}
BENCHMARK(BM_ResolveFrame)->Arg(20)->Arg(80);

static void BM_MrcChunk(benchmark::State& state) {
    simo::SimoChannel ch;
    ch.m_antennas = static_cast<unsigned>(state.range(0));
    ch.sigma = 0.5;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simo::simulate_mrc_ser(ch, 2, simo::kChunkTrials, ++seed));
    }
}
BENCHMARK(BM_MrcChunk)->Arg(8)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
