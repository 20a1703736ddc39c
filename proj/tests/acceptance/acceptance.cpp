// Acceptance checks. Prints one PASS/FAIL line per criterion; exits nonzero on any failure.
// Usage: urllc_acceptance [criterion...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "sic_oracle.hpp"
#include "urllc/access.hpp"
#include "urllc/fbl.hpp"
#include "urllc/frame.hpp"
#include "urllc/interface_diversity.hpp"
#include "urllc/minislot.hpp"
#include "urllc/reliability.hpp"
#include "urllc/runner.hpp"
#include "urllc/simo.hpp"
#include "urllc/stats.hpp"
#include "urllc/topology.hpp"

namespace {

using namespace urllc;
using fbl::LinkSnr;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failed conditions; the first few are reported.
class Checks {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && failures_++ < 3) {
            detail_ += (detail_.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }

    Outcome outcome() const {
        if (failures_ == 0) {
            return {true, notes_};
        }
        std::string d = std::to_string(failures_) + " failed: " + detail_;
        if (!notes_.empty()) {
            d += " [" + notes_ + "]";
        }
        return {false, d};
    }

private:
    std::uint64_t failures_ = 0;
    std::string detail_;
    std::string notes_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Outcome rational_algebra() {
    using Rational = boost::rational<std::int64_t>;
    Checks c;
    const std::vector<Rational> three(3, Rational(99, 100));
    c.require(reliability::product_of<Rational>(three) == Rational(970299, 1000000), "(99/100)^3");
    const std::vector<Rational> stages{Rational(999, 1000), Rational(9999, 10000), Rational(1, 2)};
    c.require(reliability::product_of<Rational>(stages) == Rational(999 * 9999, 2 * 10000000), "stage product");

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> num(0, 1000);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Rational> steps;
        Rational prev(1);
        for (int k = 0; k < 4; ++k) {
            steps.emplace_back(num(rng), 1000);
            const Rational now = reliability::product_of<Rational>(steps);
            c.require(now <= prev, "rational chain grew on append");
            prev = now;
        }
    }
    reliability::ProtocolChain chain{0.99};
    double prev = reliability::chain_success(chain);
    std::uniform_real_distribution<double> p(0.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        chain.append(p(rng));
        const double now = reliability::chain_success(chain);
        c.require(now <= prev, "chain_success grew on append");
        prev = now;
    }
    reliability::ProtocolChain exact{0.99, 0.99, 0.99};
    c.note("chain(0.99^3)=" + fmt(reliability::chain_success(exact)));
    return c.outcome();
}

Outcome fbl_limits() {
    Checks c;
    for (const std::uint64_t n : {1u, 10u, 100u, 1000u}) {
        for (const double snr : {0.1, 1.0, 10.0}) {
            const auto s = LinkSnr::from_linear(snr);
            const double want = fbl::awgn_capacity(s) + std::log2(static_cast<double>(n)) / (2.0 * n);
            c.require(fbl::max_coding_rate(n, 0.5, s) == want, "eps=0.5 identity at n=" + std::to_string(n));
        }
    }
    for (const double snr : {0.1, 1.0, 10.0}) {
        const auto s = LinkSnr::from_linear(snr);
        const double gap = std::abs(fbl::max_coding_rate(10'000'000, 1e-5, s) - fbl::awgn_capacity(s));
        c.require(gap < 1e-3, "|R(1e7) - C| = " + fmt(gap) + " at snr " + fmt(snr));
        c.note("|R(1e7)-C|=" + fmt(gap) + " at snr " + fmt(snr));
    }

    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> bits(8, 2048);
    std::uniform_real_distribution<double> log_eps(-9.0, -2.0);
    std::uniform_real_distribution<double> snr_db(-3.0, 15.0);
    for (int i = 0; i < 100; ++i) {
        const auto k = bits(rng);
        const double eps = std::pow(10.0, log_eps(rng));
        const auto s = LinkSnr::from_db(snr_db(rng));
        const auto n = fbl::min_blocklength(k, eps, s);
        c.require(fbl::error_prob(n, k, s) <= eps * (1.0 + 1e-9), "error_prob above target");
        c.require(n == 1 || fbl::error_prob(n - 1, k, s) > eps * (1.0 - 1e-9), "blocklength not minimal");
    }
    return c.outcome();
}

Outcome frame_designer() {
    Checks c;
    std::uint64_t cases = 0;
    for (std::size_t count = 2; count <= 6; ++count) {
        for (const std::uint64_t bits : {64u, 128u, 256u, 512u, 1024u}) {
            for (const double eps : {1e-3, 1e-5}) {
                for (const double snr : {0.5, 1.0, 4.0}) {
                    std::vector<frame::MessageSpec> msgs;
                    for (std::size_t i = 0; i < count; ++i) {
                        msgs.push_back({"d" + std::to_string(i), bits, eps});
                    }
                    const auto s = LinkSnr::from_linear(snr);
                    const auto sep = frame::plan_separate(msgs, s);
                    const auto joint = frame::plan_joint(msgs, s);
                    c.require(joint.total_cu < sep.total_cu, "joint >= separate");
                    ++cases;
                    if (count > 5) {
                        continue;
                    }
                    const auto parts = frame::set_partitions(count);
                    const auto curve = frame::tradeoff_curve(msgs, s, parts);
                    for (const auto& p : curve) {
                        if (p.grouping == frame::singletons(count)) {
                            c.require(p.total_cu == sep.total_cu && p.max_device_energy_cu == sep.max_device_energy() &&
                                          p.min_device_energy_cu == sep.min_device_energy(),
                                      "separate extreme");
                        }
                        if (p.grouping == frame::single_block(count)) {
                            c.require(p.total_cu == joint.total_cu &&
                                          p.max_device_energy_cu == joint.max_device_energy() &&
                                          p.min_device_energy_cu == joint.min_device_energy(),
                                      "joint extreme");
                        }
                    }
                }
            }
        }
    }
    c.note(std::to_string(cases) + " grid cases");
    return c.outcome();
}

Outcome aloha_oracle() {
    Checks c;
    access::GrantFreeConfig cfg;
    cfg.n_devices = 1000;
    cfg.activation_prob = 0.1;
    cfg.k_replicas = 1;
    cfg.frame_len = 100;
    cfg.n_frames = 1000;
    cfg.seed = 17;
    cfg.record_devices = false;
    const auto r = access::run_grant_free(cfg);
    const double slots = static_cast<double>(r.slots);
    const double target = std::exp(-1.0);
    const double sd = std::sqrt(target * (1.0 - target) / slots);
    const double thr = r.throughput();
    c.require(r.slots == 100'000, "slot count");
    c.require(std::abs(thr - target) <= 3.0 * sd, "throughput " + fmt(thr) + " vs e^-1");
    c.note("throughput=" + fmt(thr) + " G=" + fmt(static_cast<double>(r.activated()) / slots) +
           " 3sd=" + fmt(3.0 * sd));
    return c.outcome();
}

Outcome sic_equivalence() {
    Checks c;
    const auto report = acceptance::check_sic_oracle(4, 4);
    c.require(report.mismatches == 0, report.first_mismatch);
    c.note(std::to_string(report.configurations) + " configurations, " + std::to_string(report.mismatches) +
           " mismatches");
    return c.outcome();
}

Outcome simo_sign_structure() {
    Checks c;
    simo::HeatmapRequest q;
    q.m_antennas = 128;
    q.constellation_size = 2;
    q.trials = 100'000;
    q.seed = 2024;
    const auto cell = [&](double snr_db, double sigma) {
        q.snr_grid_db = {snr_db};
        q.sigma_grid = {sigma};
        return simo::ser_gain_heatmap(q).front();
    };
    const auto describe = [](const simo::HeatmapCell& h) {
        return "snr=" + fmt(h.snr_db) + " sigma=" + fmt(h.sigma) + " mrc=" + fmt(h.mrc.ser()) +
               " ed=" + fmt(h.ed.ser()) + " gain=" + fmt(h.gain_log10) + (h.censored ? " censored" : "");
    };
    for (const double snr : {0.0, 10.0}) {
        const auto h = cell(snr, 0.0);
        c.require(h.gain_log10 <= 0.0, "gain > 0 at " + describe(h));
        c.note(describe(h));
    }
    const auto h = cell(10.0, 0.9);
    c.require(h.gain_log10 >= 1.0, "gain < 1 at " + describe(h));
    c.note(describe(h));
    return c.outcome();
}

void check_pd_dominance(Checks& c, std::span<const pd::InterfaceTrace> traces) {
    const auto grid = pd::default_latency_grid();
    const auto n = traces.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        pd::PdConfig cfg;
        for (unsigned i = 0; i < n; ++i) {
            if (mask >> i & 1u) {
                cfg.interfaces.push_back(traces[i].name);
                cfg.name += (cfg.name.empty() ? "" : "+") + traces[i].name;
            }
        }
        const auto curve = pd::reliability_curve(pd::pd_latency(traces, cfg).samples, grid);
        for (const auto& name : cfg.interfaces) {
            const auto single = pd::reliability_curve(pd::pd_latency(traces, {name, {name}}).samples, grid);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                c.require(curve[g].reliability >= single[g].reliability, cfg.name + " below " + name);
            }
        }
    }
}

Outcome pd_dominance() {
    Checks c;
    std::vector<pd::InterfaceTrace> synthetic;
    for (std::uint64_t i = 0; i < 3; ++i) {
        pd::LatencyMixture m;
        m.base_median_s = 0.01 * static_cast<double>(i + 1);
        m.spike_weight = 0.02 * static_cast<double>(i + 1);
        m.loss_prob = 0.01 * static_cast<double>(i);
        synthetic.push_back(pd::synth_trace("s" + std::to_string(i), m, 1000.0, 10.0, 100 + i));
    }
    check_pd_dominance(c, synthetic);
    std::vector<pd::InterfaceTrace> sample;
    for (const char* name : {"lte", "hspa", "wifi"}) {
        sample.push_back(pd::load_trace(std::filesystem::path(URLLC_TEST_DATA "/traces/") / (std::string(name) + ".csv")));
        c.require(sample.back().events.size() == 1000, std::string(name) + " size");
    }
    check_pd_dominance(c, sample);
    c.note("7 configurations on each trace set");
    return c.outcome();
}

Outcome minislot_criterion() {
    Checks c;
    minislot::LoadParams p;
    p.arrival_rate = 1000.0;
    p.horizon_slots = 200'000;
    p.seed = 99;
    const auto r = minislot::urllc_latency_cdf(p);
    const auto& tl = r.timeline;
    std::vector<std::uint8_t> owner(tl.horizon_symbols(), 0);
    std::uint64_t placed = 0;
    for (const auto& o : r.schedule.outcomes) {
        if (o.dropped()) {
            continue;
        }
        for (std::uint64_t q = *o.start_symbol; q < *o.start_symbol + o.arrival.size_symbols; ++q) {
            c.require(!tl.is_control(q), "placement on a control symbol");
            c.require(++owner[q] == 1, "overlapping placements");
        }
        ++placed;
    }
    const auto n = r.schedule.outcomes.size();
    c.require(n >= 100'000 * 0.98, "too few arrivals");
    c.require(p.utilization() < 0.1, "utilization");
    const auto p99 = r.cdf.latency_at(0.99);
    c.require(p99.has_value() && *p99 <= 7.0 * p.symbol_duration, "p99 above 7 symbols");
    c.note(std::to_string(n) + " arrivals, utilization=" + fmt(p.utilization()) +
           ", p99=" + fmt(p99.value_or(INFINITY) / p.symbol_duration) + " symbols");
    return c.outcome();
}

Outcome densification() {
    Checks c;
    topology::DensityRequest q;
    q.lambda_bs_grid = {0.005, 0.01, 0.02, 0.05, 0.1};
    q.network.user_density = 0.01;
    q.network.area_side = 100.0;
    q.replications = 200;
    q.seed = 2024;
    const auto base = topology::latency_vs_density(q, topology::Mode::baseline);
    const auto coop = topology::latency_vs_density(q, topology::Mode::cooperation);
    for (const auto* curve : {&base, &coop}) {
        std::vector<double> x, y;
        for (const auto& p : *curve) {
            for (const double m : p.replication_means) {
                x.push_back(p.lambda_bs);
                y.push_back(m);
            }
        }
        const double rho = stats::spearman(x, y);
        const double upper = stats::correlation_upper_bound(rho, x.size());
        const char* mode = topology::to_string(curve->front().mode);
        c.require(upper <= 0.0, std::string(mode) + " upper bound " + fmt(upper));
        c.note(std::string(mode) + " rho=" + fmt(rho) + " upper95=" + fmt(upper));
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
        c.require(coop[i].latency.mean <= base[i].latency.mean, "cooperation above baseline at " + fmt(base[i].lambda_bs));
    }
    return c.outcome();
}

// The heatmap runs at reduced size; it is the only scenario above a few seconds per run.
runner::json determinism_params(const std::string& id) {
    if (id == "simo_heatmap") {
        return {{"trials", 5000}, {"m_antennas", 32}};
    }
    return runner::json::object();
}

Outcome determinism() {
    Checks c;
    const auto root = std::filesystem::temp_directory_path() / "urllc_acceptance_determinism";
    std::filesystem::remove_all(root);
    std::uint64_t files = 0;
    for (const auto& id : runner::scenario_ids()) {
        const auto cfg = runner::ExperimentConfig::from_json(
            {{"scenario", id}, {"master_seed", 31337}, {"params", determinism_params(id)}});
        std::vector<std::map<std::string, std::string>> digests;
        for (const auto& [tag, jobs] : std::vector<std::pair<std::string, unsigned>>{{"a", 1}, {"b", 1}, {"c", 4}}) {
            const auto report = runner::run(cfg, {jobs, std::nullopt, root / id / tag});
            std::map<std::string, std::string> d;
            for (const auto& f : report.files) {
                if (f.name != "manifest.json") {
                    d[f.name] = runner::file_digest(report.output_dir / f.name);
                }
            }
            digests.push_back(std::move(d));
        }
        c.require(!digests[0].empty(), id + " wrote no CSV");
        c.require(digests[0] == digests[1], id + " differs between runs");
        c.require(digests[0] == digests[2], id + " differs between --jobs 1 and 4");
        files += digests[0].size();
    }
    std::filesystem::remove_all(root);
    c.note(std::to_string(files) + " CSV files across " + std::to_string(runner::scenario_ids().size()) + " scenarios");
    return c.outcome();
}

struct Criterion {
    std::string name;
    double limit_s;
    std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {"rational_algebra", 1.0, rational_algebra},
        {"fbl_limits", 5.0, fbl_limits},
        {"frame_designer", 10.0, frame_designer},
        {"aloha_oracle", 10.0, aloha_oracle},
        {"sic_equivalence", 30.0, sic_equivalence},
        {"simo_sign_structure", 120.0, simo_sign_structure},
        {"pd_dominance", 5.0, pd_dominance},
        {"minislot", 30.0, minislot_criterion},
        {"densification", 180.0, densification},
        {"determinism", 600.0, determinism},
    };
    return all;
}

bool run_one(const Criterion& cr) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = cr.check();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_s) {
        out.pass = false;
        out.detail += " runtime above " + fmt(cr.limit_s) + " s";
    }
    std::printf("%s %s (%.2f s) %s\n", out.pass ? "PASS" : "FAIL", cr.name.c_str(), secs, out.detail.c_str());
    std::fflush(stdout);
    return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<const Criterion*> selected;
    for (int i = 1; i < argc; ++i) {
        const std::string want = argv[i];
        bool found = false;
        for (const auto& cr : criteria()) {
            if (cr.name == want) {
                selected.push_back(&cr);
                found = true;
            }
        }
        if (!found) {
            std::fprintf(stderr, "unknown criterion '%s'\n", want.c_str());
            return 2;
        }
    }
    if (selected.empty()) {
        for (const auto& cr : criteria()) {
            selected.push_back(&cr);
        }
    }
    bool ok = true;
    for (const auto* cr : selected) {
        ok = run_one(*cr) && ok;
    }
    return ok ? 0 : 1;
}
