#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "urllc/access.hpp"
#include "urllc/csv.hpp"
#include "urllc/fbl.hpp"
#include "urllc/frame.hpp"
#include "urllc/interface_diversity.hpp"
#include "urllc/minislot.hpp"
#include "urllc/parallel.hpp"
#include "urllc/reliability.hpp"
#include "urllc/seed.hpp"
#include "urllc/simo.hpp"
#include "urllc/stats.hpp"
#include "urllc/topology.hpp"

namespace urllc::runner::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kMaxCount = 1'000'000'000;

template <class P>
Scenario make_scenario(std::string id, P (*read)(ParamReader&),
                       Summary (*exec)(const P&, std::uint64_t, unsigned, OutputSink&)) {
    Scenario s;
    s.id = id;
    s.validate = [read](const json& params) {
        ParamReader r(params, "params");
        read(r);
        r.finish();
        return r.normalized();
    };
    s.execute = [read, exec](const json& params, std::uint64_t seed, unsigned jobs, OutputSink& out) {
        ParamReader r(params, "params");
        const P p = read(r);
        r.finish();
        return exec(p, seed, jobs, out);
    };
    return s;
}

std::vector<double> read_grid(ParamReader& r, double lo, double hi, std::uint64_t points) {
    const double a = r.positive("grid_min_s", lo);
    const double b = r.positive("grid_max_s", hi);
    const auto n = r.integer("grid_points", points, 1, 10000);
    if (b < a) {
        r.fail("grid_max_s", "must be >= grid_min_s");
    }
    return reliability::log_grid(a, b, n);
}

pd::LatencyMixture read_mixture(ParamReader& r, const pd::LatencyMixture& def) {
    pd::LatencyMixture m;
    m.base_median_s = r.positive("base_median_s", def.base_median_s);
    m.base_log_sigma = r.number("base_log_sigma", def.base_log_sigma, 0.0, 10.0);
    m.spike_weight = r.probability("spike_weight", def.spike_weight);
    m.spike_scale_s = r.positive("spike_scale_s", def.spike_scale_s);
    m.spike_shape = r.positive("spike_shape", def.spike_shape);
    m.loss_prob = r.number("loss_prob", def.loss_prob, 0.0, 0.999999);
    return m;
}

access::ReceiverModel read_receiver(ParamReader& r) {
    return r.nested("receiver", [](ParamReader& c) {
        access::ReceiverModel m;
        m.mpr_gamma = static_cast<unsigned>(c.integer("mpr_gamma", 1, 1, 1024));
        m.sic_enabled = c.boolean("sic", true);
        m.combining_enabled = c.boolean("combining", false);
        m.per_replica_success = c.probability("per_replica_success", 0.99);
        return m;
    });
}

std::string render_cdf(const reliability::LatencyCdf& cdf, std::span<const double> deadlines) {
    std::ostringstream os;
    reliability::write_csv(os, cdf, deadlines);
    return os.str();
}

double latency_quantile(const reliability::LatencyCdf& cdf, double level) {
    const auto t = cdf.latency_at(level);
    return t ? *t : kInf;
}

// latency_cdf: stage-model drops on top of a lognormal/Pareto latency body.

struct LatencyCdfParams {
    reliability::StageModel stages;
    pd::LatencyMixture latency;
    std::uint64_t n_packets = 0;
    double deadline_s = 0.0;
    std::vector<double> grid;
};

LatencyCdfParams read_latency_cdf(ParamReader& r) {
    LatencyCdfParams p;
    p.stages = r.nested("stages", [](ParamReader& c) {
        reliability::StageModel s;
        s.p_aux = c.probability("p_aux", 0.999);
        s.p_meta = c.probability("p_meta", 0.9999);
        s.p_data = c.probability("p_data", 0.999);
        return s;
    });
    p.latency = r.nested("latency", [](ParamReader& c) {
        pd::LatencyMixture def;
        def.base_median_s = 0.005;
        def.spike_weight = 0.01;
        def.spike_scale_s = 0.02;
        def.spike_shape = 2.0;
        return read_mixture(c, def);
    });
    p.n_packets = r.integer("n_packets", 100000, 1, kMaxCount);
    p.deadline_s = r.positive("deadline_s", 0.01);
    p.grid = read_grid(r, 1e-3, 1.0, 61);
    return p;
}

Summary exec_latency_cdf(const LatencyCdfParams& p, std::uint64_t seed, unsigned, OutputSink& out) {
    const auto trace = pd::synth_trace("latency", p.latency, static_cast<double>(p.n_packets), 1.0,
                                       derive_seed(seed, "latency_cdf", 0));
    Rng rng(derive_seed(seed, "latency_cdf", 1));
    std::bernoulli_distribution delivered(reliability::packet_success(p.stages));
    std::vector<double> finite;
    std::uint64_t drops = 0;
    for (const auto& e : trace.events) {
        const bool ok = delivered(rng);
        if (ok && e.latency_s) {
            finite.push_back(*e.latency_s);
        } else {
            ++drops;
        }
    }
    const auto cdf = reliability::LatencyCdf::from_parts(std::move(finite), drops);
    out.write("latency_cdf.csv", render_cdf(cdf, p.grid));
    return {
        {"packet_success_model", reliability::packet_success(p.stages)},
        {"reliability_at_deadline", cdf.reliability_at(p.deadline_s)},
        {"drop_probability", cdf.drop_probability()},
        {"latency_at_0.999_s", latency_quantile(cdf, 0.999)},
    };
}

// frame_tradeoff: every grouping of the downlink messages.

struct FrameParams {
    std::vector<frame::MessageSpec> messages;
    double snr_db = 0.0;
};

FrameParams read_frame(ParamReader& r) {
    FrameParams p;
    json def = json::array();
    for (int i = 0; i < 4; ++i) {
        def.push_back(json::object());
    }
    r.each("messages", def, [&](ParamReader& c, std::size_t i) {
        frame::MessageSpec m;
        m.device_id = c.text("device_id", "d" + std::to_string(i));
        m.b_bits = c.integer("b_bits", 256, 1, 1'000'000);
        m.epsilon_target = c.number("epsilon_target", 1e-5, 1e-12, 0.5);
        p.messages.push_back(m);
    });
    if (p.messages.empty() || p.messages.size() > 8) {
        r.fail("messages", "needs between 1 and 8 messages");
    }
    p.snr_db = r.number("snr_db", 0.0, -20.0, 40.0);
    return p;
}

Summary exec_frame(const FrameParams& p, std::uint64_t, unsigned, OutputSink& out) {
    const auto snr = fbl::LinkSnr::from_db(p.snr_db);
    const auto partitions = frame::set_partitions(p.messages.size());
    const auto curve = frame::tradeoff_curve(p.messages, snr, partitions);
    std::ostringstream os;
    frame::write_tradeoff_csv(os, curve);
    out.write("frame_tradeoff.csv", os.str());
    const auto sep = frame::plan_separate(p.messages, snr);
    const auto joint = frame::plan_joint(p.messages, snr);
    return {
        {"groupings", static_cast<double>(curve.size())},
        {"pareto_points", static_cast<double>(frame::pareto_front(curve).size())},
        {"separate_total_cu", static_cast<double>(sep.total_cu)},
        {"joint_total_cu", static_cast<double>(joint.total_cu)},
        {"separate_max_energy_cu", static_cast<double>(sep.max_device_energy())},
        {"joint_max_energy_cu", static_cast<double>(joint.max_device_energy())},
    };
}

// simo_heatmap: MRC with estimation error against energy detection.

simo::HeatmapRequest read_simo(ParamReader& r) {
    simo::HeatmapRequest q;
    q.snr_grid_db = r.numbers("snr_grid_db", {-10.0, -5.0, 0.0, 5.0, 10.0}, -30.0, 40.0);
    q.sigma_grid = r.numbers("sigma_grid", {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}, 0.0, 1.0);
    q.m_antennas = static_cast<unsigned>(r.integer("m_antennas", 128, 1, 4096));
    q.constellation_size = static_cast<unsigned>(r.integer("constellation_size", 2, 2, 64));
    q.trials = r.integer("trials", 20000, 1, kMaxCount);
    q.interference_power = r.number("interference_power", 0.0, 0.0, 1e6);
    return q;
}

Summary exec_simo(const simo::HeatmapRequest& p, std::uint64_t seed, unsigned jobs, OutputSink& out) {
    auto q = p;
    q.seed = seed;
    const auto cells = simo::ser_gain_heatmap(q, jobs);
    std::ostringstream os;
    simo::write_heatmap_csv(os, cells);
    out.write("simo_heatmap.csv", os.str());
    double lo = kInf;
    double hi = -kInf;
    std::size_t censored = 0;
    for (const auto& c : cells) {
        lo = std::min(lo, c.gain_log10);
        hi = std::max(hi, c.gain_log10);
        censored += c.censored ? 1 : 0;
    }
    return {{"cells", static_cast<double>(cells.size())},
            {"min_gain_log10", lo},
            {"max_gain_log10", hi},
            {"censored_cells", static_cast<double>(censored)}};
}

// pd_interfaces: packet duplication over subsets of interfaces.

struct PdInterface {
    std::string name;
    std::string path;
    pd::LatencyMixture model;
};

struct PdParams {
    std::vector<PdInterface> interfaces;
    std::vector<pd::PdConfig> configs;
    double duration_s = 0.0;
    double rate_hz = 0.0;
    pd::AlignOptions align;
    double deadline_s = 0.0;
    std::vector<double> grid;
};

json default_pd_interfaces() {
    return json::array({
        {{"name", "lte"}, {"base_median_s", 0.04}, {"base_log_sigma", 0.3}, {"spike_weight", 0.02},
         {"spike_scale_s", 0.2}, {"loss_prob", 0.01}},
        {{"name", "hspa"}, {"base_median_s", 0.06}, {"base_log_sigma", 0.4}, {"spike_weight", 0.05},
         {"spike_scale_s", 0.3}, {"loss_prob", 0.02}},
        {{"name", "wifi"}, {"base_median_s", 0.01}, {"base_log_sigma", 0.6}, {"spike_weight", 0.05},
         {"spike_scale_s", 0.1}, {"loss_prob", 0.03}},
    });
}

json default_pd_configs(const std::vector<PdInterface>& interfaces) {
    json configs = json::array();
    const std::size_t n = std::min<std::size_t>(interfaces.size(), 10);
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        json names = json::array();
        std::string label;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                names.push_back(interfaces[i].name);
                label += (label.empty() ? "" : "+") + interfaces[i].name;
            }
        }
        configs.push_back({{"name", label}, {"interfaces", names}});
    }
    return configs;
}

PdParams read_pd(ParamReader& r) {
    PdParams p;
    std::set<std::string> names;
    r.each("interfaces", default_pd_interfaces(), [&](ParamReader& c, std::size_t) {
        PdInterface itf;
        itf.name = c.text("name");
        if (!names.insert(itf.name).second) {
            c.fail("name", "duplicate interface name '" + itf.name + "'");
        }
        if (c.choice("source", "synthetic", {"synthetic", "trace"}) == "trace") {
            itf.path = c.text("path");
        } else {
            itf.model = read_mixture(c, pd::LatencyMixture{});
        }
        p.interfaces.push_back(itf);
    });
    if (p.interfaces.empty()) {
        r.fail("interfaces", "must not be empty");
    }
    r.each("configs", default_pd_configs(p.interfaces), [&](ParamReader& c, std::size_t) {
        pd::PdConfig cfg;
        cfg.name = c.text("name");
        cfg.interfaces = c.strings("interfaces", {});
        for (const auto& n : cfg.interfaces) {
            if (!names.count(n)) {
                c.fail("interfaces", "unknown interface '" + n + "'");
            }
        }
        p.configs.push_back(cfg);
    });
    if (p.configs.empty()) {
        r.fail("configs", "must not be empty");
    }
    p.duration_s = r.positive("duration_s", 3600.0);
    p.rate_hz = r.positive("rate_hz", 10.0);
    if (p.duration_s * p.rate_hz > 1e8) {
        r.fail("duration_s", "duration_s * rate_hz must not exceed 1e8 events");
    }
    p.align.tolerance_s = r.positive("tolerance_s", 0.05);
    p.deadline_s = r.positive("deadline_s", 0.1);
    p.grid = read_grid(r, 1e-3, 1.0, 61);
    return p;
}

Summary exec_pd(const PdParams& p, std::uint64_t seed, unsigned jobs, OutputSink& out) {
    std::vector<pd::InterfaceTrace> traces(p.interfaces.size());
    parallel_for(p.interfaces.size(), jobs, [&](std::size_t i) {
        const auto& itf = p.interfaces[i];
        if (itf.path.empty()) {
            traces[i] = pd::synth_trace(itf.name, itf.model, p.duration_s, p.rate_hz, derive_seed(seed, "pd", i));
        } else {
            traces[i] = pd::load_trace(std::filesystem::path(itf.path));
            traces[i].name = itf.name;
        }
    });

    std::ostringstream os;
    csv::Writer w(os);
    w.header({"config", "latency_s", "reliability"});
    Summary summary;
    for (const auto& cfg : p.configs) {
        const auto joined = pd::pd_latency(traces, cfg, p.align);
        for (const auto& pt : pd::reliability_curve(joined.samples, p.grid)) {
            w.row({cfg.name, pt.latency_s, pt.reliability});
        }
        const double deadline[] = {p.deadline_s};
        summary.emplace_back("reliability_" + cfg.name, pd::reliability_curve(joined.samples, deadline)[0].reliability);
        // Events without a partner inside the tolerance window are left out of the join.
        summary.emplace_back("unmatched_" + cfg.name, static_cast<double>(joined.unmatched));
    }
    out.write("pd_interfaces.csv", os.str());
    return summary;
}

// densification: mean latency against BS density, with and without cooperation.

topology::DensityRequest read_density(ParamReader& r) {
    topology::DensityRequest q;
    q.lambda_bs_grid = r.numbers("lambda_bs_grid", {0.005, 0.01, 0.02, 0.05, 0.1}, 1e-9, 10.0);
    q.network.user_density = r.number("user_density", 0.01, 1e-9, 10.0);
    q.network.area_side = r.positive("area_side", 100.0);
    q.network.pathloss_exponent = r.number("pathloss_exponent", 4.0, 2.0 + 1e-9, 8.0);
    q.network.tx_power = r.positive("tx_power", 1.0);
    q.network.noise_power = r.positive("noise_power", 1e-9);
    q.network.bandwidth = r.positive("bandwidth_hz", 1e6);
    q.payload_bits = r.positive("payload_bits", 256.0);
    q.replications = r.integer("replications", 200, 2, 1'000'000);
    const double area = q.network.area_side * q.network.area_side;
    const double max_bs = *std::max_element(q.lambda_bs_grid.begin(), q.lambda_bs_grid.end());
    if (max_bs * area > 1e5 || q.network.user_density * area > 1e5) {
        r.fail("area_side", "expected node counts above 1e5 per snapshot");
    }
    return q;
}

Summary exec_density(const topology::DensityRequest& p, std::uint64_t seed, unsigned jobs, OutputSink& out) {
    auto q = p;
    q.seed = seed;
    auto points = topology::latency_vs_density(q, topology::Mode::baseline, jobs);
    const auto coop = topology::latency_vs_density(q, topology::Mode::cooperation, jobs);
    Summary summary;
    for (const std::vector<topology::DensityPoint>* set : {&std::as_const(points), &coop}) {
        std::vector<double> x;
        std::vector<double> y;
        for (const auto& pt : *set) {
            if (pt.latency.count > 0) {
                x.push_back(pt.lambda_bs);
                y.push_back(pt.latency.mean);
            }
        }
        const std::string mode = topology::to_string(set->front().mode);
        summary.emplace_back("spearman_" + mode, x.size() >= 2 ? stats::spearman(x, y) : kNan);
    }
    points.insert(points.end(), coop.begin(), coop.end());
    std::ostringstream os;
    topology::write_density_csv(os, points);
    out.write("densification.csv", os.str());
    return summary;
}

// grant_free, coordinated: slotted random access.

std::vector<double> slot_deadlines(unsigned frame_len, double slot_duration) {
    std::vector<double> d(frame_len);
    for (unsigned s = 0; s < frame_len; ++s) {
        d[s] = (s + 1) * slot_duration;
    }
    return d;
}

Summary access_summary(const access::AccessRunResult& res, double frame_time) {
    return {
        {"activated", static_cast<double>(res.activated())},
        {"decoded", static_cast<double>(res.decoded())},
        {"throughput_per_slot", res.throughput()},
        {"reliability_in_frame", res.cdf.reliability_at(frame_time)},
        {"drop_probability", res.cdf.drop_probability()},
    };
}

void write_access(const std::string& id, const access::AccessRunResult& res, unsigned frame_len,
                  double slot_duration, OutputSink& out) {
    std::ostringstream devices;
    access::write_device_csv(devices, res.records);
    out.write(id + ".csv", devices.str());
    out.write(id + "_reliability.csv", render_cdf(res.cdf, slot_deadlines(frame_len, slot_duration)));
}

access::GrantFreeConfig read_grant_free(ParamReader& r) {
    access::GrantFreeConfig c;
    c.n_devices = r.integer("n_devices", 20, 1, 1'000'000);
    c.activation_prob = r.probability("activation_prob", 0.1);
    c.k_replicas = static_cast<unsigned>(r.integer("k_replicas", 2, 1, 1024));
    c.receiver = read_receiver(r);
    c.frame_len = static_cast<unsigned>(r.integer("frame_len", 20, 1, 1'000'000));
    if (c.k_replicas > c.frame_len) {
        r.fail("k_replicas", "must not exceed frame_len");
    }
    c.slot_duration = r.positive("slot_duration_s", 1e-4);
    c.n_frames = r.integer("n_frames", 1000, 1, kMaxCount);
    c.record_devices = true;
    return c;
}

Summary exec_grant_free(const access::GrantFreeConfig& p, std::uint64_t seed, unsigned jobs, OutputSink& out) {
    auto c = p;
    c.seed = seed;
    const auto res = access::run_grant_free(c, jobs);
    write_access("grant_free", res, c.frame_len, c.slot_duration, out);
    return access_summary(res, c.frame_len * c.slot_duration);
}

struct CoordinatedParams {
    std::size_t n_devices = 0;
    unsigned k_replicas = 1;
    access::AssignStrategy strategy = access::AssignStrategy::orthogonal_first;
    access::CoordinatedConfig config;
};

CoordinatedParams read_coordinated(ParamReader& r) {
    CoordinatedParams p;
    p.n_devices = r.integer("n_devices", 20, 1, 1'000'000);
    p.config.activation_prob = r.probability("activation_prob", 0.3);
    p.k_replicas = static_cast<unsigned>(r.integer("k_replicas", 2, 1, 1024));
    p.strategy = r.choice("strategy", "orthogonal_first", {"orthogonal_first", "random"}) == "random"
                     ? access::AssignStrategy::random
                     : access::AssignStrategy::orthogonal_first;
    p.config.receiver = read_receiver(r);
    p.config.frame_len = static_cast<unsigned>(r.integer("frame_len", 40, 1, 1'000'000));
    if (p.k_replicas > p.config.frame_len) {
        r.fail("k_replicas", "must not exceed frame_len");
    }
    p.config.slot_duration = r.positive("slot_duration_s", 1e-4);
    p.config.n_frames = r.integer("n_frames", 1000, 1, kMaxCount);
    return p;
}

Summary exec_coordinated(const CoordinatedParams& p, std::uint64_t seed, unsigned jobs, OutputSink& out) {
    auto c = p.config;
    c.seed = derive_seed(seed, "run", 0);
    c.patterns = access::assign_patterns(p.n_devices, c.frame_len, p.k_replicas, p.strategy,
                                         derive_seed(seed, "assign", 0));
    const auto res = access::run_coordinated(c, jobs);
    write_access("coordinated", res, c.frame_len, c.slot_duration, out);
    return access_summary(res, c.frame_len * c.slot_duration);
}

// grant_based: request/grant/data chain.

access::GrantBasedConfig read_grant_based(ParamReader& r) {
    access::GrantBasedConfig c;
    c.chain = reliability::ProtocolChain(r.numbers("steps", {0.999, 0.999, 0.999}, 0.0, 1.0));
    const auto slots = r.integers("round_trip_slots", {1}, 1, 1'000'000);
    c.round_trip_slots.assign(slots.begin(), slots.end());
    if (slots.size() != 1 && slots.size() != c.chain.steps().size()) {
        r.fail("round_trip_slots", "needs one entry or one per step");
    }
    c.n_trials = r.integer("n_trials", 100000, 1, kMaxCount);
    c.slot_duration = r.positive("slot_duration_s", 1e-4);
    return c;
}

Summary exec_grant_based(const access::GrantBasedConfig& p, std::uint64_t seed, unsigned jobs, OutputSink& out) {
    auto c = p;
    c.seed = seed;
    const auto res = access::run_grant_based(c, jobs);
    std::vector<double> deadlines;
    unsigned elapsed = 0;
    for (std::size_t i = 0; i < c.chain.steps().size(); ++i) {
        elapsed += c.round_trip_slots.size() == 1 ? c.round_trip_slots[0] : c.round_trip_slots[i];
        deadlines.push_back(elapsed * c.slot_duration);
    }
    out.write("grant_based.csv", render_cdf(res.cdf, deadlines));
    return {
        {"chain_success_model", reliability::chain_success(c.chain)},
        {"success_ratio", static_cast<double>(res.successes) / static_cast<double>(c.n_trials)},
        {"latency_s", elapsed * c.slot_duration},
    };
}

// minislot: URLLC mini-slots preempting eMBB symbols.

minislot::LoadParams read_minislot(ParamReader& r) {
    minislot::LoadParams p;
    p.arrival_rate = r.number("arrival_rate_hz", 1000.0, 0.0, 1e7);
    const auto w = r.numbers("size_weights", {1.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 0.0, 1e9);
    if (w.size() != minislot::kMaxMiniSlot) {
        r.fail("size_weights", "needs exactly 6 weights (sizes 1 to 6 symbols)");
    }
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) {
        r.fail("size_weights", "needs at least one positive weight");
    }
    std::copy(w.begin(), w.end(), p.size_weights.begin());
    p.horizon_slots = r.integer("horizon_slots", 1000, 1, 100'000'000);
    p.control_prefix = static_cast<unsigned>(r.integer("control_prefix", 1, 1, minislot::kMaxMiniSlot));
    p.symbol_duration = r.positive("symbol_duration_s", 1.0 / 14000.0);
    const std::size_t largest = std::distance(
        w.begin(), std::find_if(w.rbegin(), w.rend(), [](double v) { return v > 0.0; }).base());
    if (largest > minislot::kSlotSymbols - p.control_prefix) {
        r.fail("size_weights", "mini-slots larger than the data part of a slot cannot be placed");
    }
    return p;
}

Summary exec_minislot(const minislot::LoadParams& p, std::uint64_t seed, unsigned, OutputSink& out) {
    auto q = p;
    q.seed = seed;
    const auto res = minislot::urllc_latency_cdf(q);
    std::ostringstream os;
    minislot::write_schedule_csv(os, res.schedule);
    out.write("minislot.csv", os.str());
    std::vector<double> deadlines;
    for (unsigned k = 1; k <= 4 * minislot::kSlotSymbols; ++k) {
        deadlines.push_back(k * q.symbol_duration);
    }
    out.write("minislot_reliability.csv", render_cdf(res.cdf, deadlines));
    return {
        {"arrivals", static_cast<double>(res.schedule.outcomes.size())},
        {"utilization", q.utilization()},
        {"embb_loss_fraction", res.schedule.embb_loss_fraction()},
        {"latency_p99_symbols", latency_quantile(res.cdf, 0.99) / q.symbol_duration},
    };
}

}  // namespace

const std::vector<Scenario>& registry() {
    static const std::vector<Scenario> scenarios = {
        make_scenario("latency_cdf", read_latency_cdf, exec_latency_cdf),
        make_scenario("frame_tradeoff", read_frame, exec_frame),
        make_scenario("simo_heatmap", read_simo, exec_simo),
        make_scenario("pd_interfaces", read_pd, exec_pd),
        make_scenario("densification", read_density, exec_density),
        make_scenario("grant_free", read_grant_free, exec_grant_free),
        make_scenario("coordinated", read_coordinated, exec_coordinated),
        make_scenario("grant_based", read_grant_based, exec_grant_based),
        make_scenario("minislot", read_minislot, exec_minislot),
    };
    return scenarios;
}

}  // namespace urllc::runner::detail
