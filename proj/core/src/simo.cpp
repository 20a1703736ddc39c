#include "urllc/simo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "urllc/csv.hpp"
#include "urllc/error.hpp"
#include "urllc/parallel.hpp"
#include "urllc/seed.hpp"
#include "urllc/stats.hpp"

namespace urllc::simo {

using cplx = std::complex<double>;

void SimoChannel::validate() const {
    if (m_antennas < 1) {
        throw UsageError("m_antennas must be >= 1");
    }
    if (!(sigma >= 0.0 && sigma <= 1.0)) {
        throw UsageError("sigma must lie in [0, 1]");
    }
    if (!(interference_power >= 0.0) || !std::isfinite(interference_power)) {
        throw UsageError("interference_power must be finite and >= 0");
    }
}

double SerResult::half_width() const { return stats::binomial_half_width(errors, trials); }

namespace {

// CN(0, power): independent real and imaginary parts with variance power / 2.
class ComplexGaussian {
public:
    cplx operator()(Rng& rng, double power) {
        const double s = std::sqrt(power / 2.0);
        const double re = unit_(rng);
        const double im = unit_(rng);
        return {s * re, s * im};
    }

private:
    std::normal_distribution<double> unit_{0.0, 1.0};
};

void check_run(unsigned levels, std::uint64_t trials) {
    if (levels < 2) {
        throw UsageError("constellation size must be >= 2");
    }
    if (trials < 1) {
        throw UsageError("trials must be >= 1");
    }
}

template <class TrialFn>
SerResult run_chunked(std::uint64_t trials, std::uint64_t seed, std::string_view tag, unsigned jobs,
                      TrialFn trial) {
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<std::uint64_t> errors(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        Rng rng(derive_seed(seed, tag, c));
        const std::uint64_t begin = c * kChunkTrials;
        const std::uint64_t end = std::min(trials, begin + kChunkTrials);
        std::uint64_t e = 0;
        for (std::uint64_t t = begin; t < end; ++t) {
            e += trial(rng) ? 0 : 1;
        }
        errors[c] = e;
    });
    SerResult out;
    out.trials = trials;
    for (const auto e : errors) {
        out.errors += e;
    }
    return out;
}

}  // namespace

SerResult simulate_mrc_ser(const SimoChannel& channel, unsigned constellation_size,
                           std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
    channel.validate();
    check_run(constellation_size, trials);
    const unsigned levels = constellation_size;
    const unsigned m = channel.m_antennas;
    const double amp = std::sqrt(channel.snr.linear());
    // Unit average energy PAM: (2l - (L-1)) * d.
    const double spacing = std::sqrt(3.0 / (static_cast<double>(levels) * levels - 1.0));
    const double keep = std::sqrt(1.0 - channel.sigma * channel.sigma);
    const double sigma = channel.sigma;
    const double ipow = channel.interference_power;

    return run_chunked(trials, seed, "mrc", jobs, [&](Rng& rng) {
        ComplexGaussian cn;
        std::uniform_int_distribution<unsigned> pick(0, levels - 1);
        const unsigned sent = pick(rng);
        const double x = amp * spacing * (2.0 * sent - (levels - 1.0));
        cplx combined{0.0, 0.0};
        double gain = 0.0;
        for (unsigned a = 0; a < m; ++a) {
            const cplx h = cn(rng, 1.0);
            const cplx e = cn(rng, 1.0);
            const cplx z = cn(rng, 1.0);
            const cplx w = ipow > 0.0 ? cn(rng, ipow) : cplx{};
            const cplx h_est = keep * h + sigma * e;
            const cplx y = h * x + z + w;
            combined += std::conj(h_est) * y;
            gain += std::norm(h_est);
        }
        const double r = combined.real() / gain / (amp * spacing);
        const double idx = std::round((r + (levels - 1.0)) / 2.0);
        const auto detected = static_cast<unsigned>(std::clamp(idx, 0.0, levels - 1.0));
        return detected == sent;
    });
}

SerResult simulate_ed_ser(const SimoChannel& channel, unsigned energy_levels,
                          std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
    channel.validate();
    check_run(energy_levels, trials);
    const unsigned levels = energy_levels;
    const unsigned m = channel.m_antennas;
    const double step = 2.0 * channel.snr.linear() / (levels - 1.0);
    const double ipow = channel.interference_power;
    const double floor_energy = 1.0 + ipow;

    return run_chunked(trials, seed, "ed", jobs, [&](Rng& rng) {
        ComplexGaussian cn;
        std::uniform_int_distribution<unsigned> pick(0, levels - 1);
        const unsigned sent = pick(rng);
        const double amp = std::sqrt(step * sent);
        double energy = 0.0;
        for (unsigned a = 0; a < m; ++a) {
            const cplx h = cn(rng, 1.0);
            const cplx z = cn(rng, 1.0);
            const cplx w = ipow > 0.0 ? cn(rng, ipow) : cplx{};
            energy += std::norm(h * amp + z + w);
        }
        const double s = energy / m;
        // Expected statistic for level l is l * step + floor_energy.
        const double idx = std::round((s - floor_energy) / step);
        const auto detected = static_cast<unsigned>(std::clamp(idx, 0.0, levels - 1.0));
        return detected == sent;
    });
}

std::vector<HeatmapCell> ser_gain_heatmap(const HeatmapRequest& request, unsigned jobs) {
    if (request.snr_grid_db.empty() || request.sigma_grid.empty()) {
        throw UsageError("heatmap grids must be non-empty");
    }
    check_run(request.constellation_size, request.trials);
    const std::size_t n_sigma = request.sigma_grid.size();
    std::vector<HeatmapCell> cells(request.snr_grid_db.size() * n_sigma);
    parallel_for(cells.size(), jobs, [&](std::size_t i) {
        HeatmapCell& cell = cells[i];
        cell.snr_db = request.snr_grid_db[i / n_sigma];
        cell.sigma = request.sigma_grid[i % n_sigma];
        SimoChannel ch;
        ch.m_antennas = request.m_antennas;
        ch.snr = fbl::LinkSnr::from_db(cell.snr_db);
        ch.sigma = cell.sigma;
        ch.interference_power = request.interference_power;
        cell.mrc = simulate_mrc_ser(ch, request.constellation_size, request.trials,
                                    derive_seed(request.seed, "heatmap-mrc", i));
        cell.ed = simulate_ed_ser(ch, request.constellation_size, request.trials,
                                  derive_seed(request.seed, "heatmap-ed", i));
        cell.censored = cell.mrc.errors == 0 || cell.ed.errors == 0;
        const double bound = 1.0 / static_cast<double>(request.trials);
        const double mrc = cell.mrc.errors == 0 ? bound : cell.mrc.ser();
        const double ed = cell.ed.errors == 0 ? bound : cell.ed.ser();
        cell.gain_log10 = std::log10(mrc / ed);
    });
    return cells;
}

void write_heatmap_csv(std::ostream& out, std::span<const HeatmapCell> cells) {
    csv::Writer w(out);
    w.header({"snr_db", "sigma", "ser_mrc", "ser_ed", "gain_log10", "trials", "censored"});
    for (const auto& c : cells) {
        w.row({c.snr_db, c.sigma, c.mrc.ser(), c.ed.ser(), c.gain_log10, c.mrc.trials, c.censored});
    }
}

}  // namespace urllc::simo
