#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "urllc/fbl.hpp"

namespace urllc::simo {

/// M-antenna receiver observing y = h x + z + w, with unit-power noise z per antenna.
/// `sigma` degrades the channel estimate: h_est = sqrt(1 - sigma^2) h + sigma e.
struct SimoChannel {
    unsigned m_antennas = 128;
    fbl::LinkSnr snr = fbl::LinkSnr::from_linear(1.0);
    double sigma = 0.0;
    /// Power of the Gaussian interference term w per antenna. 0 disables it.
    double interference_power = 0.0;

    void validate() const;
};

struct SerResult {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;

    double ser() const noexcept {
        return trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials);
    }
    /// 95% normal-approximation half-width of ser().
    double half_width() const;
};

/// Trials per independently seeded chunk. Chunk c uses derive_seed(seed, tag, c), so
/// results do not depend on the number of workers.
inline constexpr std::uint64_t kChunkTrials = 4096;

/// Coherent maximum-ratio combining of an L-PAM symbol using the degraded estimate.
SerResult simulate_mrc_ser(const SimoChannel& channel, unsigned constellation_size,
                           std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

/// Non-coherent energy detection over L unipolar levels equally spaced in energy with
/// mean energy equal to the SNR. The channel estimate (and so sigma) is not used.
SerResult simulate_ed_ser(const SimoChannel& channel, unsigned energy_levels,
                          std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

struct HeatmapCell {
    double snr_db = 0.0;
    double sigma = 0.0;
    SerResult mrc;
    SerResult ed;
    /// log10(ser_mrc / ser_ed). Zero estimates are replaced by the resolution bound 1/trials.
    double gain_log10 = 0.0;
    /// True when either estimate observed zero errors.
    bool censored = false;
};

struct HeatmapRequest {
    std::vector<double> snr_grid_db;
    std::vector<double> sigma_grid;
    unsigned m_antennas = 128;
    unsigned constellation_size = 2;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double interference_power = 0.0;
};

/// One cell per (snr, sigma), snr-major order.
std::vector<HeatmapCell> ser_gain_heatmap(const HeatmapRequest& request, unsigned jobs = 1);

/// `snr_db,sigma,ser_mrc,ser_ed,gain_log10,trials,censored`.
void write_heatmap_csv(std::ostream& out, std::span<const HeatmapCell> cells);

}  // namespace urllc::simo
