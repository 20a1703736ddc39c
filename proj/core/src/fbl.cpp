#include "urllc/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "urllc/error.hpp"

namespace urllc::fbl {

LinkSnr LinkSnr::from_linear(double snr) {
    if (!(snr > 0.0) || !std::isfinite(snr)) {
        throw DomainError("snr must be a finite positive linear ratio");
    }
    return LinkSnr(snr);
}

LinkSnr LinkSnr::from_db(double snr_db) {
    if (!std::isfinite(snr_db)) {
        throw DomainError("snr in dB must be finite");
    }
    return from_linear(std::pow(10.0, snr_db / 10.0));
}

double LinkSnr::db() const noexcept { return 10.0 * std::log10(snr_); }

void CodeSpec::validate() const {
    if (n < 1 || k_bits < 1) {
        throw UsageError("blocklength and payload must be at least 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw UsageError("epsilon must lie in (0, 1)");
    }
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("q_inverse: argument must lie in (0, 1)");
    }
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * epsilon);
}

double awgn_capacity(LinkSnr snr) { return std::log2(1.0 + snr.linear()); }

double awgn_dispersion(LinkSnr snr) {
    const double s = snr.linear();
    constexpr double log2e = std::numbers::log2e;
    // s(s+2)/(s+1)^2 == 1 - 1/(s+1)^2, the latter loses precision for tiny s.
    return s * (s + 2.0) / ((s + 1.0) * (s + 1.0)) * log2e * log2e;
}

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw UsageError("epsilon must lie in (0, 1)");
    }
}

// n * R*(n) without the zero floor, so the bracketing predicate stays well defined.
double bits_at(std::uint64_t n, double capacity, double dispersion, double q_inv) {
    const double nd = static_cast<double>(n);
    return nd * capacity - std::sqrt(nd * dispersion) * q_inv + 0.5 * std::log2(nd);
}

}  // namespace

double max_coding_rate(std::uint64_t n, double epsilon, LinkSnr snr) {
    if (n < 1) {
        throw UsageError("blocklength must be at least 1");
    }
    check_epsilon(epsilon);
    const double nd = static_cast<double>(n);
    const double rate = awgn_capacity(snr) - std::sqrt(awgn_dispersion(snr) / nd) * q_inverse(epsilon) +
                        std::log2(nd) / (2.0 * nd);
    return std::max(0.0, rate);
}

std::uint64_t min_blocklength(std::uint64_t k_bits, double epsilon, LinkSnr snr) {
    CodeSpec{1, k_bits, epsilon}.validate();
    const double capacity = awgn_capacity(snr);
    const double dispersion = awgn_dispersion(snr);
    const double q_inv = q_inverse(epsilon);
    const double target = static_cast<double>(k_bits);
    const auto enough = [&](std::uint64_t n) { return bits_at(n, capacity, dispersion, q_inv) >= target; };

    if (enough(1)) {
        return 1;
    }
    std::uint64_t lo = 1;  // !enough(lo)
    std::uint64_t hi = 2;
    while (!enough(hi)) {
        if (hi > (std::numeric_limits<std::uint64_t>::max() >> 2)) {
            throw DomainError("min_blocklength: capacity too small for the requested payload");
        }
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (enough(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double error_prob(std::uint64_t n, std::uint64_t k_bits, LinkSnr snr) {
    if (n < 1 || k_bits < 1) {
        throw UsageError("blocklength and payload must be at least 1");
    }
    const double nd = static_cast<double>(n);
    const double margin = awgn_capacity(snr) - static_cast<double>(k_bits) / nd + std::log2(nd) / (2.0 * nd);
    const double eps = q_function(margin * std::sqrt(nd / awgn_dispersion(snr)));
    return std::clamp(eps, std::numeric_limits<double>::denorm_min(), std::nextafter(1.0, 0.0));
}

}  // namespace urllc::fbl
