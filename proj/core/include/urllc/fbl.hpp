#pragma once

#include <cstdint>

namespace urllc::fbl {

/// Linear SNR of a complex AWGN link. Always strictly positive.
class LinkSnr {
public:
    static LinkSnr from_linear(double snr);
    static LinkSnr from_db(double snr_db);

    double linear() const noexcept { return snr_; }
    double db() const noexcept;

private:
    explicit LinkSnr(double snr) : snr_(snr) {}
    double snr_;
};

/// Blocklength n (channel uses), payload k_bits and target error probability.
struct CodeSpec {
    std::uint64_t n = 1;
    std::uint64_t k_bits = 1;
    double epsilon = 0.5;

    /// Throws UsageError unless n >= 1, k_bits >= 1 and 0 < epsilon < 1.
    void validate() const;
};

/// Gaussian tail Q(x) = P(N(0,1) > x).
double q_function(double x);

/// Inverse of q_function on (0, 1). Throws DomainError outside that range.
double q_inverse(double epsilon);

/// log2(1 + snr), bits per complex channel use.
double awgn_capacity(LinkSnr snr);

/// snr(snr + 2) / (snr + 1)^2 * (log2 e)^2, bits^2 per channel use.
double awgn_dispersion(LinkSnr snr);

/// Normal approximation of the maximal coding rate at blocklength n and error epsilon:
///   C - sqrt(V/n) Q^-1(epsilon) + log2(n) / (2n), floored at zero.
double max_coding_rate(std::uint64_t n, double epsilon, LinkSnr snr);

/// Smallest n such that n * max_coding_rate(n) >= k_bits. Exponential bracketing followed
/// by integer bisection; exact whenever n * R*(n) is non-decreasing in n, which holds for
/// every capacity above roughly 1e-3 bit per channel use.
std::uint64_t min_blocklength(std::uint64_t k_bits, double epsilon, LinkSnr snr);

/// Error probability predicted by the normal approximation when k_bits are sent in n
/// channel uses. Clamped to the open interval (0, 1).
double error_prob(std::uint64_t n, std::uint64_t k_bits, LinkSnr snr);

}  // namespace urllc::fbl
