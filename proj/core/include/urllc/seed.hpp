#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace urllc {

/// Engine used by every simulator. mt19937_64 output is fixed by the standard.
using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// 64-bit FNV-1a over the bytes of `text`.
constexpr std::uint64_t fnv1a64(std::string_view text,
                                std::uint64_t hash = 0xCBF29CE484222325ULL) noexcept {
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

/// Child seed for stream `index` under `tag`: mix64(mix64(master ^ fnv1a64(tag)) + index).
/// Stable across platforms and worker counts; documented so other tools can reproduce runs.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t index) noexcept {
    return mix64(mix64(master ^ fnv1a64(tag)) + index);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) + index);
}

}  // namespace urllc
