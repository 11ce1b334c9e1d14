#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mpcbench {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seed splitting rule: child = mix64(parent ^ fnv1a(label)). Every random
/// consumer derives its stream from the master seed through a fixed label path,
/// so adding a consumer never perturbs the others.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view label) {
    return mix64(parent ^ fnv1a(label));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return mix64(parent ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

using Rng = std::mt19937_64;

}  // namespace mpcbench
