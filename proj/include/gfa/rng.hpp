// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace gfa {

// SplitMix64 (Steele, Lea, Flood 2014). Small state, passes BigCrush, and the
// stateless hash form gives us stable sub-stream derivation: every sampler in
// the pipeline seeds itself with hash(parent_seed, index) so results do not
// depend on thread count or call order.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t hash(std::uint64_t key, std::uint64_t data) noexcept {
        std::uint64_t z = key ^ data;
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Deterministic RNG facade used by all sampling code. Distributions are
// implemented here (not via <random>) so streams are reproducible across
// standard libraries, not just across runs.
class Rng {
public:
    explicit constexpr Rng(std::uint64_t seed) noexcept : gen_(seed) {}

    constexpr std::uint64_t next_u64() noexcept { return gen_.next(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    constexpr double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in [0, n) via Lemire's multiply-shift.
    constexpr std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    SplitMix64 gen_;
};

// FNV-1a 64-bit. Content keys for grids and meshes; stable across runs.
class Fnv1a64 {
public:
    constexpr void update(const void* data, std::size_t len) noexcept {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ULL;
        }
    }

    constexpr void update_u64(std::uint64_t v) noexcept {
        for (int i = 0; i < 8; ++i) {
            hash_ ^= (v >> (8 * i)) & 0xffULL;
            hash_ *= 0x100000001b3ULL;
        }
    }

    constexpr std::uint64_t digest() const noexcept { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace gfa
