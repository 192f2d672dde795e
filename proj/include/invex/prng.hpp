#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace invex {

// Deterministic, platform-independent random stream: xoshiro256** with the
// state expanded from a 64-bit seed via splitmix64. Uniform doubles take the
// top 53 bits; normals use the Marsaglia polar method (second variate of each
// pair discarded so the stream position is a pure function of the call count
// and rejection history). The exact algorithm is part of the file-format
// contract: identical seeds reproduce identical datasets and traces.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via the polar method.
    double normal() {
        while (true) {
            const double u = 2.0 * uniform01() - 1.0;
            const double v = 2.0 * uniform01() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // Independent child stream for sample `index`; the derivation depends only
    // on the parent's seed, so results are schedule-independent.
    Prng split(std::uint64_t index) const {
        std::uint64_t x = seed_;
        std::uint64_t mixed = splitmix64(x) ^ (index + 0x9e3779b97f4a7c15ULL);
        return Prng(splitmix64(mixed));
    }

    std::uint64_t seed() const { return seed_; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_;
};

}  // namespace invex
