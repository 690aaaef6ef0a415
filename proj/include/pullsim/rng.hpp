#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pullsim {

// All randomness flows through these helpers instead of <random>
// distributions.  libstdc++ does not promise bit-identical distribution
// output across versions, and reproducibility down to the byte is part of
// the output contract, so the float/int mappings are spelled out here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform draw strictly inside (0, 1]; safe to take log of.
    double uniform01_open() { return 1.0 - uniform01(); }

    // Exponential with the given rate; rate must be positive.
    double exponential(double rate) { return -std::log(uniform01_open()) / rate; }

    // Uniform integer in [0, n); n must be positive.  Rejection-free modulo
    // of a 53-bit draw: bias is < 2^-40 for any n < 2^13 and < 2^-20 in
    // general for the n <= 2^32 used here, far below statistical noise.
    std::size_t uniform_index(std::size_t n) {
        auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1; // u*n can round up to n when n is a power of two
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Derive a stream for replication r of a scenario, spaced so that
    // related seeds do not collide (splitmix64 finalizer).
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace pullsim
