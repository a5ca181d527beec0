#pragma once

#include <cstdint>
#include <random>

namespace pctsim {

// Stream tags for deriving independent generators from one run seed. Values
// are arbitrary but frozen: changing them changes every sampled world.
enum class StreamTag : std::uint64_t {
    World = 0x5741u,
    AgentX = 0x4158u,
    AgentY = 0x4159u,
    Bootstrap = 0x4253u,
};

// splitmix64-style mixing so that (seed, index) pairs and stream tags give
// well-separated generator states.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Deterministic uniform generator. The uint64 -> double mapping is fixed
// here (not delegated to std::uniform_real_distribution) so identical seeds
// give identical streams on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer in [0, n), n > 0. Rejection-free modulo is acceptable
    // here: n is always tiny relative to 2^64, so bias is ~n / 2^64.
    std::uint64_t uniform_index(std::uint64_t n) { return engine_() % n; }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace pctsim
