#pragma once

#include <cstdint>
#include <random>

namespace gaitbench {

// All synthetic randomness flows through mt19937_64 plus an explicit
// Box-Muller transform, so streams are reproducible across standard
// library implementations. Algorithm id: "mt19937_64/box-muller".
inline constexpr const char* kRngAlgorithmId = "mt19937_64/box-muller";

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (one draw per call, cosine branch).
    double gaussian();

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

// SplitMix64-style mixing used to derive independent per-entity seeds from
// the top-level seed, so generation order never affects any stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

}  // namespace gaitbench
