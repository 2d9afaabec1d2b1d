#include "gaitbench/rng.hpp"

#include <cmath>
#include <numbers>

namespace gaitbench {

double Rng::gaussian() {
    // Guard against log(0).
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ splitmix64(a + 0x1ULL));
    s = splitmix64(s ^ splitmix64(b + 0x2ULL));
    s = splitmix64(s ^ splitmix64(c + 0x3ULL));
    return s;
}

}  // namespace gaitbench
