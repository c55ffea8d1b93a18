#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace cdsa {

// SplitMix64 step: advances a 64-bit state and returns a well-mixed output.
// Used both as the per-stream generator and as the key-derivation hash, so
// every draw in a simulation is a pure function of (seed, derivation fields).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Hash a sequence of fields into a stream key. Order-sensitive.
inline std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> fields) {
    std::uint64_t s = seed;
    std::uint64_t key = splitmix64(s);
    for (std::uint64_t f : fields) {
        std::uint64_t t = f;
        key ^= splitmix64(t);
        key = splitmix64(key);
    }
    return key;
}

// Deterministic random stream. Cheap to construct, so simulations derive a
// fresh stream per (path, agent, iteration, purpose) instead of sharing one.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform on [0, 1), 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Box-Muller; consumes two uniforms per draw, keeps no cached state.
    double normal(double mean, double stddev) {
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

// Fixed purpose tags for key derivation.
namespace stream_tag {
inline constexpr std::uint64_t comp = 0x636f6d70ull;     // computational-gradient oracle
inline constexpr std::uint64_t learn = 0x6c65726eull;    // learning-gradient oracle
inline constexpr std::uint64_t dataset = 0x64617461ull;  // one-off dataset generation
inline constexpr std::uint64_t path = 0x70617468ull;     // Monte Carlo path seeds
}  // namespace stream_tag

}  // namespace cdsa
