#pragma once

#include <cstdint>

#include "alloy/lattice.hpp"

namespace alloy {

// Counter-based randomness: every draw is a pure function of its key, so
// results do not depend on evaluation order or thread count.

inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finaliser
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix64(h ^ mix64(v)); }

// Uniform in the open interval (0, 1).
inline double to_unit(std::uint64_t x) { return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53; }

inline std::uint64_t site_key(std::uint64_t seed, const Site& x) {
    std::uint64_t h = combine(seed, x.size());
    for (int c : x) h = combine(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
    return h;
}

// Seed of Monte Carlo trial number `trial`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return combine(combine(seed, 0x747269616cULL), trial);
}

// Sequential stream keyed by a seed; draw i is mix of (key, i).
class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    std::uint64_t next_u64() { return combine(key_, counter_++); }
    double uniform() { return to_unit(next_u64()); }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace alloy
