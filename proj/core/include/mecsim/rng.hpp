#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mecsim {

using Rng = std::mt19937_64;

/// Expands a run seed into an independent named sub-stream seed, e.g.
/// derive_seed(seed, "round", t) for the rounding stream of slot t.
std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view stream, std::uint64_t index = 0);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace mecsim
