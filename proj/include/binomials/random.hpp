#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace binomials {

/// The only generator used by randomized stages. mt19937_64 output is fixed by
/// the standard; the conversions below avoid the implementation-defined
/// distributions so results match across standard libraries.
using Rng = std::mt19937_64;

inline constexpr const char* kRngName = "mt19937_64";

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform index in [0, n). n must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Fisher-Yates shuffle driven by uniform_index.
template <typename T>
void portable_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = uniform_index(rng, i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace binomials
