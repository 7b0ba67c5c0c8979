#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace radperturb {

// All randomness in the library is counter-based: a value is a pure function
// of (key, counter). There are no shared generator states, so parallel
// execution cannot change results. The mixing function is SplitMix64, pinned
// here so that seed -> output is stable across platforms and releases.

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t x) {
  x += kGoldenGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Stable combination of a seed with a stream/index tag.
constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + kGoldenGamma));
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b,
                                     std::uint64_t c) {
  return hash_combine(hash_combine(a, b), c);
}

/// Keyed counter generator: uniform and normal variates addressable by index.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix64(seed)) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter));
  }

  /// Uniform draw in [0, 1).
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw (Box-Muller, cosine branch).
  double normal(std::uint64_t counter) const {
    const double u1 =
        static_cast<double>((bits(2 * counter) >> 11) + 1) * 0x1.0p-53;
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
};

/// Sequential convenience wrapper over CounterRng for shuffles and draws
/// where a natural counter does not exist.
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed) : rng_(seed) {}

  double next_uniform() { return rng_.uniform(counter_++); }

  /// Integer in [0, bound). bound must be > 0.
  std::size_t next_bounded(std::size_t bound) {
    auto draw = static_cast<std::size_t>(next_uniform() * static_cast<double>(bound));
    return draw < bound ? draw : bound - 1;
  }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

/// Deterministic partial Fisher-Yates: after the call, the first `take`
/// elements of `items` are a uniform sample without replacement.
template <typename T>
void partial_shuffle(std::vector<T>& items, std::size_t take,
                     SequentialRng& rng) {
  if (items.empty()) return;
  if (take > items.size()) take = items.size();
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.next_bounded(items.size() - i);
    std::swap(items[i], items[j]);
  }
}

}  // namespace radperturb
