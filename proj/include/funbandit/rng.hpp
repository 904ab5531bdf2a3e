// Copyright 2026 The funbandit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FUNBANDIT_RNG_HPP
#define FUNBANDIT_RNG_HPP

#include <cstdint>

namespace funbandit {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood / Vigna). Fixed constants so
// sample streams are identical on every platform.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Combine two 64-bit values into one well-mixed seed. Order-sensitive.
inline constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return detail::mix64(a + detail::kGolden * (b + 1));
}

/// Counter-based splitmix64 stream. A stream is a pure function of
/// (seed, counter), so equal seeds replay identical sample sequences and
/// copies fork the stream at the current position.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed), counter_(0) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return detail::mix64(seed_ + counter_ * detail::kGolden);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Independent stream derived from (seed, label). Streams with distinct
  /// labels never overlap regardless of how far either is advanced.
  Rng substream(std::uint64_t label) const noexcept {
    return Rng(hash_combine(seed_, label));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

/// Seed for one Monte Carlo trial, mixed from (master seed, budget, trial
/// index). This mapping is part of the output contract: reports must not
/// depend on worker count or execution order.
inline constexpr std::uint64_t trial_seed(std::uint64_t master_seed,
                                          std::uint64_t budget,
                                          std::uint64_t trial_index) {
  return hash_combine(hash_combine(master_seed, budget), trial_index);
}

}  // namespace funbandit

#endif  // FUNBANDIT_RNG_HPP
