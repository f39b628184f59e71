// Copyright 2026 The cntqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CNTQC_RNG_HPP
#define CNTQC_RNG_HPP

#include <cstdint>
#include <stdexcept>

namespace cntqc {

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}
}  // namespace detail

/// Counter-based generator: the n-th output of stream (seed, stream) is a pure
/// function of (seed, stream, n), so concurrent consumers that own disjoint
/// streams draw identical values regardless of evaluation order. The per-stream
/// sequence is splitmix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(detail::mix64(seed + detail::kGolden) ^
              detail::mix64(stream * 0xD2B74407B1CE6E93ull + 0x8BB84B93962EACC9ull)) {}

  std::uint64_t next_u64() { return detail::mix64(base_ + (++counter_) * detail::kGolden); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Binomial draw as a sum of Bernoulli trials. Exactly n draws are consumed,
  /// keeping the stream position independent of the outcome.
  std::uint64_t binomial(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("rng: binomial p must be in [0, 1]");
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i) hits += bernoulli(p) ? 1 : 0;
    return hits;
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace cntqc

#endif  // CNTQC_RNG_HPP
