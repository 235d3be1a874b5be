// Copyright 2026 The ledgerfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEDGERFUZZ_RNG_H_
#define LEDGERFUZZ_RNG_H_

#include <concepts>
#include <cstdint>
#include <random>

namespace ledgerfuzz {

// Anything the mutation engine and schedulers can draw from. Below(n) must
// return a value in [0, n) for n > 0.
template <typename R>
concept RandomSource = requires(R& r, std::uint64_t n) {
  { r.Next() } -> std::convertible_to<std::uint64_t>;
  { r.Below(n) } -> std::convertible_to<std::uint64_t>;
};

// Deterministic random stream. The draw helpers are written out by hand
// instead of using <random> distributions so that a seed produces the same
// stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, n), rejection sampled. n == 0 returns 0.
  std::uint64_t Below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [lo, hi].
  std::int64_t Between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(Below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool Coin() { return (engine_() >> 63) != 0; }

  // Uniform in [0, 1).
  double Unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Derives an independent stream, e.g. one per worker.
  Rng Fork(std::uint64_t salt) { return Rng(Next() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

 private:
  std::mt19937_64 engine_;
};

static_assert(RandomSource<Rng>);

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_RNG_H_
