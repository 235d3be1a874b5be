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

// Hit-count coverage over a fixed table of instrumentation sites.
//
// Contracts report sites explicitly through their stub handle; the framework
// adds one site per dispatched function and one per state access. Counters
// saturate at 255 and are compared in eight hit-count classes:
//
//   class:  1   2   3   4     5      6       7        8
//   hits:   1   2   3   4-7   8-15   16-31   32-127   128-255
//
// A global map keeps, per site, the largest counter ever merged into it. A run
// brings new coverage when one of its sites lands in a higher class than the
// global map has seen for that site.

#ifndef LEDGERFUZZ_COVERAGE_H_
#define LEDGERFUZZ_COVERAGE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ledgerfuzz/bytes.h"

namespace ledgerfuzz {

inline constexpr std::size_t kCoverageSites = 65536;

// Hit-count class of a counter: 0 for never hit, otherwise 1..8.
constexpr int BucketOf(std::uint8_t count) {
  if (count == 0) return 0;
  if (count <= 3) return count;
  if (count <= 7) return 4;
  if (count <= 15) return 5;
  if (count <= 31) return 6;
  if (count <= 127) return 7;
  return 8;
}

class CoverageMap {
 public:
  CoverageMap();

  // Saturating increment of counters[site mod 65536].
  void Record(std::uint64_t site);

  std::uint8_t counter(std::uint64_t site) const { return counters_[site % kCoverageSites]; }

  // Number of sites with a non-zero counter.
  std::size_t CoverCount() const { return touched_.size(); }

  // Sites with a non-zero counter, in first-hit order.
  std::span<const std::uint32_t> touched() const { return touched_; }

  // Bucket class of every site, 65536 bytes.
  Bytes Signature() const;

  void Clear();

  // Raises every counter to max(own, other).
  void MergeFrom(const CoverageMap& other);

 private:
  std::vector<std::uint8_t> counters_;
  std::vector<std::uint32_t> touched_;
};

// True iff some site of `run` is in a higher bucket class than anything
// `global` has seen for it. When true, `run` is merged into `global`.
bool IsNewCoverage(CoverageMap& global, const CoverageMap& run);

// Site id derived from a name, used for framework-generated sites.
std::uint32_t SiteFor(std::string_view name, std::uint64_t salt = 0);

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_COVERAGE_H_
