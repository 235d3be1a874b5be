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

#include "ledgerfuzz/coverage.h"

#include <algorithm>

namespace ledgerfuzz {

CoverageMap::CoverageMap() : counters_(kCoverageSites, 0) {}

void CoverageMap::Record(std::uint64_t site) {
  const auto index = static_cast<std::uint32_t>(site % kCoverageSites);
  std::uint8_t& c = counters_[index];
  if (c == 0) touched_.push_back(index);
  if (c != 255) ++c;
}

Bytes CoverageMap::Signature() const {
  Bytes out(kCoverageSites, 0);
  for (std::uint32_t site : touched_) out[site] = static_cast<std::uint8_t>(BucketOf(counters_[site]));
  return out;
}

void CoverageMap::Clear() {
  for (std::uint32_t site : touched_) counters_[site] = 0;
  touched_.clear();
}

void CoverageMap::MergeFrom(const CoverageMap& other) {
  for (std::uint32_t site : other.touched_) {
    std::uint8_t& c = counters_[site];
    if (c == 0) touched_.push_back(site);
    c = std::max(c, other.counters_[site]);
  }
}

bool IsNewCoverage(CoverageMap& global, const CoverageMap& run) {
  const bool fresh = std::any_of(run.touched().begin(), run.touched().end(), [&](std::uint32_t site) {
    return BucketOf(run.counter(site)) > BucketOf(global.counter(site));
  });
  if (fresh) global.MergeFrom(run);
  return fresh;
}

std::uint32_t SiteFor(std::string_view name, std::uint64_t salt) {
  // FNV-1a, folded to 16 bits.
  std::uint64_t h = 0xcbf29ce484222325ULL ^ (salt * 0x100000001b3ULL);
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 32;
  h ^= h >> 16;
  return static_cast<std::uint32_t>(h % kCoverageSites);
}

}  // namespace ledgerfuzz
