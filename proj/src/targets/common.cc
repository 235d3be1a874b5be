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

#include <charconv>
#include <cstdint>

#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

std::string PackFields(ArgsView fields) {
  std::string out;
  for (const std::string& f : fields) {
    const auto n = static_cast<std::uint32_t>(f.size());
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<char>((n >> shift) & 0xff));
    out += f;
  }
  return out;
}

std::optional<Args> UnpackFields(std::string_view packed) {
  Args out;
  while (!packed.empty()) {
    if (packed.size() < 4) return std::nullopt;
    std::uint32_t n = 0;
    for (int i = 0; i < 4; ++i) n = (n << 8) | static_cast<unsigned char>(packed[i]);
    packed.remove_prefix(4);
    if (packed.size() < n) return std::nullopt;
    out.emplace_back(packed.substr(0, n));
    packed.remove_prefix(n);
  }
  return out;
}

std::optional<std::int64_t> ParseDecimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  std::uint64_t magnitude = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), magnitude);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  constexpr std::uint64_t kMaxPositive = static_cast<std::uint64_t>(INT64_MAX);
  if (negative) {
    if (magnitude > kMaxPositive + 1) return std::nullopt;
    return magnitude == kMaxPositive + 1 ? INT64_MIN : -static_cast<std::int64_t>(magnitude);
  }
  if (magnitude > kMaxPositive) return std::nullopt;
  return static_cast<std::int64_t>(magnitude);
}

std::vector<std::string> TargetNames() { return {"example01", "drm", "smallbank", "marbles", "foodtrace"}; }

std::optional<TargetSpec> FindTarget(std::string_view name) {
  if (name == "example01") return TargetExample01();
  if (name == "drm") return TargetDrm();
  if (name == "smallbank") return TargetSmallbank();
  if (name == "marbles") return TargetMarbles();
  if (name == "foodtrace") return TargetFoodtrace();
  return std::nullopt;
}

}  // namespace ledgerfuzz
