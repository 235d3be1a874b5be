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

#include "ledgerfuzz/mutation.h"

#include <charconv>

namespace ledgerfuzz {

std::string_view MutatorName(MutatorId id) {
  static constexpr std::array<std::string_view, kMutatorCount> kNames = {
      "Remove a range of bytes",
      "Insert a range of random bytes",
      "Duplicate a range of bytes",
      "Copy a range of bytes",
      "Bit flip",
      "Set a byte to a random value",
      "Swap 2 bytes",
      "Add/subtract from a byte",
      "Add/subtract from a uint16",
      "Add/subtract from a uint32",
      "Add/subtract from a uint64",
      "Replace a byte with an interesting value",
      "Replace an uint16 with an interesting value",
      "Replace an uint32 with an interesting value",
      "Replace an ascii digit with another digit",
      "Replace a multi-byte ASCII number with another number",
      "Splice another input",
      "Insert a part of another input",
      "Insert a literal",
      "Replace with literal",
  };
  const int i = ToInt(id);
  if (i < 0 || i >= kMutatorCount) throw InvalidMutator();
  return kNames[i];
}

bool Dictionary::Add(std::string_view literal) {
  if (literal.empty() || literal.size() > kMaxLiteralLen) return false;
  Bytes b = ToBytes(literal);
  if (!seen_.insert(b).second) return false;
  literals_.push_back(std::move(b));
  return true;
}

MutatorConfig MutatorConfig::Default() {
  MutatorConfig c;
  for (int i = 0; i < kMutatorCount; ++i) {
    if (i == 1 || i == 19) continue;
    c.enabled.push_back(MutatorFromInt(i));
  }
  return c;
}

MutatorConfig MutatorConfig::All() {
  MutatorConfig c;
  for (int i = 0; i < kMutatorCount; ++i) c.enabled.push_back(MutatorFromInt(i));
  return c;
}

MutatorConfig MutatorConfig::Only(MutatorId id) {
  MutatorConfig c;
  c.enabled = {id};
  return c;
}

void MutatorConfig::Validate() const {
  if (enabled.empty()) throw std::invalid_argument("no mutation operators enabled");
  if (max_input_len < 1) throw std::invalid_argument("max input length must be at least 1");
  if (stack_max < 1) throw std::invalid_argument("stack max must be at least 1");
}

std::vector<MutatorId> ParseMutatorList(std::string_view text) {
  if (text == "all") return MutatorConfig::All().enabled;
  std::set<int> ids;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    int value = -1;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("malformed mutator list entry '" + std::string(item) + "'");
    }
    ids.insert(ToInt(MutatorFromInt(value)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw std::invalid_argument("trailing comma in mutator list");
  }
  if (ids.empty()) throw std::invalid_argument("empty mutator list");
  std::vector<MutatorId> out;
  for (int id : ids) out.push_back(MutatorFromInt(id));
  return out;
}

std::string FormatMutatorList(const std::vector<MutatorId>& ids) {
  if (ids.size() == static_cast<std::size_t>(kMutatorCount)) return "all";
  std::string out;
  for (MutatorId id : ids) {
    if (!out.empty()) out += ',';
    out += std::to_string(ToInt(id));
  }
  return out;
}

}  // namespace ledgerfuzz
