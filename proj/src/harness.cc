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

#include "ledgerfuzz/harness.h"

#include <array>
#include <cstdio>
#include <set>

namespace ledgerfuzz {

std::optional<DecodedInput> Decode(ByteView raw, std::span<const TestGroup> groups) {
  if (raw.empty() || groups.empty()) return std::nullopt;
  DecodedInput out;
  out.group = raw[0] % groups.size();
  const std::size_t arity = groups[out.group].arity;
  std::size_t pos = 1;
  while (out.params.size() < arity && pos < raw.size()) {
    std::size_t len = raw[pos];
    if (pos + 1 < raw.size()) {
      len = (len << 8) | raw[pos + 1];
      pos += 2;
    } else {
      // A lone length byte: nothing follows, the parameter is empty.
      len = 0;
      pos += 1;
    }
    const std::size_t take = std::min(len, raw.size() - pos);
    out.params.emplace_back(reinterpret_cast<const char*>(raw.data() + pos), take);
    pos += take;
  }
  out.params.resize(arity);
  return out;
}

Bytes Encode(std::size_t group, ArgsView params) {
  if (group > 0xff) throw std::invalid_argument("group index does not fit in one byte");
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(group));
  for (const std::string& p : params) {
    if (p.size() > kMaxParamLen) throw std::invalid_argument("parameter longer than 65535 bytes");
    out.push_back(static_cast<std::uint8_t>(p.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(p.size() & 0xff));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

GroupResult RunGroup(MockLedger& ledger, const Contract& contract, const TestGroup& group, ArgsView params,
                     TxIdSource& ids, const ExecHooks& hooks) {
  GroupResult result;
  Args publish{group.publish_fn};
  publish.insert(publish.end(), params.begin(), params.end());
  if (!ledger.MockInvoke(ids.Next(), std::move(publish), contract, hooks).ok()) return result;

  const std::string key = group.key_index < params.size() ? params[group.key_index] : std::string();
  ContractResponse query = ledger.MockInvoke(ids.Next(), {group.query_fn, key}, contract, hooks);
  if (!query.ok()) {
    result.verdict = HarnessVerdict::kSuspect;
    result.query_error = query.message;
    return result;
  }
  result.mismatch = group.compare(params, query.payload);
  if (result.mismatch) result.verdict = HarnessVerdict::kSuspect;
  return result;
}

std::string MismatchMessage(const TestGroup& group, const GroupResult& result) {
  std::string msg = group.publish_fn + " Failed: " + group.name + " group, ";
  if (result.query_error) {
    msg += group.query_fn + " cannot find the published record";
  } else if (result.mismatch) {
    msg += "field " + result.mismatch->field + " differs after query";
  } else {
    msg += "no mismatch";
  }
  return msg;
}

std::string MismatchDetail(const TestGroup& group, ArgsView params, const GroupResult& result) {
  std::string out = "group: " + group.name + "\npublished:";
  for (const std::string& p : params) out += " " + Quote(p);
  out += "\n";
  if (result.query_error) out += "query error: " + *result.query_error + "\n";
  if (result.mismatch) {
    out += "field: " + result.mismatch->field + "\n";
    out += "published value: " + Quote(result.mismatch->published) + "\n";
    out += "queried value: " + Quote(result.mismatch->queried) + "\n";
  }
  return out;
}

std::string RandomParam(ParamKind kind, Rng& rng) {
  static constexpr std::array<std::string_view, 12> kWords = {
      "NuoMi", "MiGao", "Shanxi", "Shaanxi", "transport", "alice", "bob", "blue", "red", "\xE7\xB3\xAF\xE7\xB1\xB3",
      "\xE5\x8C\x97\xE4\xBA\xAC", "Road transport"};
  if (kind == ParamKind::kAny) kind = static_cast<ParamKind>(1 + rng.Below(4));
  switch (kind) {
    case ParamKind::kId: {
      std::string id;
      if (rng.Coin()) id.push_back(static_cast<char>('A' + rng.Below(26)));
      const auto n = rng.Below(1000);
      std::string digits = std::to_string(n);
      if (id.empty()) digits.insert(0, 3 - std::min<std::size_t>(3, digits.size()), '0');
      return id + digits;
    }
    case ParamKind::kNumber:
      return std::to_string(rng.Below(10000));
    case ParamKind::kWord:
      return std::string(kWords[rng.Below(kWords.size())]);
    case ParamKind::kDate: {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "20%02d-%02d-%02d", static_cast<int>(10 + rng.Below(20)),
                    static_cast<int>(1 + rng.Below(12)), static_cast<int>(1 + rng.Below(28)));
      return buf;
    }
    case ParamKind::kAny:
      break;
  }
  return {};
}

std::vector<Bytes> GenSeedCorpus(std::span<const TestGroup> groups, std::span<const UnitCase> unit_cases, Rng& rng,
                                 std::size_t n_random) {
  std::vector<Bytes> seeds;
  std::set<Bytes> seen;
  const auto push = [&](Bytes b) {
    if (seen.insert(b).second) seeds.push_back(std::move(b));
  };

  for (const UnitCase& uc : unit_cases) {
    if (uc.call.empty()) throw ConfigError("unit case " + uc.name + " has no function name");
    std::optional<std::size_t> index;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].publish_fn == uc.call.front()) index = g;
    }
    if (!index) throw ConfigError("unit case " + uc.name + " calls " + uc.call.front() + ", which no group publishes");
    const std::size_t nparams = uc.call.size() - 1;
    if (nparams != groups[*index].arity) {
      throw ConfigError("unit case " + uc.name + " passes " + std::to_string(nparams) + " params, group " +
                        groups[*index].name + " takes " + std::to_string(groups[*index].arity));
    }
    push(Encode(*index, ArgsView(uc.call).subspan(1)));
  }

  if (groups.empty()) return seeds;
  for (std::size_t i = 0; i < n_random; ++i) {
    const std::size_t g = rng.Below(groups.size());
    const TestGroup& group = groups[g];
    Args params;
    for (std::size_t p = 0; p < group.arity; ++p) {
      params.push_back(RandomParam(p < group.kinds.size() ? group.kinds[p] : ParamKind::kAny, rng));
    }
    push(Encode(g, params));
  }
  return seeds;
}

}  // namespace ledgerfuzz
