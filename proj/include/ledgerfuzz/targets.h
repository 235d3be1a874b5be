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

// Built-in fuzz targets.
//
//   example01  two-account transfer with bounds checks; no known bug
//   drm        accepts an empty record id on write, treats it as missing on read
//   smallbank  32-bit balances with wrapping deposits
//   marbles    marble size is stored in canonical decimal form ("00" -> "0")
//   foodtrace  records are stored through an HTML-escaping text encoder and
//              read back without unescaping ('>' -> ">")

#ifndef LEDGERFUZZ_TARGETS_H_
#define LEDGERFUZZ_TARGETS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ledgerfuzz/contract.h"
#include "ledgerfuzz/corpus_store.h"
#include "ledgerfuzz/harness.h"

namespace ledgerfuzz {

// A known input that triggers a planted bug.
struct Witness {
  std::string name;
  std::size_t group = 0;
  Args params;
  CrashKind kind = CrashKind::kAbort;
  std::string message_fragment;

  Bytes Encoded() const { return Encode(group, params); }
};

// A class of crash the target is expected to produce under fuzzing.
struct ExpectedBug {
  CrashKind kind;
  std::string message_fragment;
};

struct TargetSpec {
  Contract contract;
  Args fixture;  // Init arguments
  std::vector<TestGroup> groups;
  std::vector<UnitCase> seeds;
  std::vector<std::string> literals;  // dictionary source
  std::vector<ExpectedBug> expected_bugs;
  std::vector<Witness> witnesses;

  const std::string& name() const { return contract.name; }
};

TargetSpec TargetExample01();
TargetSpec TargetDrm();
TargetSpec TargetSmallbank();
TargetSpec TargetMarbles();
TargetSpec TargetFoodtrace();

std::vector<std::string> TargetNames();
std::optional<TargetSpec> FindTarget(std::string_view name);

// Length-prefixed field list used by several targets to store records.
std::string PackFields(ArgsView fields);
std::optional<Args> UnpackFields(std::string_view packed);

// Strict decimal parsing: optional sign, at least one digit, no other
// characters, no overflow.
std::optional<std::int64_t> ParseDecimal(std::string_view text);

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_TARGETS_H_
