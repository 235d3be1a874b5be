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

// Publish/query differential oracle.
//
// Each test group pairs a function that writes a record ("publish") with the
// function that reads it back ("query"). One execution decodes the raw fuzz
// input into a group and a parameter list, publishes, queries by the record
// key, and compares what came back with what went in. A disagreement is
// verdict 0 (suspect); everything else, including a rejected publish, is
// verdict 1 (clean).
//
// Wire format of a fuzz input:
//
//   [group: 1 byte] ([len: 2 bytes big-endian] [len bytes])*
//
// The group byte is taken modulo the number of groups. Parameters beyond the
// group's arity and trailing bytes are ignored, missing parameters are empty,
// and a length running past the end takes whatever bytes remain. Only the
// empty input is rejected.

#ifndef LEDGERFUZZ_HARNESS_H_
#define LEDGERFUZZ_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ledgerfuzz/bytes.h"
#include "ledgerfuzz/contract.h"
#include "ledgerfuzz/mock_ledger.h"
#include "ledgerfuzz/rng.h"

namespace ledgerfuzz {

inline constexpr std::size_t kMaxParamLen = 0xffff;

struct FieldMismatch {
  std::string field;
  std::string published;
  std::string queried;
};

// Compares the published parameters with the query payload. nullopt means
// the record read back matches.
using CompareFn = std::function<std::optional<FieldMismatch>(ArgsView published, std::string_view payload)>;

// Shape of a parameter, used when generating typed random seeds.
enum class ParamKind { kAny, kId, kNumber, kWord, kDate };

struct TestGroup {
  std::string name;
  std::string publish_fn;
  std::string query_fn;
  std::size_t arity = 1;
  std::size_t key_index = 0;
  CompareFn compare;
  std::vector<ParamKind> kinds;  // empty or one per parameter
};

enum class HarnessVerdict : int { kSuspect = 0, kClean = 1 };

struct DecodedInput {
  std::size_t group = 0;
  Args params;

  bool operator==(const DecodedInput&) const = default;
};

// nullopt is Reject.
std::optional<DecodedInput> Decode(ByteView raw, std::span<const TestGroup> groups);

// Frames a group index and parameters. Throws std::invalid_argument for a
// group index above 255 or a parameter longer than 65535 bytes.
Bytes Encode(std::size_t group, ArgsView params);

class TxIdSource {
 public:
  std::string Next() { return "tx-" + std::to_string(++counter_); }

 private:
  std::uint64_t counter_ = 0;
};

struct GroupResult {
  HarnessVerdict verdict = HarnessVerdict::kClean;
  std::optional<FieldMismatch> mismatch;
  std::optional<std::string> query_error;  // query returned status 500
};

// Publishes params, queries params[key_index], compares. Contract aborts and
// timeouts propagate as exceptions.
GroupResult RunGroup(MockLedger& ledger, const Contract& contract, const TestGroup& group, ArgsView params,
                     TxIdSource& ids, const ExecHooks& hooks = {});

// One-line description of a suspect result, naming the group and field.
std::string MismatchMessage(const TestGroup& group, const GroupResult& result);
// Published and queried values for the crash output file.
std::string MismatchDetail(const TestGroup& group, ArgsView params, const GroupResult& result);

// A unit-test style call: the publish function name followed by its params.
struct UnitCase {
  std::string name;
  Args call;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Encodes every unit case plus `n_random` frames of typed random parameters.
// Duplicates are dropped; order is unit cases first. Throws ConfigError when
// a unit case names no group or has the wrong number of parameters.
std::vector<Bytes> GenSeedCorpus(std::span<const TestGroup> groups, std::span<const UnitCase> unit_cases, Rng& rng,
                                 std::size_t n_random);

// One random parameter of the given shape.
std::string RandomParam(ParamKind kind, Rng& rng);

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_HARNESS_H_
