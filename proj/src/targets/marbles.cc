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

// Marble registry. The size is validated as a digit string, converted to an
// integer and written back in canonical decimal, so "00" is stored as "0".

#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

namespace {

constexpr std::uint32_t kSite = 0x4000;
constexpr std::size_t kMaxSizeDigits = 9;

ContractResponse Init(StubHandle& stub, ArgsView) {
  stub.Cover(kSite);
  return ContractResponse::Ok();
}

// name, color, size, owner
ContractResponse AddMarble(StubHandle& stub, ArgsView params) {
  if (params.size() != 4) return ContractResponse::Error("Incorrect number of arguments. Expecting 4");
  if (params[0].empty()) {
    stub.Cover(kSite + 1);
    return ContractResponse::Error("1st argument must be a non-empty string");
  }
  if (params[1].empty()) {
    stub.Cover(kSite + 2);
    return ContractResponse::Error("2nd argument must be a non-empty string");
  }
  const std::string& size = params[2];
  if (size.empty() || size.size() > kMaxSizeDigits) {
    stub.Cover(kSite + 3);
    return ContractResponse::Error("3rd argument must be a numeric string");
  }
  for (char c : size) {
    if (c < '0' || c > '9') {
      stub.Cover(kSite + 4);
      return ContractResponse::Error("3rd argument must be a numeric string");
    }
  }
  if (stub.GetState(params[0])) {
    stub.Cover(kSite + 5);
    return ContractResponse::Error("This marble already exists: " + params[0]);
  }
  stub.Cover(kSite + 6);
  const auto size_value = ParseDecimal(size);
  const Args record{params[0], params[1], std::to_string(*size_value), params[3]};
  stub.PutState(params[0], PackFields(record));
  return ContractResponse::Ok();
}

ContractResponse QueryMarble(StubHandle& stub, ArgsView params) {
  if (params.size() != 1) return ContractResponse::Error("Incorrect number of arguments. Expecting name of the marble to query");
  auto record = stub.GetState(params[0]);
  if (!record) {
    stub.Cover(kSite + 7);
    return ContractResponse::Error("Marble does not exist: " + params[0]);
  }
  return ContractResponse::Ok(std::move(*record));
}

}  // namespace

TargetSpec TargetMarbles() {
  static const FunctionTable table = FunctionTable().Add("addMarble", AddMarble).Add("queryMarble", QueryMarble);
  TargetSpec spec;
  spec.contract = Contract{"marbles", Init, [](StubHandle& stub, ArgsView args) { return table.Route(stub, args); }};

  TestGroup marble;
  marble.name = "marble";
  marble.publish_fn = "addMarble";
  marble.query_fn = "queryMarble";
  marble.arity = 4;
  marble.key_index = 0;
  marble.kinds = {ParamKind::kId, ParamKind::kWord, ParamKind::kNumber, ParamKind::kWord};
  marble.compare = [](ArgsView published, std::string_view payload) -> std::optional<FieldMismatch> {
    static const char* const kFields[] = {"name", "color", "size", "owner"};
    const auto fields = UnpackFields(payload);
    if (!fields || fields->size() != 4) return FieldMismatch{"record", "4 fields", std::string(payload)};
    for (std::size_t i = 0; i < 4; ++i) {
      if ((*fields)[i] != published[i]) return FieldMismatch{kFields[i], published[i], (*fields)[i]};
    }
    return std::nullopt;
  };
  spec.groups = {marble};
  spec.seeds = {{"M1", {"addMarble", "marble1", "blue", "35", "tom"}}};
  spec.literals = {"addMarble", "queryMarble", "marble1", "blue", "tom"};
  spec.expected_bugs = {{CrashKind::kOracleMismatch, "field size"}};
  spec.witnesses = {{"size 00", 0, {"marble0", "blue", "00", "tom"}, CrashKind::kOracleMismatch, "field size"}};
  return spec;
}

}  // namespace ledgerfuzz
