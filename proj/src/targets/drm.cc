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

// Digital rights registry. addRight writes whatever id it is given, including
// the empty string; queryRight reports an empty id as not found.

#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

namespace {

constexpr std::uint32_t kSite = 0x2000;

ContractResponse Init(StubHandle& stub, ArgsView) {
  stub.Cover(kSite);
  return ContractResponse::Ok();
}

ContractResponse AddRight(StubHandle& stub, ArgsView params) {
  if (params.size() != 2) return ContractResponse::Error("addRight expects id and owner");
  if (params[1].empty()) {
    stub.Cover(kSite + 1);
    return ContractResponse::Error("owner must not be empty");
  }
  if (stub.GetState(params[0])) {
    stub.Cover(kSite + 2);
    return ContractResponse::Error("right " + params[0] + " already exists");
  }
  stub.Cover(kSite + 3);
  stub.PutState(params[0], PackFields(params));
  return ContractResponse::Ok();
}

ContractResponse QueryRight(StubHandle& stub, ArgsView params) {
  if (params.size() != 1) return ContractResponse::Error("queryRight expects an id");
  if (params[0].empty()) {
    stub.Cover(kSite + 4);
    return ContractResponse::Error("right not found");
  }
  auto record = stub.GetState(params[0]);
  if (!record) {
    stub.Cover(kSite + 5);
    return ContractResponse::Error("right not found");
  }
  stub.Cover(kSite + 6);
  return ContractResponse::Ok(std::move(*record));
}

}  // namespace

TargetSpec TargetDrm() {
  static const FunctionTable table = FunctionTable().Add("addRight", AddRight).Add("queryRight", QueryRight);
  TargetSpec spec;
  spec.contract = Contract{"drm", Init, [](StubHandle& stub, ArgsView args) { return table.Route(stub, args); }};

  TestGroup right;
  right.name = "right";
  right.publish_fn = "addRight";
  right.query_fn = "queryRight";
  right.arity = 2;
  right.key_index = 0;
  right.kinds = {ParamKind::kId, ParamKind::kWord};
  right.compare = [](ArgsView published, std::string_view payload) -> std::optional<FieldMismatch> {
    static const char* const kFields[] = {"id", "owner"};
    const auto fields = UnpackFields(payload);
    if (!fields || fields->size() != 2) return FieldMismatch{"record", "2 fields", std::string(payload)};
    for (std::size_t i = 0; i < 2; ++i) {
      if ((*fields)[i] != published[i]) return FieldMismatch{kFields[i], published[i], (*fields)[i]};
    }
    return std::nullopt;
  };
  spec.groups = {right};
  spec.seeds = {{"R1", {"addRight", "r1", "alice"}}, {"R2", {"addRight", "r2", "bob"}}};
  spec.literals = {"addRight", "queryRight", "r1", "alice"};
  spec.expected_bugs = {{CrashKind::kOracleMismatch, "cannot find the published record"}};
  spec.witnesses = {{"empty id", 0, {"", "alice"}, CrashKind::kOracleMismatch, "cannot find the published record"}};
  return spec;
}

}  // namespace ledgerfuzz
