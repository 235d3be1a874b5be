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

// Two accounts and a one-way transfer. This is the control target: every path
// validates its input, so fuzzing it should never produce a crash.

#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

namespace {

constexpr std::uint32_t kSite = 0x1000;
constexpr std::string_view kAccountsKey = "accounts";

struct Accounts {
  std::string a, b;
  std::int64_t a_val = 0, b_val = 0;
};

std::optional<Accounts> LoadAccounts(StubHandle& stub) {
  const auto names = stub.GetState(kAccountsKey);
  if (!names) return std::nullopt;
  const auto fields = UnpackFields(*names);
  if (!fields || fields->size() != 2) return std::nullopt;
  Accounts acc{(*fields)[0], (*fields)[1]};
  const auto a = stub.GetState(acc.a);
  const auto b = stub.GetState(acc.b);
  if (!a || !b) return std::nullopt;
  const auto av = ParseDecimal(*a);
  const auto bv = ParseDecimal(*b);
  if (!av || !bv) return std::nullopt;
  acc.a_val = *av;
  acc.b_val = *bv;
  return acc;
}

ContractResponse Init(StubHandle& stub, ArgsView args) {
  stub.Cover(kSite + 0);
  if (args.size() != 4) return ContractResponse::Error("Incorrect number of arguments. Expecting 4");
  const auto a_val = ParseDecimal(args[1]);
  const auto b_val = ParseDecimal(args[3]);
  if (!a_val || !b_val || *a_val < 0 || *b_val < 0) {
    stub.Cover(kSite + 1);
    return ContractResponse::Error("Expecting non-negative integer values for asset holdings");
  }
  if (args[0].empty() || args[2].empty() || args[0] == args[2] || args[0] == kAccountsKey ||
      args[2] == kAccountsKey) {
    stub.Cover(kSite + 2);
    return ContractResponse::Error("Expecting two distinct account names");
  }
  stub.PutState(args[0], std::to_string(*a_val));
  stub.PutState(args[2], std::to_string(*b_val));
  const Args names{args[0], args[2]};
  stub.PutState(kAccountsKey, PackFields(names));
  return ContractResponse::Ok();
}

ContractResponse Transfer(StubHandle& stub, ArgsView params) {
  if (params.size() != 1) return ContractResponse::Error("Incorrect number of arguments. Expecting 1");
  const auto x = ParseDecimal(params[0]);
  if (!x) {
    stub.Cover(kSite + 10);
    return ContractResponse::Error("Invalid transaction amount, expecting a integer value");
  }
  if (*x < 0) {
    stub.Cover(kSite + 11);
    return ContractResponse::Error("Invalid transaction amount, expecting a non-negative value");
  }
  auto acc = LoadAccounts(stub);
  if (!acc) return ContractResponse::Error("Failed to get state");
  if (*x > acc->a_val) {
    stub.Cover(kSite + 12);
    return ContractResponse::Error("Insufficient funds");
  }
  stub.Cover(kSite + 13);
  acc->a_val -= *x;
  acc->b_val += *x;
  stub.PutState(acc->a, std::to_string(acc->a_val));
  stub.PutState(acc->b, std::to_string(acc->b_val));
  return ContractResponse::Ok();
}

ContractResponse Balances(StubHandle& stub, ArgsView) {
  const auto acc = LoadAccounts(stub);
  if (!acc) return ContractResponse::Error("Failed to get state");
  const Args fields{acc->a, std::to_string(acc->a_val), acc->b, std::to_string(acc->b_val)};
  return ContractResponse::Ok(PackFields(fields));
}

ContractResponse Query(StubHandle& stub, ArgsView params) {
  if (params.size() != 1) return ContractResponse::Error("Incorrect number of arguments. Expecting name of the person to query");
  auto value = stub.GetState(params[0]);
  if (!value || params[0] == kAccountsKey) return ContractResponse::Error("Nil amount for " + params[0]);
  return ContractResponse::Ok(std::move(*value));
}

}  // namespace

TargetSpec TargetExample01() {
  static const FunctionTable table = FunctionTable()
                                         .Add("transfer", Transfer)
                                         .Add("balances", Balances)
                                         .Add("query", Query);
  TargetSpec spec;
  spec.contract = Contract{"example01", Init, [](StubHandle& stub, ArgsView args) { return table.Route(stub, args); }};
  spec.fixture = {"A", "100", "B", "200"};
  const std::int64_t total = 300;

  TestGroup transfer;
  transfer.name = "transfer";
  transfer.publish_fn = "transfer";
  transfer.query_fn = "balances";
  transfer.arity = 1;
  transfer.key_index = 0;
  transfer.kinds = {ParamKind::kNumber};
  // Holdings are conserved and never negative.
  transfer.compare = [total](ArgsView, std::string_view payload) -> std::optional<FieldMismatch> {
    const auto fields = UnpackFields(payload);
    if (!fields || fields->size() != 4) return FieldMismatch{"balances", "4 fields", std::string(payload)};
    const auto a = ParseDecimal((*fields)[1]);
    const auto b = ParseDecimal((*fields)[3]);
    if (!a || !b || *a < 0 || *b < 0) return FieldMismatch{"balances", "non-negative", (*fields)[1] + "," + (*fields)[3]};
    if (*a + *b != total) return FieldMismatch{"total", std::to_string(total), std::to_string(*a + *b)};
    return std::nullopt;
  };
  spec.groups = {transfer};
  spec.seeds = {{"T1", {"transfer", "10"}}};
  spec.literals = {"transfer", "balances", "query", "A", "B", "100", "200"};
  return spec;
}

}  // namespace ledgerfuzz
