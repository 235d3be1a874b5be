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

// Checking accounts with 32-bit balances. deposit_checking adds with
// two's-complement wraparound; the post-write check aborts when a positive
// deposit leaves a non-negative balance smaller than before.

#include <cstdint>

#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

namespace {

constexpr std::uint32_t kSite = 0x3000;

std::string CheckingKey(std::string_view id) { return "checking_" + std::string(id); }

ContractResponse Init(StubHandle& stub, ArgsView args) {
  stub.Cover(kSite);
  if (args.size() % 2 != 0) return ContractResponse::Error("expecting account/balance pairs");
  for (std::size_t i = 0; i < args.size(); i += 2) {
    const auto balance = ParseDecimal(args[i + 1]);
    if (args[i].empty() || !balance || *balance < INT32_MIN || *balance > INT32_MAX) {
      return ContractResponse::Error("bad account entry " + args[i]);
    }
    stub.PutState(CheckingKey(args[i]), std::to_string(*balance));
  }
  return ContractResponse::Ok();
}

ContractResponse DepositChecking(StubHandle& stub, ArgsView params) {
  if (params.size() != 2) return ContractResponse::Error("deposit_checking expects account and amount");
  if (params[0].empty()) {
    stub.Cover(kSite + 1);
    return ContractResponse::Error("missing account id");
  }
  const auto amount = ParseDecimal(params[1]);
  if (!amount || *amount < INT32_MIN || *amount > INT32_MAX) {
    stub.Cover(kSite + 2);
    return ContractResponse::Error("amount is not a 32-bit decimal integer");
  }
  if (*amount <= 0) {
    stub.Cover(kSite + 3);
    return ContractResponse::Error("deposit amount must be positive");
  }

  std::int32_t old_balance = 0;
  if (auto stored = stub.GetState(CheckingKey(params[0]))) {
    stub.Cover(kSite + 4);
    const auto parsed = ParseDecimal(*stored);
    if (!parsed) return ContractResponse::Error("corrupt balance");
    old_balance = static_cast<std::int32_t>(*parsed);
  } else {
    stub.Cover(kSite + 5);
  }

  const auto amt = static_cast<std::int32_t>(*amount);
  const auto new_balance =
      static_cast<std::int32_t>(static_cast<std::uint32_t>(old_balance) + static_cast<std::uint32_t>(amt));
  stub.PutState(CheckingKey(params[0]), std::to_string(new_balance));

  if (amt > 0 && old_balance >= 0 && new_balance < old_balance) {
    Abort("integer overflow: balance " + std::to_string(old_balance) + " + deposit " + std::to_string(amt) +
          " = " + std::to_string(new_balance));
  }
  stub.Cover(kSite + 6);
  return ContractResponse::Ok();
}

ContractResponse Query(StubHandle& stub, ArgsView params) {
  if (params.size() != 1) return ContractResponse::Error("query expects an account");
  auto balance = stub.GetState(CheckingKey(params[0]));
  if (!balance) return ContractResponse::Error("account not found");
  return ContractResponse::Ok(std::move(*balance));
}

}  // namespace

TargetSpec TargetSmallbank() {
  static const FunctionTable table =
      FunctionTable().Add("deposit_checking", DepositChecking).Add("query", Query);
  TargetSpec spec;
  spec.contract = Contract{"smallbank", Init, [](StubHandle& stub, ArgsView args) { return table.Route(stub, args); }};
  spec.fixture = {"acct0", "100", "acct1", "2147483647"};

  TestGroup deposit;
  deposit.name = "deposit";
  deposit.publish_fn = "deposit_checking";
  deposit.query_fn = "query";
  deposit.arity = 2;
  deposit.key_index = 0;
  deposit.kinds = {ParamKind::kId, ParamKind::kNumber};
  // A successful deposit leaves at least the deposited amount in the account.
  deposit.compare = [](ArgsView published, std::string_view payload) -> std::optional<FieldMismatch> {
    const auto balance = ParseDecimal(payload);
    const auto amount = ParseDecimal(published[1]);
    if (!balance || !amount || *balance < *amount) {
      return FieldMismatch{"balance", ">= " + published[1], std::string(payload)};
    }
    return std::nullopt;
  };
  spec.groups = {deposit};
  spec.seeds = {{"D1", {"deposit_checking", "acct0", "50"}}};
  spec.literals = {"deposit_checking", "query", "acct0", "acct1"};
  spec.expected_bugs = {{CrashKind::kAbort, "overflow"}};
  spec.witnesses = {{"2147483647 + 1", 0, {"acct1", "1"}, CrashKind::kAbort, "overflow"}};
  return spec;
}

}  // namespace ledgerfuzz
