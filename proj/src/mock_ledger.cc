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

#include "ledgerfuzz/mock_ledger.h"

#include <utility>

#include "ledgerfuzz/bytes.h"

namespace ledgerfuzz {

namespace {

// Closes the transaction and counts the call on every exit path, including
// contract aborts.
class TxScope {
 public:
  TxScope(std::optional<TxContext>& slot, std::uint64_t& counter) : slot_(slot), counter_(counter) {}
  ~TxScope() {
    slot_.reset();
    ++counter_;
  }

 private:
  std::optional<TxContext>& slot_;
  std::uint64_t& counter_;
};

}  // namespace

ContractResponse MockLedger::MockInit(std::string uuid, Args args, const Contract& contract,
                                      const ExecHooks& hooks) {
  return Call(std::move(uuid), std::move(args), contract.init, hooks);
}

ContractResponse MockLedger::MockInvoke(std::string uuid, Args args, const Contract& contract,
                                        const ExecHooks& hooks) {
  return Call(std::move(uuid), std::move(args), contract.invoke, hooks);
}

ContractResponse MockLedger::Call(std::string uuid, Args args, const EntryPoint& entry, const ExecHooks& hooks) {
  if (uuid.empty()) throw LedgerError("empty tx id");
  if (current_tx_) throw LedgerError("transaction already open");

  current_tx_ = TxContext{std::move(uuid), std::move(args)};
  TxScope scope(current_tx_, invocation_count_);
  StubHandle stub(*this, hooks.coverage, hooks.deadline);
  ContractResponse response = entry(stub, current_tx_->args);
  if (response.status != kStatusOk) {
    response = ContractResponse::Error(std::move(response.message));
  }
  return response;
}

void MockLedger::RequireTx() const {
  if (!current_tx_) throw LedgerError("no open transaction");
}

void MockLedger::PutState(std::string_view key, std::string value) {
  RequireTx();
  auto it = state_.find(key);
  if (it == state_.end()) {
    state_.emplace(std::string(key), std::move(value));
  } else {
    it->second = std::move(value);
  }
}

std::optional<std::string> MockLedger::GetState(std::string_view key) const {
  RequireTx();
  auto it = state_.find(key);
  if (it == state_.end()) return std::nullopt;
  return it->second;
}

void MockLedger::DelState(std::string_view key) {
  RequireTx();
  auto it = state_.find(key);
  if (it != state_.end()) state_.erase(it);
}

std::string MockLedger::DumpState() const {
  std::string out;
  for (const auto& [key, value] : state_) {
    out += HexEncode(key);
    out += '=';
    out += HexEncode(value);
    out += '\n';
  }
  return out;
}

}  // namespace ledgerfuzz
