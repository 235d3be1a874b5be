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

#ifndef LEDGERFUZZ_MOCK_LEDGER_H_
#define LEDGERFUZZ_MOCK_LEDGER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ledgerfuzz/contract.h"

namespace ledgerfuzz {

// Misuse of the ledger API: state access outside a transaction, empty tx
// ids, re-entrant calls.
class LedgerError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TxContext {
  std::string uuid;
  Args args;
};

// Ordered by raw key bytes.
using StateMap = std::map<std::string, std::string, std::less<>>;

// Optional instrumentation attached to a mock call.
struct ExecHooks {
  CoverageMap* coverage = nullptr;
  std::optional<Clock::time_point> deadline;
};

// In-memory key-value state standing in for the chaincode state database.
// Calls are strictly serial. Writes made before a contract returns an error
// (or aborts) are kept; there is no write set and no rollback.
class MockLedger {
 public:
  MockLedger() = default;

  ContractResponse MockInit(std::string uuid, Args args, const Contract& contract, const ExecHooks& hooks = {});
  ContractResponse MockInvoke(std::string uuid, Args args, const Contract& contract, const ExecHooks& hooks = {});

  // State access; each throws LedgerError when no transaction is open.
  void PutState(std::string_view key, std::string value);
  std::optional<std::string> GetState(std::string_view key) const;
  void DelState(std::string_view key);

  const StateMap& state() const { return state_; }
  const std::optional<TxContext>& current_tx() const { return current_tx_; }
  std::uint64_t invocation_count() const { return invocation_count_; }

  // One `hex(key)=hex(value)` line per entry, in key order.
  std::string DumpState() const;

 private:
  ContractResponse Call(std::string uuid, Args args, const EntryPoint& entry, const ExecHooks& hooks);
  void RequireTx() const;

  StateMap state_;
  std::optional<TxContext> current_tx_;
  std::uint64_t invocation_count_ = 0;
};

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_MOCK_LEDGER_H_
