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

// The interface every fuzz target implements.
//
// A contract is a pair of entry points, Init and Invoke, that receive a
// StubHandle and an argument list. Invoke conventionally treats args[0] as the
// name of the function to run; FunctionTable implements that convention.
// Contracts keep no state of their own: everything persistent goes through
// the handle, which also carries the coverage hooks.

#ifndef LEDGERFUZZ_CONTRACT_H_
#define LEDGERFUZZ_CONTRACT_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ledgerfuzz {

class CoverageMap;
class MockLedger;

using Args = std::vector<std::string>;
using ArgsView = std::span<const std::string>;

inline constexpr int kStatusOk = 200;
inline constexpr int kStatusError = 500;

struct ContractResponse {
  int status = kStatusOk;
  std::string payload;
  std::string message;

  static ContractResponse Ok(std::string payload = {}) { return {kStatusOk, std::move(payload), {}}; }
  // An empty message is replaced so that failures always say something.
  static ContractResponse Error(std::string message) {
    if (message.empty()) message = "unspecified failure";
    return {kStatusError, {}, std::move(message)};
  }

  bool ok() const { return status == kStatusOk; }
};

// Thrown by Abort(). The execution harness turns it into an Abort crash.
class ContractAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised from a stub call once the per-execution deadline has passed. Not a
// std::exception, so a contract's catch-all for std::exception cannot eat it.
struct ExecTimeout {};

// Equivalent of a Go panic inside chaincode.
[[noreturn]] void Abort(std::string message);

using Clock = std::chrono::steady_clock;

// Capability handed to contract code for the duration of one Init/Invoke.
class StubHandle {
 public:
  StubHandle(MockLedger& ledger, CoverageMap* coverage, std::optional<Clock::time_point> deadline);

  StubHandle(const StubHandle&) = delete;
  StubHandle& operator=(const StubHandle&) = delete;

  void PutState(std::string_view key, std::string value);
  std::optional<std::string> GetState(std::string_view key);
  void DelState(std::string_view key);

  // Manual instrumentation point.
  void Cover(std::uint32_t site);

  const std::string& TxId() const;

  // Marks entry into a named contract function: records its coverage site
  // and restarts the state-access counter used to derive access sites.
  void EnterFunction(std::string_view name);

 private:
  void Tick();
  void RecordAccess(char op);

  MockLedger& ledger_;
  CoverageMap* coverage_;
  std::optional<Clock::time_point> deadline_;
  std::string function_;
  std::uint32_t access_index_ = 0;
};

using EntryPoint = std::function<ContractResponse(StubHandle&, ArgsView)>;

struct Contract {
  std::string name;
  EntryPoint init;
  EntryPoint invoke;
};

// Lossy UTF-8 decoding: every malformed sequence becomes U+FFFD.
std::string DecodeUtf8Lossy(std::string_view raw);

struct DispatchedCall {
  std::string function;
  ArgsView params;
};

// Splits an Invoke argument list into the function selector and its
// parameters. Returns nullopt when the list is empty.
std::optional<DispatchedCall> Dispatch(ArgsView args);

// Name -> handler routing for Invoke.
class FunctionTable {
 public:
  FunctionTable& Add(std::string name, EntryPoint handler);

  // Dispatches args; an empty list or an unknown name yields status 500.
  ContractResponse Route(StubHandle& stub, ArgsView args) const;

  std::vector<std::string> names() const;

 private:
  std::map<std::string, EntryPoint, std::less<>> handlers_;
};

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_CONTRACT_H_
