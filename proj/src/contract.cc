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

#include "ledgerfuzz/contract.h"

#include "ledgerfuzz/coverage.h"
#include "ledgerfuzz/mock_ledger.h"

namespace ledgerfuzz {

void Abort(std::string message) { throw ContractAbort(std::move(message)); }

StubHandle::StubHandle(MockLedger& ledger, CoverageMap* coverage, std::optional<Clock::time_point> deadline)
    : ledger_(ledger), coverage_(coverage), deadline_(deadline) {}

void StubHandle::Tick() {
  if (deadline_ && Clock::now() > *deadline_) throw ExecTimeout{};
}

void StubHandle::RecordAccess(char op) {
  if (coverage_ == nullptr) return;
  std::string tag = function_;
  tag.push_back('#');
  tag.push_back(op);
  coverage_->Record(SiteFor(tag, ++access_index_));
}

void StubHandle::PutState(std::string_view key, std::string value) {
  Tick();
  RecordAccess('p');
  ledger_.PutState(key, std::move(value));
}

std::optional<std::string> StubHandle::GetState(std::string_view key) {
  Tick();
  RecordAccess('g');
  return ledger_.GetState(key);
}

void StubHandle::DelState(std::string_view key) {
  Tick();
  RecordAccess('d');
  ledger_.DelState(key);
}

void StubHandle::Cover(std::uint32_t site) {
  Tick();
  if (coverage_ != nullptr) coverage_->Record(site);
}

const std::string& StubHandle::TxId() const {
  static const std::string kNone;
  const auto& tx = ledger_.current_tx();
  return tx ? tx->uuid : kNone;
}

void StubHandle::EnterFunction(std::string_view name) {
  Tick();
  function_.assign(name);
  access_index_ = 0;
  if (coverage_ != nullptr) coverage_->Record(SiteFor(name));
}

std::string DecodeUtf8Lossy(std::string_view raw) {
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(raw[k]); };
  const auto is_cont = [&](std::size_t k) { return k < raw.size() && (byte(k) & 0xC0) == 0x80; };
  while (i < raw.size()) {
    const unsigned char c = byte(i);
    std::size_t len = 0;
    bool valid = false;
    if (c < 0x80) {
      len = 1;
      valid = true;
    } else if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
      valid = is_cont(i + 1);
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
      // Reject overlongs (E0 80..9F) and surrogates (ED A0..BF).
      valid = is_cont(i + 1) && is_cont(i + 2) && !(c == 0xE0 && byte(i + 1) < 0xA0) &&
              !(c == 0xED && byte(i + 1) > 0x9F);
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
      valid = is_cont(i + 1) && is_cont(i + 2) && is_cont(i + 3) && !(c == 0xF0 && byte(i + 1) < 0x90) &&
              !(c == 0xF4 && byte(i + 1) > 0x8F);
    }
    if (valid) {
      out.append(raw.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      ++i;
    }
  }
  return out;
}

std::optional<DispatchedCall> Dispatch(ArgsView args) {
  if (args.empty()) return std::nullopt;
  return DispatchedCall{DecodeUtf8Lossy(args.front()), args.subspan(1)};
}

FunctionTable& FunctionTable::Add(std::string name, EntryPoint handler) {
  handlers_.insert_or_assign(std::move(name), std::move(handler));
  return *this;
}

ContractResponse FunctionTable::Route(StubHandle& stub, ArgsView args) const {
  auto call = Dispatch(args);
  if (!call) return ContractResponse::Error("missing function name");
  auto it = handlers_.find(call->function);
  if (it == handlers_.end()) {
    return ContractResponse::Error("unknown function: " + call->function);
  }
  stub.EnterFunction(call->function);
  return it->second(stub, call->params);
}

std::vector<std::string> FunctionTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : handlers_) out.push_back(name);
  return out;
}

}  // namespace ledgerfuzz
