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

#include "ledgerfuzz/corpus_store.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace ledgerfuzz {

namespace fs = std::filesystem;

std::string_view CrashKindName(CrashKind kind) {
  switch (kind) {
    case CrashKind::kAbort: return "Abort";
    case CrashKind::kOracleMismatch: return "OracleMismatch";
    case CrashKind::kTimeout: return "Timeout";
  }
  return "Unknown";
}

std::optional<CrashKind> ParseCrashKind(std::string_view name) {
  for (CrashKind k : {CrashKind::kAbort, CrashKind::kOracleMismatch, CrashKind::kTimeout}) {
    if (CrashKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string NormalizeMessage(std::string_view message) {
  std::string out;
  out.reserve(message.size());
  std::size_t i = 0;
  const auto digit = [&](std::size_t k) {
    return k < message.size() && std::isdigit(static_cast<unsigned char>(message[k]));
  };
  const auto xdigit = [&](std::size_t k) {
    return k < message.size() && std::isxdigit(static_cast<unsigned char>(message[k]));
  };
  while (i < message.size()) {
    if (message[i] == '0' && i + 1 < message.size() && (message[i + 1] == 'x' || message[i + 1] == 'X') &&
        xdigit(i + 2)) {
      i += 2;
      while (xdigit(i)) ++i;
      out += "0x?";
    } else if (digit(i) || (message[i] == '-' && digit(i + 1))) {
      ++i;
      while (digit(i)) ++i;
      out += 'N';
    } else {
      out.push_back(message[i++]);
    }
  }
  return out;
}

std::string SignatureText(CrashKind kind, std::string_view message) {
  std::string text(CrashKindName(kind));
  text += ": ";
  text += NormalizeMessage(message);
  return text;
}

std::string CrashSignature(CrashKind kind, std::string_view message) {
  return Sha256Hex(SignatureText(kind, message));
}

std::string CrashReport::SignatureText() const { return ledgerfuzz::SignatureText(kind, message); }

CrashReport MakeCrashReport(Bytes data, CrashKind kind, std::string message, std::string detail,
                            std::chrono::milliseconds found_at) {
  CrashReport r;
  r.rendered = Quote(data);
  r.data = std::move(data);
  r.kind = kind;
  r.signature = CrashSignature(kind, message);
  r.message = std::move(message);
  r.detail = std::move(detail);
  r.found_at = found_at;
  return r;
}

double InitialPriority(AddCause cause) {
  switch (cause) {
    case AddCause::kSeed: return 1.0;
    case AddCause::kNewCoverage: return 2.0;
    case AddCause::kOracleSuspect: return 4.0;
  }
  return 1.0;
}

double RewardedPriority(double priority, Outcome outcome) {
  const double factor = outcome == Outcome::kNothing ? 0.95 : 2.0;
  return std::clamp(priority * factor, kMinPriority, kMaxPriority);
}

std::size_t PickWeighted(std::span<const double> weights, Rng& rng) {
  double total = 0;
  for (double w : weights) total += w;
  double target = rng.Unit() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    target -= weights[i];
    if (target < 0) return i;
  }
  return weights.size() - 1;
}

StorePaths StorePaths::Under(const fs::path& root) {
  return StorePaths{root, root / "corpus", root / "crashers", root / "suppressions", root / "quarantine"};
}

void WriteFileAtomic(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw StoreError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw StoreError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

CorpusStore::CorpusStore(const fs::path& root, std::size_t max_input_len)
    : paths_(StorePaths::Under(root)), max_input_len_(max_input_len) {
  for (const fs::path& dir : {paths_.corpus, paths_.crashers, paths_.suppressions}) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
      throw StoreError("cannot create directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
  }
  // Existing but read-only directories would otherwise only fail at the
  // first crash.
  const fs::path probe = paths_.suppressions / ".write-probe";
  WriteFileAtomic(probe, "");
  std::error_code ec;
  fs::remove(probe, ec);
}

std::size_t CorpusStore::Load() {
  std::lock_guard lock(mu_);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(paths_.corpus)) {
    if (e.is_regular_file() && e.path().extension() != ".tmp") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t loaded = 0;
  for (const fs::path& file : files) {
    const std::string contents = ReadFile(file);
    if (Sha256Hex(contents) != file.filename().string()) {
      std::error_code ec;
      fs::create_directories(paths_.quarantine, ec);
      fs::rename(file, paths_.quarantine / file.filename(), ec);
      if (ec) throw StoreError("cannot quarantine " + file.string() + ": " + ec.message());
      continue;
    }
    if (AddLocked(ToBytes(contents), AddCause::kSeed, std::nullopt, std::nullopt, false)) ++loaded;
  }
  for (const auto& e : fs::directory_iterator(paths_.suppressions)) {
    if (e.is_regular_file() && e.path().extension() != ".tmp") suppressions_.insert(e.path().filename().string());
  }
  return loaded;
}

std::optional<std::size_t> CorpusStore::Add(Bytes data, AddCause cause, std::optional<std::size_t> parent,
                                             std::optional<MutatorId> source_op) {
  std::lock_guard lock(mu_);
  return AddLocked(std::move(data), cause, parent, source_op, true);
}

std::optional<std::size_t> CorpusStore::AddLocked(Bytes data, AddCause cause, std::optional<std::size_t> parent,
                                                  std::optional<MutatorId> source_op, bool write_file) {
  if (data.size() > max_input_len_) return std::nullopt;
  std::string hash = Sha256Hex(data);
  if (hashes_.contains(hash)) return std::nullopt;
  if (write_file) WriteFileAtomic(paths_.corpus / hash, ToString(data));

  CorpusEntry e;
  e.id = entries_.size();
  e.data = std::move(data);
  e.hash = hash;
  e.priority = InitialPriority(cause);
  e.depth = parent && *parent < entries_.size() ? entries_[*parent].depth + 1 : 0;
  e.source_op = source_op;
  hashes_.insert(std::move(hash));
  entries_.push_back(std::move(e));
  return entries_.back().id;
}

CorpusEntry CorpusStore::Pick(Rng& rng) {
  std::lock_guard lock(mu_);
  if (entries_.empty()) throw std::logic_error("pick from an empty corpus");
  std::vector<double> weights;
  weights.reserve(entries_.size());
  for (const auto& e : entries_) weights.push_back(e.priority);
  const std::size_t chosen = PickWeighted(weights, rng);
  ++entries_[chosen].exec_count;
  return entries_[chosen];
}

void CorpusStore::Reward(std::size_t id, Outcome outcome) {
  std::lock_guard lock(mu_);
  if (id >= entries_.size()) return;
  entries_[id].priority = RewardedPriority(entries_[id].priority, outcome);
}

bool CorpusStore::RecordCrash(const CrashReport& report) {
  std::lock_guard lock(mu_);
  if (suppressions_.contains(report.signature)) return false;

  const std::string name = Sha256Hex(report.data);
  std::ostringstream output;
  output << "kind: " << CrashKindName(report.kind) << "\n";
  output << "message: " << report.message << "\n";
  if (!report.detail.empty()) output << report.detail << "\n";

  WriteFileAtomic(paths_.crashers / name, ToString(report.data));
  WriteFileAtomic(paths_.crashers / (name + ".quoted"), report.rendered + "\n");
  WriteFileAtomic(paths_.crashers / (name + ".output"), output.str());
  WriteFileAtomic(paths_.suppressions / report.signature, report.SignatureText() + "\n");
  suppressions_.insert(report.signature);
  return true;
}

bool CorpusStore::IsSuppressed(const std::string& signature) const {
  std::lock_guard lock(mu_);
  return suppressions_.contains(signature);
}

std::size_t CorpusStore::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::size_t CorpusStore::suppression_count() const {
  std::lock_guard lock(mu_);
  return suppressions_.size();
}

CorpusEntry CorpusStore::entry(std::size_t id) const {
  std::lock_guard lock(mu_);
  return entries_.at(id);
}

std::vector<CorpusEntry> CorpusStore::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::set<std::string> CorpusStore::signatures() const {
  std::lock_guard lock(mu_);
  return suppressions_;
}

}  // namespace ledgerfuzz
