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

// Corpus, crashers and suppressions for one fuzzing directory.
//
// On-disk layout under the run directory:
//   corpus/<sha256(data)>                 raw input
//   crashers/<sha256(data)>               raw crashing input
//   crashers/<sha256(data)>.quoted        printable rendering
//   crashers/<sha256(data)>.output        failure message and oracle detail
//   suppressions/<signature>              one normalized message
//   quarantine/                           corpus files whose name did not
//                                         match their content on reload
//
// Scheduling state (priorities, exec counts, lineage) lives only in memory;
// a reloaded corpus starts every entry at priority 1.

#ifndef LEDGERFUZZ_CORPUS_STORE_H_
#define LEDGERFUZZ_CORPUS_STORE_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ledgerfuzz/bytes.h"
#include "ledgerfuzz/mutation.h"
#include "ledgerfuzz/rng.h"

namespace ledgerfuzz {

inline constexpr double kMinPriority = 0.0625;
inline constexpr double kMaxPriority = 16.0;

enum class AddCause { kSeed, kNewCoverage, kOracleSuspect };
enum class Outcome { kNewCoverage, kSuspect, kNothing };
enum class CrashKind { kAbort, kOracleMismatch, kTimeout };

std::string_view CrashKindName(CrashKind kind);
std::optional<CrashKind> ParseCrashKind(std::string_view name);

struct CorpusEntry {
  std::size_t id = 0;
  Bytes data;
  std::string hash;
  double priority = 1.0;
  std::uint32_t depth = 0;
  std::optional<MutatorId> source_op;
  std::uint64_t exec_count = 0;
};

struct CrashReport {
  Bytes data;
  std::string rendered;
  std::string message;
  std::string detail;
  CrashKind kind = CrashKind::kAbort;
  std::string signature;
  std::chrono::milliseconds found_at{0};

  // Human-readable text the signature is computed from.
  std::string SignatureText() const;
};

// Replaces hex literals with "0x?" and decimal numbers with "N".
std::string NormalizeMessage(std::string_view message);

// "<Kind>: <normalized message>"
std::string SignatureText(CrashKind kind, std::string_view message);

// Lowercase hex SHA-256 of SignatureText(kind, message).
std::string CrashSignature(CrashKind kind, std::string_view message);

CrashReport MakeCrashReport(Bytes data, CrashKind kind, std::string message, std::string detail,
                            std::chrono::milliseconds found_at = {});

// Initial priority for a cause, and the reward update rule.
double InitialPriority(AddCause cause);
double RewardedPriority(double priority, Outcome outcome);

// Index drawn with probability weights[i] / sum(weights). Weights must be
// positive and the span non-empty.
std::size_t PickWeighted(std::span<const double> weights, Rng& rng);

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StorePaths {
  std::filesystem::path root;
  std::filesystem::path corpus;
  std::filesystem::path crashers;
  std::filesystem::path suppressions;
  std::filesystem::path quarantine;

  static StorePaths Under(const std::filesystem::path& root);
};

// All public operations are atomic with respect to each other.
class CorpusStore {
 public:
  // Creates the directory tree if needed. Throws StoreError if it cannot.
  CorpusStore(const std::filesystem::path& root, std::size_t max_input_len);

  // Loads existing corpus files and suppressions from disk. Corpus files
  // whose name is not the SHA-256 of their content are moved to quarantine/.
  // Returns the number of corpus entries loaded.
  std::size_t Load();

  // Returns the new entry's id, or nullopt when the data is a duplicate or
  // too long. Throws StoreError when the file cannot be written.
  std::optional<std::size_t> Add(Bytes data, AddCause cause, std::optional<std::size_t> parent = std::nullopt,
                                 std::optional<MutatorId> source_op = std::nullopt);

  // Draws an entry with probability proportional to its priority and bumps
  // its exec count. The store must not be empty.
  CorpusEntry Pick(Rng& rng);

  void Reward(std::size_t id, Outcome outcome);

  // True when the signature was new and the crash was written out.
  bool RecordCrash(const CrashReport& report);

  bool IsSuppressed(const std::string& signature) const;

  std::size_t size() const;
  std::size_t suppression_count() const;
  CorpusEntry entry(std::size_t id) const;
  std::vector<CorpusEntry> entries() const;
  std::set<std::string> signatures() const;
  const StorePaths& paths() const { return paths_; }

 private:
  std::optional<std::size_t> AddLocked(Bytes data, AddCause cause, std::optional<std::size_t> parent,
                                       std::optional<MutatorId> source_op, bool write_file);

  StorePaths paths_;
  std::size_t max_input_len_;
  mutable std::mutex mu_;
  std::vector<CorpusEntry> entries_;
  std::set<std::string> hashes_;
  std::set<std::string> suppressions_;
};

// Writes `contents` to `path` through a temporary file and rename.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);
std::string ReadFile(const std::filesystem::path& path);

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_CORPUS_STORE_H_
