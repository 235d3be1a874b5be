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

// Execution harness and the genetic fuzzing loop.
//
// The loop: seed the corpus, run every stored input once, then repeatedly
// pick an entry by priority, mutate it, execute it against a fresh ledger,
// and feed the outcome back into the corpus priorities. Crashes are recorded
// once per signature and the loop carries on.
//
// With one worker and no wall-clock budget a run is a pure function of the
// configuration: same seed, same corpus directory, same crashes.

#ifndef LEDGERFUZZ_FUZZER_H_
#define LEDGERFUZZ_FUZZER_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ledgerfuzz/corpus_store.h"
#include "ledgerfuzz/coverage.h"
#include "ledgerfuzz/harness.h"
#include "ledgerfuzz/mock_ledger.h"
#include "ledgerfuzz/mutation.h"
#include "ledgerfuzz/targets.h"

namespace ledgerfuzz {

using Millis = std::chrono::milliseconds;

struct ExecResult {
  std::optional<HarnessVerdict> verdict;
  std::optional<CrashReport> crash;
  const CoverageMap* run_coverage = nullptr;  // owned by the Executor

  bool clean() const { return verdict.has_value(); }
};

// Runs single inputs against one target. Each execution starts from a fresh
// ledger initialized with the target's fixture.
class Executor {
 public:
  Executor(const TargetSpec& target, Millis timeout);

  // Never throws for anything the contract does: aborts, exceptions and
  // timeouts come back as crashes. A timed-out run reports empty coverage.
  ExecResult Execute(ByteView input, Millis found_at = Millis{0});

  const CoverageMap& coverage() const { return coverage_; }
  // Ledger as left by the last execution.
  const MockLedger& ledger() const { return ledger_; }

 private:
  const TargetSpec& target_;
  Millis timeout_;
  CoverageMap coverage_;
  MockLedger ledger_;
};

// Checks that the fixture initializes and the unit cases match the groups.
// Throws ConfigError otherwise.
void ValidateTarget(const TargetSpec& target);

// Dictionary made of the target's literals and the unit case parameters.
Dictionary BuildDictionary(const TargetSpec& target);

struct Budget {
  std::optional<std::uint64_t> max_execs;
  std::optional<Millis> max_time;
};

struct FuzzerConfig {
  std::string target;
  std::uint64_t seed = 1;
  MutatorConfig mutators = MutatorConfig::Default();
  Budget budget;
  Millis exec_timeout{10'000};
  Millis stats_interval{3'000};
  int workers = 1;
  std::filesystem::path dir = "ledgerfuzz-out";
  std::size_t random_seeds = 8;

  // Throws ConfigError.
  void Validate() const;
};

struct StatsSnapshot {
  Millis elapsed{0};
  std::size_t corpus = 0;
  std::uint64_t execs = 0;
  double execs_per_sec = 0;
  std::size_t cover = 0;
  std::size_t crashers = 0;

  // `<elapsed-sec>s: corpus: <n>, execs: <n> (<rate>/sec), cover: <n>, crashers: <n>`
  std::string Format() const;
};

struct FoundCrash {
  std::string signature;
  CrashKind kind;
  std::string message;
  Millis found_at{0};
  Bytes data;
};

struct RunSummary {
  StatsSnapshot final_stats;
  std::vector<StatsSnapshot> snapshots;
  std::vector<FoundCrash> new_crashes;  // signatures not suppressed before this run, in discovery order
  std::size_t seed_count = 0;
};

// Runs the loop until the budget is spent or `stop` becomes true. Stats lines
// go to `stats_out` when given. Throws ConfigError or StoreError before the
// first execution if the target or directories are unusable.
RunSummary Fuzz(const FuzzerConfig& config, std::ostream* stats_out = nullptr,
                const std::atomic<bool>* stop = nullptr);

struct BenchRow {
  int id = 0;
  std::size_t corpus = 0;
  std::uint64_t execs = 0;
  std::size_t cover = 0;
  std::optional<Millis> time1;
  std::optional<Millis> time2;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  // Aligned table with header `ID corpus execs cover time-1 time-2`.
  std::string FormatTable() const;
  // `id,corpus,execs,cover,time1_ms,time2_ms`; missing times are empty.
  std::string FormatCsv() const;
};

// Fuzzes once per operator with only that operator enabled. Each run uses a
// fresh directory under <config.dir>/bench/op-<id>. `per_op` replaces the
// configured budget.
BenchReport BenchMutators(const FuzzerConfig& config, const Budget& per_op, std::ostream* progress = nullptr,
                          const std::atomic<bool>* stop = nullptr);

// 1m6s / 3h45m / 12.5s / 350ms
std::string FormatDuration(Millis d);

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_FUZZER_H_
