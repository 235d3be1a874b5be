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

#include "ledgerfuzz/fuzzer.h"

#include <algorithm>
#include <condition_variable>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

namespace ledgerfuzz {

namespace {

constexpr std::string_view kNotFound = "\xE2\x80\x94";  // em dash

Millis Since(Clock::time_point start) {
  return std::chrono::duration_cast<Millis>(Clock::now() - start);
}

}  // namespace

Executor::Executor(const TargetSpec& target, Millis timeout) : target_(target), timeout_(timeout) {}

ExecResult Executor::Execute(ByteView input, Millis found_at) {
  coverage_.Clear();
  ledger_ = MockLedger();
  ExecResult result;
  result.run_coverage = &coverage_;

  const auto crash = [&](CrashKind kind, std::string message, std::string detail = {}) {
    result.crash = MakeCrashReport(Bytes(input.begin(), input.end()), kind, std::move(message), std::move(detail),
                                   found_at);
  };

  const auto decoded = Decode(input, target_.groups);
  if (!decoded) {
    result.verdict = HarnessVerdict::kClean;
    return result;
  }

  ExecHooks hooks{&coverage_, Clock::now() + timeout_};
  TxIdSource ids;
  try {
    const ContractResponse init = ledger_.MockInit(ids.Next(), target_.fixture, target_.contract, hooks);
    if (!init.ok()) {
      crash(CrashKind::kAbort, "fixture init failed: " + init.message);
      return result;
    }
    const TestGroup& group = target_.groups[decoded->group];
    const GroupResult r = RunGroup(ledger_, target_.contract, group, decoded->params, ids, hooks);
    if (r.verdict == HarnessVerdict::kClean) {
      result.verdict = HarnessVerdict::kClean;
    } else {
      crash(CrashKind::kOracleMismatch, MismatchMessage(group, r), MismatchDetail(group, decoded->params, r));
    }
  } catch (const ExecTimeout&) {
    coverage_.Clear();
    crash(CrashKind::kTimeout, "execution exceeded " + std::to_string(timeout_.count()) + "ms");
  } catch (const ContractAbort& e) {
    crash(CrashKind::kAbort, e.what());
  } catch (const std::exception& e) {
    crash(CrashKind::kAbort, std::string("uncaught exception: ") + e.what());
  } catch (...) {
    crash(CrashKind::kAbort, "uncaught non-standard exception");
  }
  return result;
}

void ValidateTarget(const TargetSpec& target) {
  if (target.groups.empty()) throw ConfigError("target " + target.name() + " has no test groups");
  if (target.groups.size() > 256) throw ConfigError("target " + target.name() + " has more than 256 groups");
  for (const TestGroup& g : target.groups) {
    if (g.arity < 1 || g.key_index >= g.arity) throw ConfigError("group " + g.name + " has a bad arity or key index");
    if (!g.compare) throw ConfigError("group " + g.name + " has no compare function");
  }
  MockLedger ledger;
  const ContractResponse init = ledger.MockInit("validate", target.fixture, target.contract);
  if (!init.ok()) throw ConfigError("target " + target.name() + " fixture does not initialize: " + init.message);
  Rng rng(0);
  GenSeedCorpus(target.groups, target.seeds, rng, 0);
}

Dictionary BuildDictionary(const TargetSpec& target) {
  Dictionary dict;
  for (const std::string& lit : target.literals) dict.Add(lit);
  for (const UnitCase& uc : target.seeds) {
    for (std::size_t i = 1; i < uc.call.size(); ++i) dict.Add(uc.call[i]);
  }
  return dict;
}

void FuzzerConfig::Validate() const {
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (budget.max_time && budget.max_time->count() <= 0) throw ConfigError("time budget must be positive");
  if (exec_timeout.count() <= 0) throw ConfigError("exec timeout must be positive");
  if (stats_interval.count() <= 0) throw ConfigError("stats interval must be positive");
  try {
    mutators.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string StatsSnapshot::Format() const {
  std::ostringstream out;
  out << elapsed.count() / 1000 << "s: corpus: " << corpus << ", execs: " << execs << " ("
      << static_cast<std::uint64_t>(execs_per_sec) << "/sec), cover: " << cover << ", crashers: " << crashers;
  return out.str();
}

namespace {

class Session {
 public:
  Session(const FuzzerConfig& config, const TargetSpec& target, CorpusStore& store, const std::atomic<bool>* stop)
      : config_(config), target_(target), store_(store), stop_(stop), dict_(BuildDictionary(target)) {}

  void SetTriage(std::size_t count) { triage_count_ = count; }

  void Start() { start_ = Clock::now(); }

  void Worker(Rng rng) {
    Executor executor(target_, config_.exec_timeout);
    while (Reserve()) {
      const std::size_t triage = next_triage_.fetch_add(1);
      if (triage < triage_count_) {
        const CorpusEntry entry = store_.entry(triage);
        const ExecResult r = executor.Execute(entry.data, Since(start_));
        Absorb(r, executor.coverage(), std::nullopt, std::nullopt, entry.data);
      } else {
        const CorpusEntry parent = store_.Pick(rng);
        std::vector<MutatorId> applied;
        const auto donor = [&]() -> std::optional<Bytes> {
          const std::size_t n = store_.size();
          if (n < 2) return std::nullopt;
          std::size_t id = rng.Below(n);
          if (id == parent.id) id = (id + 1) % n;
          return store_.entry(id).data;
        };
        Bytes input = Mutate(parent.data, rng, donor, dict_, config_.mutators, &applied);
        const ExecResult r = executor.Execute(input, Since(start_));
        Absorb(r, executor.coverage(), parent.id, applied.back(), input);
      }
      ++execs_;
    }
  }

  StatsSnapshot Snapshot() {
    StatsSnapshot s;
    s.elapsed = Since(start_);
    s.corpus = store_.size();
    s.execs = execs_.load();
    const double secs = std::max<double>(1e-3, static_cast<double>(s.elapsed.count()) / 1000.0);
    s.execs_per_sec = static_cast<double>(s.execs) / secs;
    {
      std::lock_guard lock(coverage_mu_);
      s.cover = global_.CoverCount();
    }
    s.crashers = store_.suppression_count();
    return s;
  }

  std::vector<FoundCrash> TakeNewCrashes() {
    std::lock_guard lock(crash_mu_);
    return new_crashes_;
  }

 private:
  bool Reserve() {
    if (stop_ != nullptr && stop_->load()) return false;
    if (config_.budget.max_time && Since(start_) >= *config_.budget.max_time) return false;
    if (!config_.budget.max_execs) return true;
    std::uint64_t cur = reserved_.load();
    while (cur < *config_.budget.max_execs) {
      if (reserved_.compare_exchange_weak(cur, cur + 1)) return true;
    }
    return false;
  }

  // Merges coverage and feeds the outcome back into the corpus. Triage runs
  // (parent == nullopt) only contribute coverage and crashes.
  void Absorb(const ExecResult& r, const CoverageMap& coverage, std::optional<std::size_t> parent,
              std::optional<MutatorId> op, const Bytes& input) {
    const bool timed_out = r.crash && r.crash->kind == CrashKind::kTimeout;
    bool new_cover = false;
    if (!timed_out) {
      std::lock_guard lock(coverage_mu_);
      new_cover = IsNewCoverage(global_, coverage);
    }

    if (r.crash) {
      const bool recorded = store_.RecordCrash(*r.crash);
      if (recorded) {
        std::lock_guard lock(crash_mu_);
        new_crashes_.push_back({r.crash->signature, r.crash->kind, r.crash->message, r.crash->found_at, r.crash->data});
      }
      if (!parent) return;
      if (r.crash->kind == CrashKind::kOracleMismatch) {
        if (recorded || new_cover) store_.Add(input, AddCause::kOracleSuspect, parent, op);
        store_.Reward(*parent, Outcome::kSuspect);
      } else if (r.crash->kind == CrashKind::kAbort) {
        store_.Reward(*parent, Outcome::kSuspect);
      } else {
        store_.Reward(*parent, Outcome::kNothing);
      }
      return;
    }

    if (!parent) return;
    if (new_cover) store_.Add(input, AddCause::kNewCoverage, parent, op);
    store_.Reward(*parent, new_cover ? Outcome::kNewCoverage : Outcome::kNothing);
  }

  const FuzzerConfig& config_;
  const TargetSpec& target_;
  CorpusStore& store_;
  const std::atomic<bool>* stop_;
  Dictionary dict_;
  Clock::time_point start_ = Clock::now();

  std::size_t triage_count_ = 0;
  std::atomic<std::size_t> next_triage_{0};
  std::atomic<std::uint64_t> reserved_{0};
  std::atomic<std::uint64_t> execs_{0};

  std::mutex coverage_mu_;
  CoverageMap global_;
  std::mutex crash_mu_;
  std::vector<FoundCrash> new_crashes_;
};

}  // namespace

RunSummary Fuzz(const FuzzerConfig& config, std::ostream* stats_out, const std::atomic<bool>* stop) {
  config.Validate();
  const std::optional<TargetSpec> target = FindTarget(config.target);
  if (!target) throw ConfigError("unknown target '" + config.target + "'");
  ValidateTarget(*target);

  CorpusStore store(config.dir, config.mutators.max_input_len);
  store.Load();

  Rng rng(config.seed);
  Rng seed_rng = rng.Fork(0);
  RunSummary summary;
  for (Bytes& seed : GenSeedCorpus(target->groups, target->seeds, seed_rng, config.random_seeds)) {
    if (store.Add(std::move(seed), AddCause::kSeed)) ++summary.seed_count;
  }

  Session session(config, *target, store, stop);
  session.SetTriage(store.size());
  session.Start();

  std::mutex done_mu;
  std::condition_variable done_cv;
  int running = config.workers;
  {
    std::vector<std::jthread> workers;
    for (int w = 0; w < config.workers; ++w) {
      workers.emplace_back([&, worker_rng = rng.Fork(static_cast<std::uint64_t>(w) + 1)]() mutable {
        session.Worker(std::move(worker_rng));
        std::lock_guard lock(done_mu);
        --running;
        done_cv.notify_all();
      });
    }
    std::unique_lock lock(done_mu);
    while (!done_cv.wait_for(lock, config.stats_interval, [&] { return running == 0; })) {
      lock.unlock();
      StatsSnapshot s = session.Snapshot();
      if (stats_out != nullptr) *stats_out << s.Format() << std::endl;
      summary.snapshots.push_back(s);
      lock.lock();
    }
  }

  summary.final_stats = session.Snapshot();
  summary.snapshots.push_back(summary.final_stats);
  if (stats_out != nullptr) *stats_out << summary.final_stats.Format() << std::endl;
  summary.new_crashes = session.TakeNewCrashes();
  return summary;
}

std::string FormatDuration(Millis d) {
  const auto ms = d.count();
  char buf[32];
  if (ms < 1000) {
    std::snprintf(buf, sizeof(buf), "%lldms", static_cast<long long>(ms));
  } else if (ms < 60'000) {
    if (ms % 1000 == 0) {
      std::snprintf(buf, sizeof(buf), "%llds", static_cast<long long>(ms / 1000));
    } else {
      std::snprintf(buf, sizeof(buf), "%.1fs", static_cast<double>(ms) / 1000.0);
    }
  } else if (ms < 3'600'000) {
    std::snprintf(buf, sizeof(buf), "%lldm%llds", static_cast<long long>(ms / 60'000),
                  static_cast<long long>(ms % 60'000 / 1000));
  } else {
    std::snprintf(buf, sizeof(buf), "%lldh%lldm", static_cast<long long>(ms / 3'600'000),
                  static_cast<long long>(ms % 3'600'000 / 60'000));
  }
  return buf;
}

std::string BenchReport::FormatTable() const {
  const std::vector<std::string> header = {"ID", "corpus", "execs", "cover", "time-1", "time-2"};
  std::vector<std::vector<std::string>> cells;
  const auto time = [](const std::optional<Millis>& t) { return t ? FormatDuration(*t) : std::string(kNotFound); };
  for (const BenchRow& r : rows) {
    cells.push_back({std::to_string(r.id), std::to_string(r.corpus), std::to_string(r.execs), std::to_string(r.cover),
                     time(r.time1), time(r.time2)});
  }
  // Display width: the em dash is one column but three bytes.
  const auto width = [](const std::string& s) { return s == kNotFound ? std::size_t{1} : s.size(); };
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : cells) widths[c] = std::max(widths[c], width(row[c]));
  }
  std::string out;
  const auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += "  ";
      out += std::string(widths[c] - width(row[c]), ' ');
      out += row[c];
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : cells) emit(row);
  return out;
}

std::string BenchReport::FormatCsv() const {
  std::string out = "id,corpus,execs,cover,time1_ms,time2_ms\n";
  const auto time = [](const std::optional<Millis>& t) { return t ? std::to_string(t->count()) : std::string(); };
  for (const BenchRow& r : rows) {
    out += std::to_string(r.id) + "," + std::to_string(r.corpus) + "," + std::to_string(r.execs) + "," +
           std::to_string(r.cover) + "," + time(r.time1) + "," + time(r.time2) + "\n";
  }
  return out;
}

BenchReport BenchMutators(const FuzzerConfig& config, const Budget& per_op, std::ostream* progress,
                          const std::atomic<bool>* stop) {
  if ((!per_op.max_execs && !per_op.max_time) || (per_op.max_execs && *per_op.max_execs == 0) ||
      (per_op.max_time && per_op.max_time->count() <= 0)) {
    throw ConfigError("per-operator budget must be positive");
  }
  BenchReport report;
  for (int id = 0; id < kMutatorCount; ++id) {
    FuzzerConfig cfg = config;
    cfg.mutators.enabled = {MutatorFromInt(id)};
    cfg.budget = per_op;
    cfg.dir = config.dir / "bench" / ("op-" + std::to_string(id));
    std::error_code ec;
    std::filesystem::remove_all(cfg.dir, ec);
    const RunSummary s = Fuzz(cfg, nullptr, stop);

    BenchRow row;
    row.id = id;
    row.corpus = s.final_stats.corpus;
    row.execs = s.final_stats.execs;
    row.cover = s.final_stats.cover;
    if (!s.new_crashes.empty()) row.time1 = s.new_crashes[0].found_at;
    if (s.new_crashes.size() > 1) row.time2 = s.new_crashes[1].found_at;
    report.rows.push_back(row);
    if (progress != nullptr) {
      *progress << "op " << id << " (" << MutatorName(cfg.mutators.enabled.front()) << "): " << s.final_stats.Format()
                << std::endl;
    }
  }
  return report;
}

}  // namespace ledgerfuzz
