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

// ledgerfuzz command-line tool.
//
// Exit codes: 0 when the command ran and found no new crash signature, 1 when
// it did (or, for `run`, when the replayed input crashes), 2 for usage and
// configuration errors.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ledgerfuzz/fuzzer.h"

namespace lf = ledgerfuzz;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitCrash = 1;
constexpr int kExitUsage = 2;

std::atomic<bool> g_stop{false};

extern "C" void OnSignal(int) { g_stop.store(true); }

std::string DefaultDir() {
  const char* env = std::getenv("LEDGERFUZZ_DIR");
  return env != nullptr && *env != '\0' ? env : "ledgerfuzz-out";
}

std::string TargetList() {
  std::string out;
  for (const std::string& name : lf::TargetNames()) out += (out.empty() ? "" : ", ") + name;
  return out;
}

lf::TargetSpec RequireTarget(const std::string& name) {
  auto target = lf::FindTarget(name);
  if (!target) throw lf::ConfigError("unknown target '" + name + "'; valid targets: " + TargetList());
  return *target;
}

// Options shared by fuzz and bench-mutators.
struct LoopOptions {
  std::string target;
  std::uint64_t seed = 1;
  std::string mutators = "default";
  int workers = 1;
  std::string dir = DefaultDir();
  std::uint64_t exec_timeout_ms = 10'000;
  double stats_secs = 3.0;
  std::size_t max_len = 4096;
  std::size_t stack_max = 4;
  std::size_t random_seeds = 8;

  void Register(CLI::App& cmd) {
    cmd.add_option("--target", target, "Registered target name (see list-targets)")->required();
    cmd.add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd.add_option("--mutators", mutators, "Enabled operators: 'all', 'default' (all but 1 and 19) or ids like 0,2,5")
        ->capture_default_str();
    cmd.add_option("--workers", workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--dir", dir, "Run directory (env LEDGERFUZZ_DIR)")->capture_default_str();
    cmd.add_option("--exec-timeout-ms", exec_timeout_ms, "Per-execution timeout in milliseconds")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--stats-secs", stats_secs, "Seconds between stats lines")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-len", max_len, "Maximum input length in bytes")->capture_default_str()->check(CLI::PositiveNumber);
    cmd.add_option("--stack-max", stack_max, "Maximum stacked mutations per input")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--random-seeds", random_seeds, "Random typed seed inputs added to the unit cases")
        ->capture_default_str();
  }

  lf::FuzzerConfig ToConfig() const {
    lf::FuzzerConfig config;
    RequireTarget(target);
    config.target = target;
    config.seed = seed;
    if (mutators != "default") {
      try {
        config.mutators.enabled = lf::ParseMutatorList(mutators);
      } catch (const std::invalid_argument& e) {
        throw lf::ConfigError("--mutators: " + std::string(e.what()));
      }
    }
    config.mutators.max_input_len = max_len;
    config.mutators.stack_max = stack_max;
    config.workers = workers;
    config.dir = dir;
    config.exec_timeout = lf::Millis(exec_timeout_ms);
    config.stats_interval = lf::Millis(static_cast<std::int64_t>(stats_secs * 1000));
    config.random_seeds = random_seeds;
    config.Validate();
    return config;
  }
};

int RunFuzz(const LoopOptions& opts, std::optional<std::uint64_t> budget_execs, std::optional<double> budget_secs) {
  lf::FuzzerConfig config = opts.ToConfig();
  config.budget.max_execs = budget_execs;
  if (budget_secs) config.budget.max_time = lf::Millis(static_cast<std::int64_t>(*budget_secs * 1000));

  const lf::RunSummary summary = lf::Fuzz(config, &std::cout, &g_stop);
  for (const lf::FoundCrash& c : summary.new_crashes) {
    std::cout << "new crash " << c.signature.substr(0, 16) << " after " << lf::FormatDuration(c.found_at) << ": "
              << lf::CrashKindName(c.kind) << ": " << c.message << "\n";
  }
  if (g_stop.load()) std::cout << "interrupted\n";
  std::cout.flush();
  return summary.new_crashes.empty() ? kExitClean : kExitCrash;
}

int RunReplay(const std::string& target_name, const std::string& file, lf::Millis timeout) {
  const lf::TargetSpec target = RequireTarget(target_name);
  std::string raw;
  try {
    raw = lf::ReadFile(file);
  } catch (const std::exception& e) {
    throw lf::ConfigError(e.what());
  }
  lf::Executor executor(target, timeout);
  const lf::ExecResult result = executor.Execute(lf::ToBytes(raw));

  std::cout << "input: " << lf::Quote(raw) << "\n";
  if (const auto decoded = lf::Decode(lf::ToBytes(raw), target.groups)) {
    std::cout << "group: " << target.groups[decoded->group].name << "\n";
    for (std::size_t i = 0; i < decoded->params.size(); ++i) {
      std::cout << "param " << i << ": " << lf::Quote(decoded->params[i]) << "\n";
    }
  } else {
    std::cout << "group: none (empty input)\n";
  }
  int code = kExitClean;
  if (result.crash) {
    std::cout << "verdict: crash\n"
              << "kind: " << lf::CrashKindName(result.crash->kind) << "\n"
              << "message: " << result.crash->message << "\n"
              << "signature: " << result.crash->signature << "\n";
    if (!result.crash->detail.empty()) std::cout << result.crash->detail;
    code = kExitCrash;
  } else {
    std::cout << "verdict: " << static_cast<int>(*result.verdict) << " (clean)\n";
  }
  std::cout << "state:\n" << executor.ledger().DumpState();
  return code;
}

int RunBench(const LoopOptions& opts, std::optional<double> per_op_secs, std::optional<std::uint64_t> per_op_execs,
             const std::string& csv_path) {
  lf::FuzzerConfig config = opts.ToConfig();
  lf::Budget per_op;
  if (per_op_secs) per_op.max_time = lf::Millis(static_cast<std::int64_t>(*per_op_secs * 1000));
  per_op.max_execs = per_op_execs;
  if (!per_op.max_time && !per_op.max_execs) throw lf::ConfigError("give --per-op-secs or --per-op-execs");

  const lf::BenchReport report = lf::BenchMutators(config, per_op, &std::cerr, &g_stop);
  std::cout << report.FormatTable();

  const std::filesystem::path csv =
      csv_path.empty() ? std::filesystem::path(config.dir) / "bench" / "report.csv" : std::filesystem::path(csv_path);
  lf::WriteFileAtomic(csv, report.FormatCsv());
  std::cerr << "csv written to " << csv.string() << "\n";

  for (const lf::BenchRow& row : report.rows) {
    if (row.time1) return kExitCrash;
  }
  return kExitClean;
}

int RunReport(const std::string& dir) {
  const lf::StorePaths paths = lf::StorePaths::Under(dir);
  if (!std::filesystem::is_directory(paths.root)) throw lf::ConfigError("no such run directory: " + dir);

  const auto files_in = [](const std::filesystem::path& p) {
    std::vector<std::filesystem::path> out;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(p, ec)) {
      if (e.is_regular_file()) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  const auto corpus = files_in(paths.corpus);
  const auto crashers = files_in(paths.crashers);
  const auto suppressions = files_in(paths.suppressions);
  std::cout << "corpus: " << corpus.size() << "\n"
            << "crasher files: " << crashers.size() << "\n"
            << "suppressions: " << suppressions.size() << "\n";
  for (const auto& s : suppressions) {
    std::string text = lf::ReadFile(s);
    while (!text.empty() && text.back() == '\n') text.pop_back();
    std::cout << "  " << s.filename().string().substr(0, 16) << "  " << text << "\n";
  }
  for (const auto& c : crashers) {
    if (c.extension() != ".output") continue;
    const std::string output = lf::ReadFile(c);
    std::cout << "crasher " << c.stem().string() << "\n";
    std::istringstream lines(output);
    std::string line;
    for (int i = 0; i < 2 && std::getline(lines, line); ++i) std::cout << "  " << line << "\n";
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage-guided mutation fuzzer for contracts on a mock key-value ledger"};
  app.require_subcommand(1);

  LoopOptions fuzz_opts;
  std::optional<std::uint64_t> budget_execs;
  std::optional<double> budget_secs;
  CLI::App* fuzz = app.add_subcommand("fuzz", "Run the fuzzing loop until the budget is spent");
  fuzz_opts.Register(*fuzz);
  fuzz->add_option("--budget-execs", budget_execs, "Stop after this many executions (default: unlimited)");
  fuzz->add_option("--budget-secs", budget_secs, "Stop after this many seconds (default: unlimited)")
      ->check(CLI::PositiveNumber);

  std::string run_target;
  std::string run_file;
  std::uint64_t run_timeout_ms = 10'000;
  CLI::App* run = app.add_subcommand("run", "Replay one input and print the verdict, crash and state dump");
  run->add_option("--target", run_target, "Registered target name")->required();
  run->add_option("--exec-timeout-ms", run_timeout_ms, "Execution timeout in milliseconds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("file", run_file, "Input file")->required();

  LoopOptions bench_opts;
  std::optional<double> per_op_secs;
  std::optional<std::uint64_t> per_op_execs;
  std::string csv_path;
  CLI::App* bench = app.add_subcommand("bench-mutators", "Fuzz once per mutation operator and report finds");
  bench_opts.Register(*bench);
  bench->add_option("--per-op-secs", per_op_secs, "Time budget per operator")->check(CLI::PositiveNumber);
  bench->add_option("--per-op-execs", per_op_execs, "Execution budget per operator")->check(CLI::PositiveNumber);
  bench->add_option("--csv", csv_path, "CSV output path (default: <dir>/bench/report.csv)");

  std::string report_dir = DefaultDir();
  CLI::App* report = app.add_subcommand("report", "Summarize crashers and suppressions of a run directory");
  report->add_option("--dir", report_dir, "Run directory (env LEDGERFUZZ_DIR)")->capture_default_str();

  CLI::App* list = app.add_subcommand("list-targets", "Print registered target names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);

  try {
    if (*fuzz) return RunFuzz(fuzz_opts, budget_execs, budget_secs);
    if (*run) return RunReplay(run_target, run_file, lf::Millis(run_timeout_ms));
    if (*bench) return RunBench(bench_opts, per_op_secs, per_op_execs, csv_path);
    if (*report) return RunReport(report_dir);
    if (*list) {
      for (const std::string& name : lf::TargetNames()) std::cout << name << "\n";
      return kExitClean;
    }
  } catch (const lf::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lf::StoreError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
