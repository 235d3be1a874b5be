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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ledgerfuzz/fuzzer.h"
#include "test_util.h"

namespace ledgerfuzz {
namespace {

using testing::SnapshotTree;
using testing::TempDir;

FuzzerConfig Config(const std::string& target, const std::filesystem::path& dir, std::uint64_t execs) {
  FuzzerConfig c;
  c.target = target;
  c.dir = dir;
  c.budget.max_execs = execs;
  return c;
}

TEST(FormatDurationTest, GoStyle) {
  EXPECT_EQ(FormatDuration(Millis(350)), "350ms");
  EXPECT_EQ(FormatDuration(Millis(12'500)), "12.5s");
  EXPECT_EQ(FormatDuration(Millis(3'000)), "3s");
  EXPECT_EQ(FormatDuration(Millis(66'000)), "1m6s");
  EXPECT_EQ(FormatDuration(Millis(3 * 3'600'000 + 45 * 60'000)), "3h45m");
}

TEST(StatsSnapshotTest, LineFormat) {
  StatsSnapshot s;
  s.elapsed = Millis(6'200);
  s.corpus = 12;
  s.execs = 5000;
  s.execs_per_sec = 806.4;
  s.cover = 40;
  s.crashers = 2;
  EXPECT_EQ(s.Format(), "6s: corpus: 12, execs: 5000 (806/sec), cover: 40, crashers: 2");
}

TEST(ExecutorTest, TimeoutBecomesACrashWithEmptyCoverage) {
  TargetSpec t = TargetExample01();
  t.contract.invoke = [](StubHandle& stub, ArgsView) -> ContractResponse {
    for (;;) stub.Cover(1);
  };
  Executor executor(t, Millis(20));
  const ExecResult r = executor.Execute(Encode(0, Args{"1"}));
  ASSERT_TRUE(r.crash);
  EXPECT_EQ(r.crash->kind, CrashKind::kTimeout);
  EXPECT_EQ(executor.coverage().CoverCount(), 0u);
}

TEST(ExecutorTest, StdExceptionsBecomeAborts) {
  TargetSpec t = TargetExample01();
  t.contract.invoke = [](StubHandle&, ArgsView) -> ContractResponse { throw std::out_of_range("index 4"); };
  Executor executor(t, Millis(1000));
  const ExecResult r = executor.Execute(Encode(0, Args{"1"}));
  ASSERT_TRUE(r.crash);
  EXPECT_EQ(r.crash->kind, CrashKind::kAbort);
  EXPECT_NE(r.crash->message.find("index 4"), std::string::npos);
}

TEST(ExecutorTest, FixtureFailureIsReported) {
  TargetSpec t = TargetExample01();
  t.fixture = {"only-one"};
  Executor executor(t, Millis(1000));
  const ExecResult r = executor.Execute(Encode(0, Args{"1"}));
  ASSERT_TRUE(r.crash);
  EXPECT_NE(r.crash->message.find("fixture"), std::string::npos);
  EXPECT_THROW(ValidateTarget(t), ConfigError);
}

TEST(ConfigTest, ValidationErrors) {
  TempDir dir;
  FuzzerConfig c = Config("example01", dir.path(), 10);
  c.workers = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = Config("example01", dir.path(), 10);
  c.mutators.enabled.clear();
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_THROW(Fuzz(Config("nope", dir.path(), 10)), ConfigError);
}

TEST(FuzzTest, ZeroBudgetOnlySeeds) {
  TempDir dir;
  const RunSummary s = Fuzz(Config("foodtrace", dir.path(), 0));
  EXPECT_EQ(s.final_stats.execs, 0u);
  EXPECT_EQ(s.final_stats.corpus, s.seed_count);
  EXPECT_GE(s.seed_count, 3u);
  EXPECT_TRUE(s.new_crashes.empty());
}

TEST(FuzzTest, UnwritableDirectoryFailsBeforeRunning) {
  TempDir dir;
  std::ofstream(dir.path() / "f") << "x";
  EXPECT_THROW(Fuzz(Config("example01", dir.path() / "f" / "run", 10)), StoreError);
}

TEST(FuzzTest, SameSeedSameCorpusAndCrashes) {
  TempDir a, b;
  const RunSummary ra = Fuzz(Config("foodtrace", a.path(), 10'000));
  const RunSummary rb = Fuzz(Config("foodtrace", b.path(), 10'000));
  EXPECT_EQ(ra.final_stats.execs, 10'000u);
  EXPECT_EQ(SnapshotTree(a.path()), SnapshotTree(b.path()));
  ASSERT_EQ(ra.new_crashes.size(), rb.new_crashes.size());
  for (std::size_t i = 0; i < ra.new_crashes.size(); ++i) {
    EXPECT_EQ(ra.new_crashes[i].signature, rb.new_crashes[i].signature);
  }
}

TEST(FuzzTest, DifferentSeedsDiverge) {
  TempDir a, b;
  FuzzerConfig ca = Config("foodtrace", a.path(), 5'000);
  FuzzerConfig cb = Config("foodtrace", b.path(), 5'000);
  cb.seed = 2;
  Fuzz(ca);
  Fuzz(cb);
  EXPECT_NE(SnapshotTree(a.path()), SnapshotTree(b.path()));
}

TEST(FuzzTest, CrashBookkeepingAndResume) {
  TempDir dir;
  const RunSummary first = Fuzz(Config("foodtrace", dir.path(), 20'000));
  ASSERT_FALSE(first.new_crashes.empty());
  const auto count = [&](const char* sub) {
    std::size_t n = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir.path() / sub)) n += e.is_regular_file() ? 1 : 0;
    return n;
  };
  EXPECT_EQ(count("crashers"), 3 * count("suppressions"));
  EXPECT_EQ(count("suppressions"), first.new_crashes.size());

  const RunSummary second = Fuzz(Config("foodtrace", dir.path(), 20'000));
  EXPECT_GE(second.final_stats.corpus, first.final_stats.corpus);
  for (const FoundCrash& c : second.new_crashes) {
    for (const FoundCrash& old : first.new_crashes) EXPECT_NE(c.signature, old.signature);
  }
  EXPECT_EQ(count("crashers"), 3 * count("suppressions"));
  EXPECT_EQ(count("suppressions"), first.new_crashes.size() + second.new_crashes.size());
}

TEST(FuzzTest, SnapshotsAreMonotoneAndReported) {
  TempDir dir;
  FuzzerConfig c = Config("marbles", dir.path(), 0);
  c.budget.max_execs.reset();
  c.budget.max_time = Millis(600);
  c.stats_interval = Millis(100);
  std::ostringstream out;
  const RunSummary s = Fuzz(c, &out);
  ASSERT_GE(s.snapshots.size(), 3u);
  for (std::size_t i = 1; i < s.snapshots.size(); ++i) {
    EXPECT_GE(s.snapshots[i].cover, s.snapshots[i - 1].cover);
    EXPECT_GE(s.snapshots[i].corpus, s.snapshots[i - 1].corpus);
    EXPECT_GE(s.snapshots[i].execs, s.snapshots[i - 1].execs);
  }
  EXPECT_NE(out.str().find("corpus: "), std::string::npos);
  EXPECT_NE(out.str().find("/sec), cover: "), std::string::npos);
}

TEST(FuzzTest, StopFlagEndsTheRun) {
  TempDir dir;
  FuzzerConfig c = Config("example01", dir.path(), 0);
  c.budget.max_execs.reset();
  std::atomic<bool> stop{true};
  const RunSummary s = Fuzz(c, nullptr, &stop);
  EXPECT_EQ(s.final_stats.execs, 0u);
}

TEST(FuzzTest, SeveralWorkersRespectTheBudget) {
  TempDir dir;
  FuzzerConfig c = Config("smallbank", dir.path(), 30'000);
  c.workers = 3;
  const RunSummary s = Fuzz(c);
  EXPECT_EQ(s.final_stats.execs, 30'000u);
  EXPECT_EQ(s.new_crashes.size(), 1u);
}

TEST(BenchTest, OneExecPerOperatorGivesTwentyRows) {
  TempDir dir;
  FuzzerConfig c = Config("marbles", dir.path(), 0);
  Budget per_op;
  per_op.max_execs = 1;
  const BenchReport report = BenchMutators(c, per_op);
  ASSERT_EQ(report.rows.size(), 20u);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    EXPECT_EQ(report.rows[i].id, static_cast<int>(i));
    EXPECT_EQ(report.rows[i].execs, 1u);
  }
  EXPECT_TRUE(std::filesystem::is_directory(dir.path() / "bench" / "op-19" / "corpus"));
}

TEST(BenchTest, RejectsNonPositiveBudget) {
  TempDir dir;
  EXPECT_THROW(BenchMutators(Config("marbles", dir.path(), 0), Budget{}), ConfigError);
  Budget zero;
  zero.max_execs = 0;
  EXPECT_THROW(BenchMutators(Config("marbles", dir.path(), 0), zero), ConfigError);
}

TEST(BenchReportTest, TableAndCsvShape) {
  BenchReport report;
  report.rows.push_back({0, 10, 500, 12, Millis(66'000), std::nullopt});
  report.rows.push_back({1, 3, 7, 2, std::nullopt, std::nullopt});
  const std::string table = report.FormatTable();
  std::istringstream lines(table);
  std::string header, row0, row1;
  std::getline(lines, header);
  std::getline(lines, row0);
  std::getline(lines, row1);
  EXPECT_EQ(header.find("ID"), 0u);
  for (const char* col : {"corpus", "execs", "cover", "time-1", "time-2"}) {
    EXPECT_NE(header.find(col), std::string::npos) << col;
  }
  EXPECT_NE(row0.find("1m6s"), std::string::npos);
  EXPECT_NE(row1.find("\xE2\x80\x94"), std::string::npos);
  EXPECT_EQ(report.FormatCsv(), "id,corpus,execs,cover,time1_ms,time2_ms\n0,10,500,12,66000,\n1,3,7,2,,\n");
}

}  // namespace
}  // namespace ledgerfuzz
