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

#include <cmath>
#include <fstream>

#include "ledgerfuzz/corpus_store.h"
#include "test_util.h"

namespace ledgerfuzz {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

std::size_t FileCount(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file() ? 1 : 0;
  return n;
}

TEST(NormalizeTest, NumbersAndHexCollapse) {
  EXPECT_EQ(NormalizeMessage("balance 2147483647 + deposit 1 = -2147483648"), "balance N + deposit N = N");
  EXPECT_EQ(NormalizeMessage("at 0xdeadBEEF and 0x1"), "at 0x? and 0x?");
  EXPECT_EQ(NormalizeMessage("a-b x-1 v2"), "a-b xN vN");
  EXPECT_EQ(NormalizeMessage("0x"), "N" "x");
  EXPECT_EQ(NormalizeMessage("no digits"), "no digits");
}

TEST(SignatureTest, SameShapeSameSignature) {
  EXPECT_EQ(CrashSignature(CrashKind::kAbort, "overflow 1 + 2"), CrashSignature(CrashKind::kAbort, "overflow 10 + 20"));
  EXPECT_NE(CrashSignature(CrashKind::kAbort, "x"), CrashSignature(CrashKind::kTimeout, "x"));
  EXPECT_EQ(SignatureText(CrashKind::kOracleMismatch, "field 3"), "OracleMismatch: field N");
  EXPECT_EQ(CrashSignature(CrashKind::kAbort, "m").size(), 64u);
}

TEST(CrashKindTest, NamesRoundTrip) {
  for (CrashKind k : {CrashKind::kAbort, CrashKind::kOracleMismatch, CrashKind::kTimeout}) {
    EXPECT_EQ(ParseCrashKind(CrashKindName(k)), k);
  }
  EXPECT_FALSE(ParseCrashKind("Panic"));
}

TEST(PriorityTest, InitialAndRewards) {
  EXPECT_EQ(InitialPriority(AddCause::kSeed), 1.0);
  EXPECT_EQ(InitialPriority(AddCause::kNewCoverage), 2.0);
  EXPECT_EQ(InitialPriority(AddCause::kOracleSuspect), 4.0);
  EXPECT_EQ(RewardedPriority(1.0, Outcome::kNewCoverage), 2.0);
  EXPECT_EQ(RewardedPriority(1.0, Outcome::kSuspect), 2.0);
  EXPECT_DOUBLE_EQ(RewardedPriority(1.0, Outcome::kNothing), 0.95);
  EXPECT_EQ(RewardedPriority(16.0, Outcome::kNewCoverage), kMaxPriority);
  EXPECT_EQ(RewardedPriority(kMinPriority, Outcome::kNothing), kMinPriority);
}

TEST(PickWeightedTest, HeavyEntryDrawnThreeQuartersOfTheTime) {
  const std::vector<double> weights = {1.0, 3.0};
  Rng rng(99);
  int heavy = 0;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) heavy += PickWeighted(weights, rng) == 1 ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(heavy) / draws, 0.75, 0.01);
}

TEST(PickWeightedTest, UniformWeightsPassChiSquare) {
  const std::size_t k = 10;
  const std::vector<double> weights(k, 1.0);
  Rng rng(1234);
  std::vector<int> counts(k);
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) ++counts[PickWeighted(weights, rng)];
  const double expected = static_cast<double>(draws) / k;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double dof = k - 1;
  EXPECT_LT(chi2, dof + 5 * std::sqrt(2 * dof));
}

class CorpusStoreTest : public ::testing::Test {
 protected:
  TempDir dir_;
};

TEST_F(CorpusStoreTest, CreatesLayout) {
  CorpusStore store(dir_.path() / "run", 4096);
  EXPECT_TRUE(fs::is_directory(dir_.path() / "run" / "corpus"));
  EXPECT_TRUE(fs::is_directory(dir_.path() / "run" / "crashers"));
  EXPECT_TRUE(fs::is_directory(dir_.path() / "run" / "suppressions"));
  EXPECT_EQ(FileCount(dir_.path() / "run" / "suppressions"), 0u);
}

TEST_F(CorpusStoreTest, UnwritableRootIsAStartupError) {
  std::ofstream(dir_.path() / "file") << "x";
  EXPECT_THROW(CorpusStore(dir_.path() / "file" / "run", 4096), StoreError);
}

TEST_F(CorpusStoreTest, AddDeduplicatesAndWritesContentAddressedFiles) {
  CorpusStore store(dir_.path(), 4096);
  const auto id = store.Add(ToBytes("abc"), AddCause::kSeed);
  ASSERT_TRUE(id);
  EXPECT_FALSE(store.Add(ToBytes("abc"), AddCause::kNewCoverage));
  EXPECT_EQ(store.size(), 1u);
  const fs::path file = dir_.path() / "corpus" / Sha256Hex(std::string_view("abc"));
  EXPECT_EQ(ReadFile(file), "abc");
}

TEST_F(CorpusStoreTest, OverlongInputIsRejected) {
  CorpusStore store(dir_.path(), 3);
  EXPECT_FALSE(store.Add(ToBytes("abcd"), AddCause::kSeed));
  EXPECT_TRUE(store.Add(ToBytes("abc"), AddCause::kSeed));
}

TEST_F(CorpusStoreTest, LineageAndPriorities) {
  CorpusStore store(dir_.path(), 4096);
  const auto a = *store.Add(ToBytes("a"), AddCause::kSeed);
  const auto b = *store.Add(ToBytes("b"), AddCause::kNewCoverage, a, MutatorId::kBitFlip);
  const auto c = *store.Add(ToBytes("c"), AddCause::kOracleSuspect, b, MutatorId::kSplice);
  EXPECT_EQ(store.entry(c).depth, 2u);
  EXPECT_EQ(store.entry(c).source_op, MutatorId::kSplice);
  EXPECT_EQ(store.entry(b).priority, 2.0);
  EXPECT_EQ(store.entry(c).priority, 4.0);
  store.Reward(a, Outcome::kNothing);
  EXPECT_DOUBLE_EQ(store.entry(a).priority, 0.95);
}

TEST_F(CorpusStoreTest, PickFollowsPriorities) {
  CorpusStore store(dir_.path(), 4096);
  store.Add(ToBytes("light"), AddCause::kSeed);                  // 1
  store.Add(ToBytes("heavy"), AddCause::kOracleSuspect);         // 4
  Rng rng(5);
  int heavy = 0;
  for (int i = 0; i < 50'000; ++i) heavy += store.Pick(rng).id == 1 ? 1 : 0;
  EXPECT_NEAR(heavy / 50'000.0, 0.8, 0.01);
  EXPECT_EQ(store.entry(0).exec_count + store.entry(1).exec_count, 50'000u);
}

TEST_F(CorpusStoreTest, RecordCrashWritesThreeFilesAndOneSuppression) {
  CorpusStore store(dir_.path(), 4096);
  const CrashReport r = MakeCrashReport(ToBytes("in\x01"), CrashKind::kAbort, "overflow 5", "detail line");
  EXPECT_TRUE(store.RecordCrash(r));
  EXPECT_FALSE(store.RecordCrash(MakeCrashReport(ToBytes("other"), CrashKind::kAbort, "overflow 77", "")));
  EXPECT_EQ(FileCount(dir_.path() / "crashers"), 3u);
  EXPECT_EQ(FileCount(dir_.path() / "suppressions"), 1u);
  const std::string hash = Sha256Hex(std::string_view("in\x01"));
  EXPECT_EQ(ReadFile(dir_.path() / "crashers" / (hash + ".quoted")), "\"in\\x01\"\n");
  EXPECT_EQ(ReadFile(dir_.path() / "crashers" / (hash + ".output")),
            "kind: Abort\nmessage: overflow 5\ndetail line\n");
  EXPECT_EQ(ReadFile(dir_.path() / "suppressions" / r.signature), "Abort: overflow N\n");
  EXPECT_TRUE(store.IsSuppressed(r.signature));
}

TEST_F(CorpusStoreTest, ReloadRestoresCorpusAndSuppressions) {
  std::string sig;
  {
    CorpusStore store(dir_.path(), 4096);
    store.Add(ToBytes("one"), AddCause::kNewCoverage);
    store.Add(ToBytes("two"), AddCause::kOracleSuspect);
    const CrashReport r = MakeCrashReport(ToBytes("x"), CrashKind::kOracleMismatch, "m", "");
    sig = r.signature;
    store.RecordCrash(r);
  }
  CorpusStore store(dir_.path(), 4096);
  EXPECT_EQ(store.Load(), 2u);
  EXPECT_EQ(store.size(), 2u);
  for (const auto& e : store.entries()) EXPECT_EQ(e.priority, 1.0);
  EXPECT_TRUE(store.IsSuppressed(sig));
  EXPECT_FALSE(store.RecordCrash(MakeCrashReport(ToBytes("y"), CrashKind::kOracleMismatch, "m", "")));
  EXPECT_EQ(store.suppression_count(), 1u);
}

TEST_F(CorpusStoreTest, ReloadOrderIsSortedByName) {
  {
    CorpusStore store(dir_.path(), 4096);
    for (const char* s : {"q", "w", "e", "r", "t"}) store.Add(ToBytes(s), AddCause::kSeed);
  }
  CorpusStore store(dir_.path(), 4096);
  store.Load();
  const auto entries = store.entries();
  for (std::size_t i = 1; i < entries.size(); ++i) EXPECT_LT(entries[i - 1].hash, entries[i].hash);
}

TEST_F(CorpusStoreTest, MismatchedFilesAreQuarantined) {
  {
    CorpusStore store(dir_.path(), 4096);
    store.Add(ToBytes("good"), AddCause::kSeed);
  }
  std::ofstream(dir_.path() / "corpus" / "not-a-hash") << "bad";
  CorpusStore store(dir_.path(), 4096);
  EXPECT_EQ(store.Load(), 1u);
  EXPECT_TRUE(fs::exists(dir_.path() / "quarantine" / "not-a-hash"));
  EXPECT_FALSE(fs::exists(dir_.path() / "corpus" / "not-a-hash"));
}

TEST_F(CorpusStoreTest, PickFromEmptyStoreThrows) {
  CorpusStore store(dir_.path(), 4096);
  Rng rng(1);
  EXPECT_THROW(store.Pick(rng), std::logic_error);
}

}  // namespace
}  // namespace ledgerfuzz
