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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ledgerfuzz/mutation.h"
#include "mutation_oracle.h"
#include "test_util.h"

namespace ledgerfuzz {
namespace {

using testing::ScriptedRng;
using testing::TestDictionary;

constexpr int kCasesPerOperator = 10'000;
constexpr std::size_t kMaxLen = 4096;

class OperatorPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(OperatorPropertyTest, TenThousandRandomCasesSatisfyPostconditions) {
  std::string report;
  EXPECT_EQ(testing::RunOperatorCases(GetParam(), kCasesPerOperator, 1000 + GetParam(), &report), 0) << report;
}

INSTANTIATE_TEST_SUITE_P(AllOperators, OperatorPropertyTest, ::testing::Range(0, kMutatorCount));

// ---- Targeted cases with a scripted stream ---------------------------------

TEST(MutationTest, ChooseLenCaps) {
  {
    ScriptedRng rng{0, 100};  // cap 8
    EXPECT_EQ(mutation_internal::ChooseLen(rng, 50), 1u + 100 % 8);
  }
  {
    ScriptedRng rng{90, 31};  // cap 32
    EXPECT_EQ(mutation_internal::ChooseLen(rng, 50), 32u);
  }
  {
    ScriptedRng rng{99, 49};  // cap n
    EXPECT_EQ(mutation_internal::ChooseLen(rng, 50), 50u);
  }
  {
    ScriptedRng rng{0, 5};  // n below the cap
    EXPECT_EQ(mutation_internal::ChooseLen(rng, 3), 3u);
  }
}

TEST(MutationTest, RemoveRangeScripted) {
  // ChooseLen: cap 8, length 1 + 1 = 2; position 3.
  ScriptedRng rng{0, 1, 3};
  const Bytes out = ApplyOperator(MutatorId::kRemoveRange, ToBytes("abcdefg"), rng, nullptr, Dictionary(), kMaxLen);
  EXPECT_EQ(ToString(out), "abcfg");
  EXPECT_EQ(rng.remaining(), 0u);
}

TEST(MutationTest, SwapBytesScripted) {
  ScriptedRng rng{0, 3};  // a = 0, b = 3 + 1 because b >= a
  const Bytes out = ApplyOperator(MutatorId::kSwapBytes, ToBytes("abcde"), rng, nullptr, Dictionary(), kMaxLen);
  EXPECT_EQ(ToString(out), "ebcda");
}

TEST(MutationTest, AddSubU16BigEndian) {
  // position 0, big endian, delta index 36 -> +2.
  ScriptedRng rng{0, 1, 36};
  const Bytes out = ApplyOperator(MutatorId::kAddSubU16, Bytes{0x00, 0xff}, rng, nullptr, Dictionary(), kMaxLen);
  EXPECT_EQ(out, (Bytes{0x01, 0x01}));
}

TEST(MutationTest, AddSubDeltaNeverZero) {
  // Indices 34 and 35 are the deltas either side of zero.
  ScriptedRng low{0, 34};
  EXPECT_EQ(ApplyOperator(MutatorId::kAddSubU8, Bytes{10}, low, nullptr, Dictionary(), kMaxLen), Bytes{9});
  ScriptedRng high{0, 35};
  EXPECT_EQ(ApplyOperator(MutatorId::kAddSubU8, Bytes{10}, high, nullptr, Dictionary(), kMaxLen), Bytes{11});
  ScriptedRng wrap{0, 0};
  EXPECT_EQ(ApplyOperator(MutatorId::kAddSubU8, Bytes{0}, wrap, nullptr, Dictionary(), kMaxLen), Bytes{256 - 35});
}

TEST(MutationTest, ReplaceNumberScripted) {
  ScriptedRng rng{0, 7};
  const Bytes out =
      ApplyOperator(MutatorId::kReplaceNumber, ToBytes("size 35 x"), rng, nullptr, Dictionary(), kMaxLen);
  EXPECT_EQ(ToString(out), "size 7 x");
}

TEST(MutationTest, ReplaceDigitSingleDigitsCount) {
  // "a1" has one digit but no run of two; op 14 applies, op 15 falls back.
  ScriptedRng rng14{0, 0};
  EXPECT_EQ(ToString(ApplyOperator(MutatorId::kReplaceDigit, ToBytes("a1"), rng14, nullptr, Dictionary(), kMaxLen)),
            "a2");
  ScriptedRng rng15{1, 0};  // op 5: position 1, xor 1
  EXPECT_EQ(ToString(ApplyOperator(MutatorId::kReplaceNumber, ToBytes("a1"), rng15, nullptr, Dictionary(), kMaxLen)),
            "a0");
}

TEST(MutationTest, SpliceScripted) {
  const Bytes donor = ToBytes("XYZ");
  ScriptedRng rng{2, 1};
  EXPECT_EQ(ToString(ApplyOperator(MutatorId::kSplice, ToBytes("abcd"), rng, &donor, Dictionary(), kMaxLen)), "abYZ");
}

TEST(MutationTest, InsertLiteralScripted) {
  Dictionary dict;
  dict.Add("lit");
  ScriptedRng rng{0, 1};
  EXPECT_EQ(ToString(ApplyOperator(MutatorId::kInsertLiteral, ToBytes("ab"), rng, nullptr, dict, kMaxLen)), "alitb");
}

TEST(MutationTest, ReplaceLiteralAtEndReplacesNothing) {
  Dictionary dict;
  dict.Add("Z");
  ScriptedRng rng{0, 2};
  EXPECT_EQ(ToString(ApplyOperator(MutatorId::kReplaceLiteral, ToBytes("ab"), rng, nullptr, dict, kMaxLen)), "abZ");
}

TEST(MutationTest, OutputIsTruncatedToMaxLength) {
  Rng rng(3);
  const Bytes in(10, 'a');
  for (int i = 0; i < 200; ++i) {
    const Bytes out = ApplyOperator(MutatorId::kDuplicateRange, in, rng, nullptr, Dictionary(), 10);
    ASSERT_LE(out.size(), 10u);
  }
}

TEST(MutationTest, InvalidIdThrows) {
  Rng rng(1);
  EXPECT_THROW(ApplyOperator(static_cast<MutatorId>(20), ToBytes("a"), rng, nullptr, Dictionary(), kMaxLen),
               InvalidMutator);
  EXPECT_THROW(MutatorFromInt(20), InvalidMutator);
  EXPECT_THROW(MutatorFromInt(-1), InvalidMutator);
}

TEST(MutationTest, SingletonSelectionConsumesNoRandomness) {
  ScriptedRng rng{};
  EXPECT_EQ(SelectOperator(rng, MutatorConfig::Only(MutatorId::kBitFlip)), MutatorId::kBitFlip);
}

TEST(MutationTest, SelectionIsUniformOverEnabledSet) {
  const MutatorConfig config = MutatorConfig::Default();
  Rng rng(11);
  std::map<MutatorId, int> counts;
  const int draws = 180'000;
  for (int i = 0; i < draws; ++i) ++counts[SelectOperator(rng, config)];
  ASSERT_EQ(counts.size(), config.enabled.size());
  EXPECT_FALSE(counts.contains(MutatorId::kInsertRandom));
  EXPECT_FALSE(counts.contains(MutatorId::kReplaceLiteral));
  const double expected = static_cast<double>(draws) / static_cast<double>(config.enabled.size());
  double chi2 = 0;
  for (const auto& [id, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 17 degrees of freedom; 5 sigma above the mean.
  EXPECT_LT(chi2, 17 + 5 * std::sqrt(2.0 * 17));
}

TEST(MutationTest, MutateStacksWithinLimits) {
  MutatorConfig config = MutatorConfig::All();
  config.stack_max = 3;
  config.max_input_len = 40;
  const Dictionary dict = TestDictionary();
  Rng rng(5);
  int donor_calls = 0;
  const auto donor = [&]() -> std::optional<Bytes> {
    ++donor_calls;
    return ToBytes("donor-bytes");
  };
  for (int i = 0; i < 5000; ++i) {
    std::vector<MutatorId> applied;
    const Bytes out = Mutate(ToBytes("seed input 123"), rng, donor, dict, config, &applied);
    ASSERT_FALSE(out.empty());
    ASSERT_LE(out.size(), 40u);
    ASSERT_GE(applied.size(), 1u);
    ASSERT_LE(applied.size(), 3u);
  }
  EXPECT_GT(donor_calls, 0);
}

TEST(MutationTest, MutateOnlyAsksForDonorWhenNeeded) {
  Rng rng(8);
  int calls = 0;
  const auto donor = [&]() -> std::optional<Bytes> {
    ++calls;
    return std::nullopt;
  };
  for (int i = 0; i < 1000; ++i) Mutate(ToBytes("abc"), rng, donor, Dictionary(), MutatorConfig::Only(MutatorId::kBitFlip));
  EXPECT_EQ(calls, 0);
}

TEST(MutationTest, MutateNeverReturnsEmpty) {
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const Bytes out =
        Mutate(ToBytes("a"), rng, [] { return std::optional<Bytes>(); }, Dictionary(),
               MutatorConfig::Only(MutatorId::kRemoveRange));
    ASSERT_FALSE(out.empty());
  }
}

TEST(DictionaryTest, RejectsDuplicatesAndBadLengths) {
  Dictionary d;
  EXPECT_TRUE(d.Add("a"));
  EXPECT_FALSE(d.Add("a"));
  EXPECT_FALSE(d.Add(""));
  EXPECT_FALSE(d.Add(std::string(65, 'x')));
  EXPECT_TRUE(d.Add(std::string(64, 'x')));
  EXPECT_EQ(d.size(), 2u);
}

TEST(MutatorConfigTest, DefaultExcludesInsertRandomAndReplaceLiteral) {
  const auto c = MutatorConfig::Default();
  EXPECT_EQ(c.enabled.size(), 18u);
  EXPECT_EQ(c.stack_max, 4u);
  EXPECT_EQ(c.max_input_len, 4096u);
  EXPECT_EQ(FormatMutatorList(c.enabled), "0,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18");
}

TEST(MutatorConfigTest, ParseLists) {
  EXPECT_EQ(ParseMutatorList("all").size(), 20u);
  EXPECT_EQ(ParseMutatorList("5,0,2,5"), (std::vector<MutatorId>{MutatorId::kRemoveRange, MutatorId::kDuplicateRange,
                                                                  MutatorId::kSetRandomByte}));
  EXPECT_EQ(FormatMutatorList(ParseMutatorList("all")), "all");
  for (const char* bad : {"", "20", "-1", "a", "1,,2", "1,", "0x1"}) {
    EXPECT_THROW(ParseMutatorList(bad), std::invalid_argument) << bad;
  }
}

TEST(MutatorConfigTest, ValidateRejectsEmptyAndZeroLimits) {
  MutatorConfig c;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = MutatorConfig::Default();
  c.stack_max = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = MutatorConfig::Default();
  c.max_input_len = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

TEST(MutatorNameTest, EveryOperatorHasAName) {
  for (int i = 0; i < kMutatorCount; ++i) EXPECT_FALSE(MutatorName(MutatorFromInt(i)).empty());
}

}  // namespace
}  // namespace ledgerfuzz
