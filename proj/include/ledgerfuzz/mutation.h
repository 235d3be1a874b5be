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

// Byte-level mutation operators in the go-fuzz numbering (0..19), operator
// selection over a configurable enabled set, and stacked mutation.
//
// Every operator is a pure function of (input, random stream, donor,
// dictionary). Operators that cannot apply to an input fall back:
//   - input too short for the operator: insert 1-4 random bytes;
//   - no digit / no number run / no donor / empty dictionary: behave as
//     operator 5 (which itself falls back to insertion on empty input).
// Output never exceeds the configured maximum length; growth is truncated.

#ifndef LEDGERFUZZ_MUTATION_H_
#define LEDGERFUZZ_MUTATION_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ledgerfuzz/bytes.h"
#include "ledgerfuzz/rng.h"

namespace ledgerfuzz {

enum class MutatorId : std::uint8_t {
  kRemoveRange = 0,
  kInsertRandom = 1,
  kDuplicateRange = 2,
  kCopyRange = 3,
  kBitFlip = 4,
  kSetRandomByte = 5,
  kSwapBytes = 6,
  kAddSubU8 = 7,
  kAddSubU16 = 8,
  kAddSubU32 = 9,
  kAddSubU64 = 10,
  kInterestingU8 = 11,
  kInterestingU16 = 12,
  kInterestingU32 = 13,
  kReplaceDigit = 14,
  kReplaceNumber = 15,
  kSplice = 16,
  kInsertPart = 17,
  kInsertLiteral = 18,
  kReplaceLiteral = 19,
};

inline constexpr int kMutatorCount = 20;

class InvalidMutator : public std::invalid_argument {
 public:
  InvalidMutator() : std::invalid_argument("invalid mutator id") {}
};

inline MutatorId MutatorFromInt(int id) {
  if (id < 0 || id >= kMutatorCount) throw InvalidMutator();
  return static_cast<MutatorId>(id);
}

inline int ToInt(MutatorId id) { return static_cast<int>(id); }

std::string_view MutatorName(MutatorId id);

// Interesting values. Wider tables include the narrower ones.
inline constexpr std::array<std::uint32_t, 9> kInteresting8 = {0, 1, 16, 32, 64, 100, 127, 128, 255};
inline constexpr std::array<std::uint32_t, 17> kInteresting16 = {0,   1,    16,   32,   64,    100,   127,   128,  255,
                                                                 256, 512, 1000, 1024, 4096, 32767, 32768, 65535};
inline constexpr std::array<std::uint32_t, 22> kInteresting32 = {
    0,     1,     16,    32,    64,    100,   127,   128,       255,        256,        512,
    1000,  1024,  4096,  32767, 32768, 65535, 65536, 100663045, 2147483647, 2147483648, 4294967295};

inline constexpr int kMaxDelta = 35;
inline constexpr std::size_t kMaxLiteralLen = 64;

// Literals for operators 18 and 19: unique, each 1..64 bytes.
class Dictionary {
 public:
  Dictionary() = default;

  // Returns false (and ignores the literal) when it is a duplicate or its
  // length is outside [1, 64].
  bool Add(std::string_view literal);

  const std::vector<Bytes>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }

 private:
  std::vector<Bytes> literals_;
  std::set<Bytes> seen_;
};

struct MutatorConfig {
  std::vector<MutatorId> enabled;  // sorted, unique
  std::size_t max_input_len = 4096;
  std::size_t stack_max = 4;

  // All operators except 1 and 19.
  static MutatorConfig Default();
  static MutatorConfig All();
  static MutatorConfig Only(MutatorId id);

  // Throws std::invalid_argument on an empty set or zero limits.
  void Validate() const;
};

// "all" or a comma-separated id list such as "0,2,5". Throws
// std::invalid_argument on malformed or out-of-range entries.
std::vector<MutatorId> ParseMutatorList(std::string_view text);
std::string FormatMutatorList(const std::vector<MutatorId>& ids);

namespace mutation_internal {

// Length in [1, n], skewed toward short ranges. n must be >= 1.
template <RandomSource R>
std::size_t ChooseLen(R& rng, std::size_t n) {
  const std::uint64_t x = rng.Below(100);
  const std::size_t cap = x < 90 ? 8 : (x < 99 ? 32 : n);
  return 1 + static_cast<std::size_t>(rng.Below(std::min(n, cap)));
}

template <RandomSource R>
std::uint8_t RandomByte(R& rng) {
  return static_cast<std::uint8_t>(rng.Below(256));
}

template <RandomSource R>
Bytes InsertRandom(ByteView in, R& rng, std::size_t count) {
  const std::size_t pos = rng.Below(in.size() + 1);
  Bytes out(in.begin(), in.begin() + pos);
  for (std::size_t i = 0; i < count; ++i) out.push_back(RandomByte(rng));
  out.insert(out.end(), in.begin() + pos, in.end());
  return out;
}

// Fallback for inputs too short for the chosen operator.
template <RandomSource R>
Bytes InsertFallback(ByteView in, R& rng) {
  return InsertRandom(in, rng, 1 + rng.Below(4));
}

template <RandomSource R>
Bytes SetRandomByte(ByteView in, R& rng) {
  if (in.empty()) return InsertFallback(in, rng);
  Bytes out(in.begin(), in.end());
  const std::size_t pos = rng.Below(out.size());
  out[pos] ^= static_cast<std::uint8_t>(1 + rng.Below(255));
  return out;
}

inline std::uint64_t ReadLane(const Bytes& b, std::size_t pos, std::size_t width, bool big_endian) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    const std::size_t k = big_endian ? i : width - 1 - i;
    v = (v << 8) | b[pos + k];
  }
  return v;
}

inline void WriteLane(Bytes& b, std::size_t pos, std::size_t width, bool big_endian, std::uint64_t v) {
  for (std::size_t i = 0; i < width; ++i) {
    const std::size_t k = big_endian ? width - 1 - i : i;
    b[pos + k] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

inline std::uint64_t WidthMask(std::size_t width) {
  return width >= 8 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (8 * width)) - 1);
}

template <RandomSource R>
Bytes AddSub(ByteView in, R& rng, std::size_t width) {
  if (in.size() < width) return InsertFallback(in, rng);
  Bytes out(in.begin(), in.end());
  const std::size_t pos = rng.Below(out.size() - width + 1);
  const bool big_endian = width > 1 && rng.Below(2) == 1;
  const auto d = static_cast<std::int64_t>(rng.Below(2 * kMaxDelta));
  const std::int64_t delta = d < kMaxDelta ? d - kMaxDelta : d - kMaxDelta + 1;
  const std::uint64_t v = ReadLane(out, pos, width, big_endian) + static_cast<std::uint64_t>(delta);
  WriteLane(out, pos, width, big_endian, v & WidthMask(width));
  return out;
}

template <RandomSource R, std::size_t N>
Bytes Interesting(ByteView in, R& rng, std::size_t width, const std::array<std::uint32_t, N>& table) {
  if (in.size() < width) return InsertFallback(in, rng);
  Bytes out(in.begin(), in.end());
  const std::size_t pos = rng.Below(out.size() - width + 1);
  const bool big_endian = width > 1 && rng.Below(2) == 1;
  WriteLane(out, pos, width, big_endian, table[rng.Below(N)]);
  return out;
}

inline bool IsDigit(std::uint8_t c) { return c >= '0' && c <= '9'; }

// Maximal runs of at least two ASCII digits, as [begin, end) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> NumberRuns(ByteView in) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < in.size()) {
    if (!IsDigit(in[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < in.size() && IsDigit(in[j])) ++j;
    if (j - i >= 2) runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

}  // namespace mutation_internal

// Applies one operator. `donor` feeds operators 16 and 17; `dict` feeds 18
// and 19. Throws InvalidMutator for an id outside 0..19.
template <RandomSource R>
Bytes ApplyOperator(MutatorId id, ByteView input, R& rng, const Bytes* donor, const Dictionary& dict,
                    std::size_t max_input_len) {
  using namespace mutation_internal;
  const ByteView in = input.first(std::min(input.size(), max_input_len));
  const std::size_t n = in.size();
  const bool have_donor = donor != nullptr && !donor->empty();
  Bytes out;

  switch (id) {
    case MutatorId::kRemoveRange: {
      if (n < 1) {
        out = InsertFallback(in, rng);
        break;
      }
      const std::size_t r = ChooseLen(rng, n);
      const std::size_t pos = rng.Below(n - r + 1);
      out.assign(in.begin(), in.begin() + pos);
      out.insert(out.end(), in.begin() + pos + r, in.end());
      break;
    }
    case MutatorId::kInsertRandom:
      out = InsertRandom(in, rng, ChooseLen(rng, 16));
      break;
    case MutatorId::kDuplicateRange: {
      if (n < 1) {
        out = InsertFallback(in, rng);
        break;
      }
      const std::size_t r = ChooseLen(rng, n);
      const std::size_t pos = rng.Below(n - r + 1);
      out.assign(in.begin(), in.begin() + pos + r);
      out.insert(out.end(), in.begin() + pos, in.begin() + pos + r);
      out.insert(out.end(), in.begin() + pos + r, in.end());
      break;
    }
    case MutatorId::kCopyRange: {
      if (n < 2) {
        out = InsertFallback(in, rng);
        break;
      }
      const std::size_t r = ChooseLen(rng, n - 1);
      const std::size_t src = rng.Below(n - r + 1);
      std::size_t dst = rng.Below(n - r);
      if (dst >= src) ++dst;
      out.assign(in.begin(), in.end());
      std::copy(in.begin() + src, in.begin() + src + r, out.begin() + dst);
      break;
    }
    case MutatorId::kBitFlip: {
      if (n < 1) {
        out = InsertFallback(in, rng);
        break;
      }
      out.assign(in.begin(), in.end());
      const std::size_t pos = rng.Below(n);
      out[pos] ^= static_cast<std::uint8_t>(1u << rng.Below(8));
      break;
    }
    case MutatorId::kSetRandomByte:
      out = SetRandomByte(in, rng);
      break;
    case MutatorId::kSwapBytes: {
      if (n < 2) {
        out = InsertFallback(in, rng);
        break;
      }
      out.assign(in.begin(), in.end());
      const std::size_t a = rng.Below(n);
      std::size_t b = rng.Below(n - 1);
      if (b >= a) ++b;
      std::swap(out[a], out[b]);
      break;
    }
    case MutatorId::kAddSubU8:
      out = AddSub(in, rng, 1);
      break;
    case MutatorId::kAddSubU16:
      out = AddSub(in, rng, 2);
      break;
    case MutatorId::kAddSubU32:
      out = AddSub(in, rng, 4);
      break;
    case MutatorId::kAddSubU64:
      out = AddSub(in, rng, 8);
      break;
    case MutatorId::kInterestingU8:
      out = Interesting(in, rng, 1, kInteresting8);
      break;
    case MutatorId::kInterestingU16:
      out = Interesting(in, rng, 2, kInteresting16);
      break;
    case MutatorId::kInterestingU32:
      out = Interesting(in, rng, 4, kInteresting32);
      break;
    case MutatorId::kReplaceDigit: {
      std::vector<std::size_t> digits;
      for (std::size_t i = 0; i < n; ++i) {
        if (IsDigit(in[i])) digits.push_back(i);
      }
      if (digits.empty()) {
        out = SetRandomByte(in, rng);
        break;
      }
      out.assign(in.begin(), in.end());
      const std::size_t pos = digits[rng.Below(digits.size())];
      const std::uint64_t shift = 1 + rng.Below(9);
      out[pos] = static_cast<std::uint8_t>('0' + (out[pos] - '0' + shift) % 10);
      break;
    }
    case MutatorId::kReplaceNumber: {
      const auto runs = NumberRuns(in);
      if (runs.empty()) {
        out = SetRandomByte(in, rng);
        break;
      }
      const auto [begin, end] = runs[rng.Below(runs.size())];
      const std::string digits = std::to_string(rng.Below(std::uint64_t{1} << 32));
      out.assign(in.begin(), in.begin() + begin);
      out.insert(out.end(), digits.begin(), digits.end());
      out.insert(out.end(), in.begin() + end, in.end());
      break;
    }
    case MutatorId::kSplice: {
      if (!have_donor) {
        out = SetRandomByte(in, rng);
        break;
      }
      const std::size_t cut = rng.Below(n + 1);
      const std::size_t from = rng.Below(donor->size());
      out.assign(in.begin(), in.begin() + cut);
      out.insert(out.end(), donor->begin() + from, donor->end());
      break;
    }
    case MutatorId::kInsertPart: {
      if (!have_donor) {
        out = SetRandomByte(in, rng);
        break;
      }
      const std::size_t r = ChooseLen(rng, donor->size());
      const std::size_t from = rng.Below(donor->size() - r + 1);
      const std::size_t pos = rng.Below(n + 1);
      out.assign(in.begin(), in.begin() + pos);
      out.insert(out.end(), donor->begin() + from, donor->begin() + from + r);
      out.insert(out.end(), in.begin() + pos, in.end());
      break;
    }
    case MutatorId::kInsertLiteral: {
      if (dict.empty()) {
        out = SetRandomByte(in, rng);
        break;
      }
      const Bytes& lit = dict.literals()[rng.Below(dict.size())];
      const std::size_t pos = rng.Below(n + 1);
      out.assign(in.begin(), in.begin() + pos);
      out.insert(out.end(), lit.begin(), lit.end());
      out.insert(out.end(), in.begin() + pos, in.end());
      break;
    }
    case MutatorId::kReplaceLiteral: {
      if (dict.empty()) {
        out = SetRandomByte(in, rng);
        break;
      }
      const Bytes& lit = dict.literals()[rng.Below(dict.size())];
      const std::size_t pos = rng.Below(n + 1);
      const std::size_t r = pos == n ? 0 : ChooseLen(rng, n - pos);
      out.assign(in.begin(), in.begin() + pos);
      out.insert(out.end(), lit.begin(), lit.end());
      out.insert(out.end(), in.begin() + pos + r, in.end());
      break;
    }
    default:
      throw InvalidMutator();
  }

  if (out.size() > max_input_len) out.resize(max_input_len);
  return out;
}

// Uniform over config.enabled. A singleton set consumes no randomness.
template <RandomSource R>
MutatorId SelectOperator(R& rng, const MutatorConfig& config) {
  if (config.enabled.empty()) throw std::invalid_argument("no mutation operators enabled");
  if (config.enabled.size() == 1) return config.enabled.front();
  return config.enabled[rng.Below(config.enabled.size())];
}

// Applies between 1 and stack_max operators in sequence. `pick_donor` is
// called (returning std::optional<Bytes>) only when a splice-style operator
// is selected. `applied`, when given, receives the operator sequence.
template <RandomSource R, typename DonorFn>
Bytes Mutate(ByteView input, R& rng, DonorFn&& pick_donor, const Dictionary& dict, const MutatorConfig& config,
             std::vector<MutatorId>* applied = nullptr) {
  const std::size_t rounds = 1 + rng.Below(config.stack_max);
  Bytes data(input.begin(), input.begin() + std::min(input.size(), config.max_input_len));
  for (std::size_t i = 0; i < rounds; ++i) {
    const MutatorId id = SelectOperator(rng, config);
    std::optional<Bytes> donor;
    if (id == MutatorId::kSplice || id == MutatorId::kInsertPart) donor = pick_donor();
    data = ApplyOperator(id, data, rng, donor ? &*donor : nullptr, dict, config.max_input_len);
    if (applied != nullptr) applied->push_back(id);
  }
  if (data.empty()) {
    data = mutation_internal::InsertFallback(data, rng);
    if (data.size() > config.max_input_len) data.resize(config.max_input_len);
  }
  return data;
}

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_MUTATION_H_
