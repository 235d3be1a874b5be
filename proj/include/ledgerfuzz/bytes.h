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

#ifndef LEDGERFUZZ_BYTES_H_
#define LEDGERFUZZ_BYTES_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ledgerfuzz {

// Raw fuzz input. Contract-facing data (keys, values, args) uses std::string,
// which holds arbitrary bytes as well.
using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline Bytes ToBytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline std::string ToString(ByteView b) { return std::string(b.begin(), b.end()); }

// Lowercase hex encoding.
std::string HexEncode(ByteView data);
inline std::string HexEncode(std::string_view s) {
  return HexEncode(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(ByteView data);
inline std::string Sha256Hex(std::string_view s) {
  return Sha256Hex(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

// Double-quoted, printable rendering: printable ASCII is kept, `"` and `\`
// are backslash-escaped, everything else becomes \n, \t, \r or \xNN.
std::string Quote(ByteView data);
inline std::string Quote(std::string_view s) {
  return Quote(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

}  // namespace ledgerfuzz

#endif  // LEDGERFUZZ_BYTES_H_
