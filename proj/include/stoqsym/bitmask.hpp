// Copyright 2026 The stoqsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STOQSYM_BITMASK_HPP
#define STOQSYM_BITMASK_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stoqsym {

/// Largest supported qubit count; bitmasks live in one machine word.
inline constexpr int kMaxQubits = 62;

/// Subset of qubit indices. Bit i of the word is qubit i, which is the i-th
/// character (from the left) of the textual form.
using Bitmask = std::uint64_t;

inline int hamming_weight(Bitmask b) { return std::popcount(b); }

/// Integer dot product sum_i b_i b'_i.
inline int dot(Bitmask a, Bitmask b) { return std::popcount(a & b); }

inline bool bit(Bitmask b, int qubit) { return (b >> qubit) & 1U; }

inline Bitmask full_mask(int n) {
  return n >= 64 ? ~Bitmask{0} : (Bitmask{1} << n) - 1;
}

inline std::string format_bitmask(Bitmask b, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if (bit(b, i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

/// Parses a 0/1 string whose length must equal n.
inline Bitmask parse_bitmask(std::string_view text, int n) {
  if (static_cast<int>(text.size()) != n) {
    throw std::invalid_argument("bit string '" + std::string(text) +
                                "' has length " + std::to_string(text.size()) +
                                ", expected " + std::to_string(n));
  }
  Bitmask b = 0;
  for (int i = 0; i < n; ++i) {
    char c = text[static_cast<std::size_t>(i)];
    if (c == '1') {
      b |= Bitmask{1} << i;
    } else if (c != '0') {
      throw std::invalid_argument("bit string '" + std::string(text) +
                                  "' contains a character other than 0/1");
    }
  }
  return b;
}

}  // namespace stoqsym

#endif  // STOQSYM_BITMASK_HPP
