// Copyright 2026 The multiref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "multiref/multiref_fst.hpp"

namespace multiref {

// Brute-force reference computations. Deliberately naive: these exist to
// audit the scorer and aligner, not to be fast.

// Textbook Levenshtein recurrence, no backtrace.
template <typename T>
std::size_t NaiveEditDistanceOf(std::span<const T> a, std::span<const T> b) {
  const std::size_t cols = b.size() + 1;
  std::vector<std::size_t> d((a.size() + 1) * cols);
  for (std::size_t i = 0; i <= a.size(); ++i) d[i * cols] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = d[(i - 1) * cols + j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i * cols + j] = std::min({sub, d[(i - 1) * cols + j] + 1, d[i * cols + j - 1] + 1});
    }
  }
  return d[a.size() * cols + b.size()];
}

// Over words.
std::size_t NaiveEditDistance(std::span<const Token> a, std::span<const Token> b);

struct OracleCandidate {
  std::size_t errors = 0;
  std::size_t words = 0;
  Tokens tokens;

  std::optional<double> Wer() const;
};

struct OracleResult {
  std::size_t best_errors = 0;
  std::optional<double> best_wer;  // best_errors / length of best_path_tokens
  Tokens best_path_tokens;
  std::uint64_t candidates_examined = 0;

  // Path with the lowest WER ratio. Same as the fewest-errors path unless
  // candidate paths differ in length.
  OracleCandidate min_wer;
  bool RatioPathDiffers() const { return min_wer.tokens != best_path_tokens; }
};

// Enumerates every path of `fst` and takes the edit distance of each against
// `hypothesis`. Throws PathLimitExceeded when enumeration is over `limit`.
OracleResult OracleMwer(const MultiRefFst& fst, std::span<const Token> hypothesis,
                        std::uint64_t limit = kDefaultPathLimit);

}  // namespace multiref
