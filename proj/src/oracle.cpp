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

#include "multiref/oracle.hpp"

#include <algorithm>
#include <vector>

namespace multiref {
namespace {

// a/b < c/d for non-negative integers with b, d > 0.
bool RatioLess(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return static_cast<unsigned __int128>(a) * d < static_cast<unsigned __int128>(c) * b;
}

// Candidate order for the WER-minimizing path: a zero-error path always wins,
// then lower ratio; paths without words have no ratio and rank last.
bool BetterRatio(const OracleCandidate& x, const OracleCandidate& y) {
  if ((x.errors == 0) != (y.errors == 0)) return x.errors == 0;
  if (x.errors == 0) return false;
  if ((x.words > 0) != (y.words > 0)) return x.words > 0;
  if (x.words == 0) return x.errors < y.errors;
  return RatioLess(x.errors, x.words, y.errors, y.words);
}

}  // namespace

std::size_t NaiveEditDistance(std::span<const Token> a, std::span<const Token> b) {
  return NaiveEditDistanceOf(a, b);
}

std::optional<double> OracleCandidate::Wer() const {
  if (words == 0) return std::nullopt;
  return static_cast<double>(errors) / static_cast<double>(words);
}

OracleResult OracleMwer(const MultiRefFst& fst, std::span<const Token> hypothesis,
                        std::uint64_t limit) {
  PathSet paths = EnumeratePaths(fst, limit);
  OracleResult result;
  result.candidates_examined = paths.paths.size();
  bool first = true;
  for (const Tokens& path : paths.paths) {
    OracleCandidate cand{NaiveEditDistance(path, hypothesis), path.size(), path};
    if (first || cand.errors < result.best_errors) {
      result.best_errors = cand.errors;
      result.best_path_tokens = cand.tokens;
    }
    if (first || BetterRatio(cand, result.min_wer)) result.min_wer = cand;
    first = false;
  }
  if (!result.best_path_tokens.empty()) {
    result.best_wer = static_cast<double>(result.best_errors) /
                      static_cast<double>(result.best_path_tokens.size());
  }
  return result;
}

}  // namespace multiref
