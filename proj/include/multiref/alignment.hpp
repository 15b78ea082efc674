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
#include <string_view>
#include <vector>

#include "multiref/text_norm.hpp"

namespace multiref {

enum class EditKind { kMatch, kSubstitute, kInsert, kDelete };

std::string_view EditKindName(EditKind kind);

// One step of a word alignment. Match/Substitute carry both tokens, Delete
// only the reference token and Insert only the hypothesis token.
struct EditOp {
  EditKind kind = EditKind::kMatch;
  std::optional<Token> ref;
  std::optional<Token> hyp;

  static EditOp Match(Token token);
  static EditOp Substitute(Token ref, Token hyp);
  static EditOp Delete(Token ref);
  static EditOp Insert(Token hyp);

  bool IsError() const { return kind != EditKind::kMatch; }
  bool operator==(const EditOp&) const = default;
};

struct Alignment {
  std::vector<EditOp> ops;
  std::size_t ref_len = 0;
  std::size_t hyp_len = 0;

  // Number of non-Match ops.
  std::size_t Cost() const;
  Tokens RefTokens() const;
  Tokens HypTokens() const;

  // Throws std::invalid_argument if an op is malformed or the op sequence
  // does not account for exactly ref_len / hyp_len tokens.
  void Check() const;
};

struct ErrorCounts {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_words = 0;

  std::size_t Errors() const { return substitutions + insertions + deletions; }
  // nullopt when reference_words == 0.
  std::optional<double> Wer() const;

  ErrorCounts& operator+=(const ErrorCounts& other);
  bool operator==(const ErrorCounts&) const = default;
};

// Op kinds of a minimum edit distance alignment under unit costs, for any
// equality-comparable items. Ties are resolved during the backtrace from the
// end, preferring Match > Substitute > Delete > Insert.
template <typename T>
std::vector<EditKind> AlignKinds(std::span<const T> reference, std::span<const T> hypothesis);

// AlignKinds over words, with the tokens filled in.
Alignment Align(std::span<const Token> reference, std::span<const Token> hypothesis);

// Counts ops by kind; reference_words = Match + Substitute + Delete.
ErrorCounts CountErrors(const Alignment& alignment);

template <typename T>
std::vector<EditKind> AlignKinds(std::span<const T> reference, std::span<const T> hypothesis) {
  const std::size_t n = reference.size();
  const std::size_t m = hypothesis.size();
  const std::size_t cols = m + 1;
  // Full cost matrix; the backtrace needs every cell.
  std::vector<std::uint32_t> cost((n + 1) * cols);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return cost[i * cols + j]; };
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    at(i, 0) = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      std::uint32_t diag = at(i - 1, j - 1) + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      std::uint32_t del = at(i - 1, j) + 1;
      std::uint32_t ins = at(i, j - 1) + 1;
      at(i, j) = std::min({diag, del, ins});
    }
  }

  std::vector<EditKind> kinds;
  kinds.reserve(n + m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = at(i, j);
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (at(i - 1, j - 1) + (same ? 0 : 1) == here) {
        kinds.push_back(same ? EditKind::kMatch : EditKind::kSubstitute);
        --i, --j;
        continue;
      }
    }
    if (i > 0 && at(i - 1, j) + 1 == here) {
      kinds.push_back(EditKind::kDelete);
      --i;
    } else {
      kinds.push_back(EditKind::kInsert);
      --j;
    }
  }
  std::reverse(kinds.begin(), kinds.end());
  return kinds;
}

}  // namespace multiref
