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

#include "multiref/alignment.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace multiref {

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kMatch:
      return "match";
    case EditKind::kSubstitute:
      return "sub";
    case EditKind::kInsert:
      return "ins";
    case EditKind::kDelete:
      return "del";
  }
  return "?";
}

EditOp EditOp::Match(Token token) {
  Token copy = token;
  return {EditKind::kMatch, std::move(token), std::move(copy)};
}
EditOp EditOp::Substitute(Token ref, Token hyp) {
  return {EditKind::kSubstitute, std::move(ref), std::move(hyp)};
}
EditOp EditOp::Delete(Token ref) { return {EditKind::kDelete, std::move(ref), std::nullopt}; }
EditOp EditOp::Insert(Token hyp) { return {EditKind::kInsert, std::nullopt, std::move(hyp)}; }

std::size_t Alignment::Cost() const {
  std::size_t cost = 0;
  for (const EditOp& op : ops) cost += op.IsError() ? 1 : 0;
  return cost;
}

Tokens Alignment::RefTokens() const {
  Tokens out;
  for (const EditOp& op : ops) {
    if (op.ref) out.push_back(*op.ref);
  }
  return out;
}

Tokens Alignment::HypTokens() const {
  Tokens out;
  for (const EditOp& op : ops) {
    if (op.hyp) out.push_back(*op.hyp);
  }
  return out;
}

void Alignment::Check() const {
  std::size_t refs = 0;
  std::size_t hyps = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const EditOp& op = ops[i];
    bool want_ref = op.kind != EditKind::kInsert;
    bool want_hyp = op.kind != EditKind::kDelete;
    bool ok = op.ref.has_value() == want_ref && op.hyp.has_value() == want_hyp;
    if (ok && (op.ref && op.ref->empty())) ok = false;
    if (ok && (op.hyp && op.hyp->empty())) ok = false;
    if (ok && op.kind == EditKind::kMatch) ok = *op.ref == *op.hyp;
    if (ok && op.kind == EditKind::kSubstitute) ok = *op.ref != *op.hyp;
    if (!ok) {
      throw std::invalid_argument("malformed " + std::string(EditKindName(op.kind)) +
                                  " op at index " + std::to_string(i));
    }
    refs += want_ref ? 1 : 0;
    hyps += want_hyp ? 1 : 0;
  }
  if (refs != ref_len || hyps != hyp_len) {
    throw std::invalid_argument("alignment covers " + std::to_string(refs) + "/" +
                                std::to_string(hyps) + " tokens but declares " +
                                std::to_string(ref_len) + "/" + std::to_string(hyp_len));
  }
}

std::optional<double> ErrorCounts::Wer() const {
  if (reference_words == 0) return std::nullopt;
  return static_cast<double>(Errors()) / static_cast<double>(reference_words);
}

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  reference_words += other.reference_words;
  return *this;
}

Alignment Align(std::span<const Token> reference, std::span<const Token> hypothesis) {
  Alignment out;
  out.ref_len = reference.size();
  out.hyp_len = hypothesis.size();
  const std::vector<EditKind> kinds = AlignKinds(reference, hypothesis);
  out.ops.reserve(kinds.size());
  std::size_t i = 0;
  std::size_t j = 0;
  for (EditKind kind : kinds) {
    switch (kind) {
      case EditKind::kMatch:
        out.ops.push_back(EditOp::Match(reference[i++]));
        ++j;
        break;
      case EditKind::kSubstitute:
        out.ops.push_back(EditOp::Substitute(reference[i++], hypothesis[j++]));
        break;
      case EditKind::kDelete:
        out.ops.push_back(EditOp::Delete(reference[i++]));
        break;
      case EditKind::kInsert:
        out.ops.push_back(EditOp::Insert(hypothesis[j++]));
        break;
    }
  }
  return out;
}

ErrorCounts CountErrors(const Alignment& alignment) {
  ErrorCounts c;
  for (const EditOp& op : alignment.ops) {
    switch (op.kind) {
      case EditKind::kMatch:
        ++c.reference_words;
        break;
      case EditKind::kSubstitute:
        ++c.substitutions;
        ++c.reference_words;
        break;
      case EditKind::kInsert:
        ++c.insertions;
        break;
      case EditKind::kDelete:
        ++c.deletions;
        ++c.reference_words;
        break;
    }
  }
  return c;
}

}  // namespace multiref
