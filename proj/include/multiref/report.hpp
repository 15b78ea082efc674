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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multiref/alignment.hpp"
#include "multiref/oracle.hpp"
#include "multiref/scoring.hpp"

namespace multiref {

// Fixed-order JSON documents. Ratios are printed with 4 decimals, undefined
// ratios as null, two-space indentation, trailing newline.
//
// Score report keys, in order:
//   overall    {substitutions, insertions, deletions, reference_words, wer}
//   per_tag    {V, NV, GOLD}, each shaped like overall
//   mwer
//   gold_wer
//   denominator
//   objective  "min-wer" | "min-errors"
//   best_path  [{arc_label, hyp, tag, op}]   arc_label/hyp null when absent
//   oracle     present only when requested:
//              {best_errors, best_wer, best_path, candidates_examined,
//               agrees_with_scorer, min_wer_path?}
std::string ScoreReportJson(const ScoreReport& report, const OracleResult* oracle = nullptr);

// {ref_len, hyp_len, substitutions, insertions, deletions, reference_words,
//  wer, ops: [{op, ref, hyp}]}
std::string AlignmentJson(const Alignment& alignment);

std::string FormatRatio(std::optional<double> ratio);

// Minimal streaming writer behind the functions above.
class JsonWriter {
 public:
  void BeginObject();
  void EndObject();
  void BeginArray();
  void EndArray();
  void Key(std::string_view key);
  void String(std::string_view value);
  void OptionalString(const std::optional<std::string>& value);
  void Uint(unsigned long long value);
  void Bool(bool value);
  void Ratio(std::optional<double> value);
  void Null();

  // Single-line objects/arrays (used for best_path and ops entries).
  void BeginInlineObject();

  std::string Finish();

 private:
  void BeforeValue();
  void Newline();

  struct Frame {
    bool inline_ = false;
    bool empty = true;
  };
  std::string out_;
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

}  // namespace multiref
