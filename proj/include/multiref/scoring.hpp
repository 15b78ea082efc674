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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "multiref/alignment.hpp"
#include "multiref/multiref_fst.hpp"

namespace multiref {

// What the scorer minimizes over all start->final paths.
//
// kMinWer picks the path with the lowest errors / reference words, the
// minimum over the accepted reference set. This is what keeps
//   mwer(word-level) <= mwer(span-level) <= min(V-WER, NV-WER)
// exact. kMinErrors picks the path with the fewest raw edits; its WER can
// exceed a single-reference WER when the cheapest path is much shorter.
enum class Objective { kMinWer, kMinErrors };

std::string_view ObjectiveName(Objective objective);
std::optional<Objective> ParseObjective(std::string_view name);

struct ScoreOptions {
  Objective objective = Objective::kMinWer;
};

// One step of the best path. `arc` is absent for an insertion; `op` is absent
// for a free epsilon traversal.
struct PathStep {
  std::optional<Arc> arc;
  std::optional<EditOp> op;

  bool IsEpsilon() const { return arc.has_value() && !op.has_value(); }
  bool operator==(const PathStep&) const = default;
};

struct TaggedCounts {
  std::array<ErrorCounts, kNumTags> per_tag{};
  ErrorCounts overall;

  const ErrorCounts& at(SpanTag tag) const { return per_tag[static_cast<std::size_t>(tag)]; }
  ErrorCounts& at(SpanTag tag) { return per_tag[static_cast<std::size_t>(tag)]; }
  bool operator==(const TaggedCounts&) const = default;
};

struct ScoreReport {
  TaggedCounts counts;
  std::optional<double> mwer;      // overall errors / denominator
  std::optional<double> gold_wer;  // GOLD errors / GOLD reference words
  std::size_t denominator = 0;     // non-epsilon reference arcs on best_path
  std::vector<PathStep> best_path;
  Objective objective = Objective::kMinWer;
};

// Exact best alignment of `hypothesis` against every path of `fst`, by
// dynamic programming over (state, hypothesis position). Among solutions
// equally good under the objective, prefers fewer insertions+deletions, then
// more GOLD reference words, then the earliest arcs.
// Throws InvalidFstError if Validate(fst) fails.
ScoreReport ScoreFst(const MultiRefFst& fst, std::span<const Token> hypothesis,
                     const ScoreOptions& options = {});

// Tag each step is attributed to. Arc steps take their arc's tag; an
// insertion takes the tag of the next arc on the path (epsilon arcs included)
// or, at the end of the path, the previous one. GOLD when the path has no arcs.
std::vector<SpanTag> AttributeTags(std::span<const PathStep> best_path);

TaggedCounts AggregateTags(std::span<const PathStep> best_path);

// nullopt when there are no GOLD reference words.
std::optional<double> GoldWer(const TaggedCounts& counts);

// Score against a single reference (all arcs GOLD).
ScoreReport ScoreSingle(std::span<const Token> reference, std::span<const Token> hypothesis);

}  // namespace multiref
