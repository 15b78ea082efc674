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

#include "multiref/scoring.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace multiref {
namespace {

// Lexicographic DP cost: objective, then insertions+deletions, then minus the
// number of GOLD reference words.
struct Cost {
  std::int64_t primary = 0;
  std::int64_t edits = 0;
  std::int64_t neg_gold = 0;

  friend bool operator<(const Cost& a, const Cost& b) {
    return std::tie(a.primary, a.edits, a.neg_gold) < std::tie(b.primary, b.edits, b.neg_gold);
  }
  Cost operator+(const Cost& o) const {
    return {primary + o.primary, edits + o.edits, neg_gold + o.neg_gold};
  }
};

constexpr Cost kInfinite{std::numeric_limits<std::int64_t>::max(), 0, 0};

bool Finite(const Cost& c) { return c.primary != kInfinite.primary; }

// primary = per_error * errors - per_word * reference_words. (1, 0) counts
// errors; (q, p) evaluates a candidate WER ratio p/q.
struct Weights {
  std::int64_t per_error = 1;
  std::int64_t per_word = 0;
};

// Backpointer packed as (arc << 3) | kind.
enum BackKind : std::uint32_t { kNone = 0, kStart = 1, kInsert = 2, kConsume = 3, kSkip = 4 };

constexpr std::uint32_t Pack(std::size_t arc, BackKind kind) {
  return static_cast<std::uint32_t>(arc << 3) | kind;
}

struct Solution {
  std::vector<PathStep> path;
  std::size_t errors = 0;
  std::size_t words = 0;
};

Solution Solve(const MultiRefFst& fst, std::span<const Token> hyp, const Weights& w) {
  const std::size_t cols = hyp.size() + 1;
  const std::size_t n = fst.num_states();
  if (fst.arcs().size() >= (std::size_t{1} << 29)) throw std::length_error("too many arcs to score");
  // Rows are allocated when first reached and freed once their state has
  // been expanded; arcs only point forward, so a row is dead after that.
  std::vector<std::vector<Cost>> rows(n);
  std::vector<std::uint32_t> back(n * cols, kNone);

  auto relax = [&](StateId t, std::size_t j, const Cost& cand, std::uint32_t code) {
    auto& row = rows[t];
    if (row.empty()) row.assign(cols, kInfinite);
    if (cand < row[j]) {
      row[j] = cand;
      back[t * cols + j] = code;
    }
  };

  rows[fst.start()].assign(cols, kInfinite);
  rows[fst.start()][0] = Cost{};
  back[fst.start() * cols] = kStart;

  const Cost insertion{w.per_error, 1, 0};
  for (StateId s = 0; s < n; ++s) {
    if (rows[s].empty()) continue;
    {
      auto& row = rows[s];
      for (std::size_t i = 0; i + 1 < cols; ++i) {
        if (Finite(row[i]) && row[i] + insertion < row[i + 1]) {
          row[i + 1] = row[i] + insertion;
          back[s * cols + i + 1] = kInsert;
        }
      }
    }
    for (std::size_t a : fst.OutArcs(s)) {
      const Arc& arc = fst.arc(a);
      const std::int64_t gold = arc.tag == SpanTag::kGold ? 1 : 0;
      const Cost del{w.per_error - w.per_word, 1, -gold};
      const Cost hit{-w.per_word, 0, -gold};
      const Cost miss{w.per_error - w.per_word, 0, -gold};
      const auto& row = rows[s];
      for (std::size_t i = 0; i < cols; ++i) {
        const Cost here = row[i];
        if (!Finite(here)) continue;
        if (arc.IsEpsilon()) {
          relax(arc.to, i, here, Pack(a, kSkip));
          continue;
        }
        relax(arc.to, i, here + del, Pack(a, kSkip));
        if (i < hyp.size()) {
          relax(arc.to, i + 1, here + (*arc.label == hyp[i] ? hit : miss), Pack(a, kConsume));
        }
      }
    }
    if (s != fst.final_state()) std::vector<Cost>().swap(rows[s]);
  }

  if (rows[fst.final_state()].empty() || !Finite(rows[fst.final_state()][cols - 1])) {
    throw std::logic_error("final state unreachable");
  }

  Solution sol;
  StateId s = fst.final_state();
  std::size_t i = cols - 1;
  while (true) {
    const std::uint32_t code = back[s * cols + i];
    const auto kind = static_cast<BackKind>(code & 7u);
    if (kind == kStart) break;
    if (kind == kInsert) {
      sol.path.push_back({std::nullopt, EditOp::Insert(hyp[i - 1])});
      ++sol.errors;
      --i;
      continue;
    }
    const std::size_t a = code >> 3;
    const Arc& arc = fst.arc(a);
    if (kind == kConsume) {
      const Token& h = hyp[i - 1];
      if (*arc.label == h) {
        sol.path.push_back({arc, EditOp::Match(h)});
      } else {
        sol.path.push_back({arc, EditOp::Substitute(*arc.label, h)});
        ++sol.errors;
      }
      ++sol.words;
      --i;
    } else if (arc.IsEpsilon()) {
      sol.path.push_back({arc, std::nullopt});
    } else {
      sol.path.push_back({arc, EditOp::Delete(*arc.label)});
      ++sol.errors;
      ++sol.words;
    }
    s = arc.from;
  }
  std::reverse(sol.path.begin(), sol.path.end());
  return sol;
}

// Dinkelbach iteration: each round minimizes errors - lambda * words for the
// current best ratio lambda and stops once nothing beats it.
Solution MinimizeWer(const MultiRefFst& fst, std::span<const Token> hyp, Solution best) {
  if (best.errors == 0) return best;
  std::int64_t num = static_cast<std::int64_t>(best.errors);
  std::int64_t den = static_cast<std::int64_t>(best.words);
  if (den == 0) {
    // Any path with words has WER <= max(words, |hyp|) / words < |hyp| + 1.
    num = static_cast<std::int64_t>(hyp.size()) + 1;
    den = 1;
  }
  while (true) {
    Solution cand = Solve(fst, hyp, {den, num});
    const std::int64_t value = den * static_cast<std::int64_t>(cand.errors) -
                               num * static_cast<std::int64_t>(cand.words);
    if (value < 0) {
      num = static_cast<std::int64_t>(cand.errors);
      den = static_cast<std::int64_t>(cand.words);
      best = std::move(cand);
      continue;
    }
    if (value == 0 && cand.words > 0) best = std::move(cand);
    return best;
  }
}

}  // namespace

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kMinWer ? "min-wer" : "min-errors";
}

std::optional<Objective> ParseObjective(std::string_view name) {
  if (name == "min-wer") return Objective::kMinWer;
  if (name == "min-errors") return Objective::kMinErrors;
  return std::nullopt;
}

ScoreReport ScoreFst(const MultiRefFst& fst, std::span<const Token> hypothesis,
                     const ScoreOptions& options) {
  ValidationReport validation = Validate(fst);
  if (!validation.ok()) throw InvalidFstError(std::move(validation));

  Solution sol = Solve(fst, hypothesis, {});
  if (options.objective == Objective::kMinWer) sol = MinimizeWer(fst, hypothesis, std::move(sol));

  ScoreReport report;
  report.objective = options.objective;
  report.best_path = std::move(sol.path);
  report.counts = AggregateTags(report.best_path);
  report.denominator = report.counts.overall.reference_words;
  report.mwer = report.counts.overall.Wer();
  report.gold_wer = GoldWer(report.counts);
  return report;
}

std::vector<SpanTag> AttributeTags(std::span<const PathStep> best_path) {
  std::vector<SpanTag> tags(best_path.size(), SpanTag::kGold);
  std::optional<SpanTag> next;
  for (std::size_t k = best_path.size(); k-- > 0;) {
    if (best_path[k].arc) next = best_path[k].arc->tag;
    tags[k] = next.value_or(SpanTag::kGold);
  }
  // Trailing insertions: fall back to the last arc's tag.
  std::optional<SpanTag> last;
  for (std::size_t k = 0; k < best_path.size(); ++k) {
    if (best_path[k].arc) last = best_path[k].arc->tag;
  }
  for (std::size_t k = best_path.size(); k-- > 0 && !best_path[k].arc;) {
    tags[k] = last.value_or(SpanTag::kGold);
  }
  return tags;
}

TaggedCounts AggregateTags(std::span<const PathStep> best_path) {
  TaggedCounts counts;
  const std::vector<SpanTag> tags = AttributeTags(best_path);
  for (std::size_t k = 0; k < best_path.size(); ++k) {
    const auto& op = best_path[k].op;
    if (!op) continue;
    ErrorCounts delta;
    switch (op->kind) {
      case EditKind::kMatch:
        delta.reference_words = 1;
        break;
      case EditKind::kSubstitute:
        delta.substitutions = 1;
        delta.reference_words = 1;
        break;
      case EditKind::kDelete:
        delta.deletions = 1;
        delta.reference_words = 1;
        break;
      case EditKind::kInsert:
        delta.insertions = 1;
        break;
    }
    counts.at(tags[k]) += delta;
    counts.overall += delta;
  }
  return counts;
}

std::optional<double> GoldWer(const TaggedCounts& counts) { return counts.at(SpanTag::kGold).Wer(); }

ScoreReport ScoreSingle(std::span<const Token> reference, std::span<const Token> hypothesis) {
  return ScoreFst(LinearFst(reference), hypothesis, {Objective::kMinErrors});
}

}  // namespace multiref
