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

#include "multiref/multiref_fst.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace multiref {
namespace {

constexpr std::string_view kTagNames[] = {"V", "NV", "GOLD"};

// Appends arcs in construction order; state ids are handed out in the same
// order, which makes the numbering topological.
class FstBuilder {
 public:
  void AddShared(const Token& token) {
    StateId to = NewState();
    arcs_.push_back({current_, to, token, SpanTag::kGold});
    current_ = to;
  }

  void AddFork(const std::vector<Branch>& branches) {
    const StateId fork = current_;
    std::vector<StateId> first_internal;
    for (const Branch& branch : branches) {
      first_internal.push_back(next_);
      if (branch.tokens.size() > 1) next_ += static_cast<StateId>(branch.tokens.size() - 1);
    }
    const StateId join = NewState();
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const Branch& branch = branches[b];
      if (branch.tokens.empty()) {
        arcs_.push_back({fork, join, std::nullopt, branch.tag});
        continue;
      }
      StateId from = fork;
      StateId internal = first_internal[b];
      for (std::size_t k = 0; k < branch.tokens.size(); ++k) {
        StateId to = k + 1 == branch.tokens.size() ? join : internal++;
        arcs_.push_back({from, to, branch.tokens[k], branch.tag});
        from = to;
      }
    }
    current_ = join;
  }

  MultiRefFst Finish(UnionMode mode) && {
    return MultiRefFst(next_, 0, current_, std::move(arcs_), mode);
  }

 private:
  StateId NewState() { return next_++; }

  std::vector<Arc> arcs_;
  StateId next_ = 1;
  StateId current_ = 0;
};

std::vector<Branch> ForkOf(const Alignment& alignment, std::size_t begin, std::size_t end) {
  Branch v{SpanTag::kV, {}};
  Branch nv{SpanTag::kNV, {}};
  for (std::size_t i = begin; i < end; ++i) {
    const EditOp& op = alignment.ops[i];
    if (op.ref) v.tokens.push_back(*op.ref);
    if (op.hyp) nv.tokens.push_back(*op.hyp);
  }
  return {std::move(v), std::move(nv)};
}

bool HasWhitespace(const std::string& s) {
  return s.find_first_of(" \t\n\r\f\v") != std::string::npos;
}

std::string ArcText(const Arc& arc) {
  return std::to_string(arc.from) + "->" + std::to_string(arc.to) + " " +
         (arc.label ? *arc.label : std::string(kEpsilonLabel)) + "/" +
         std::string(TagName(arc.tag));
}

}  // namespace

std::string_view TagName(SpanTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<SpanTag> ParseTag(std::string_view name) {
  for (std::size_t i = 0; i < kNumTags; ++i) {
    if (kTagNames[i] == name) return static_cast<SpanTag>(i);
  }
  return std::nullopt;
}

std::string_view ModeName(UnionMode mode) {
  return mode == UnionMode::kSpanLevel ? "span-level" : "word-level";
}

std::optional<UnionMode> ParseMode(std::string_view name) {
  if (name == "span-level") return UnionMode::kSpanLevel;
  if (name == "word-level") return UnionMode::kWordLevel;
  return std::nullopt;
}

MultiRefFst::MultiRefFst(std::size_t num_states, StateId start, StateId final_state,
                         std::vector<Arc> arcs, UnionMode mode)
    : num_states_(num_states),
      start_(start),
      final_(final_state),
      arcs_(std::move(arcs)),
      mode_(mode) {
  out_offsets_.assign(num_states_ + 1, 0);
  for (const Arc& arc : arcs_) {
    if (arc.from < num_states_) ++out_offsets_[arc.from + 1];
  }
  for (std::size_t s = 0; s < num_states_; ++s) out_offsets_[s + 1] += out_offsets_[s];
  out_index_.resize(out_offsets_[num_states_]);
  std::vector<std::size_t> fill(out_offsets_.begin(), out_offsets_.end() - 1);
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    if (arcs_[a].from < num_states_) out_index_[fill[arcs_[a].from]++] = a;
  }
}

std::span<const std::size_t> MultiRefFst::OutArcs(StateId state) const {
  if (state >= num_states_) return {};
  return std::span<const std::size_t>(out_index_).subspan(
      out_offsets_[state], out_offsets_[state + 1] - out_offsets_[state]);
}

std::vector<Segment> GroupSpans(const Alignment& alignment) {
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < alignment.ops.size(); ++i) {
    auto kind = alignment.ops[i].IsError() ? Segment::Kind::kDisagreement : Segment::Kind::kShared;
    if (segments.empty() || segments.back().kind != kind) {
      segments.push_back({kind, i, i + 1});
    } else {
      segments.back().end = i + 1;
    }
  }
  return segments;
}

MultiRefFst BuildFst(const Alignment& alignment, UnionMode mode) {
  alignment.Check();
  FstBuilder builder;
  for (const Segment& seg : GroupSpans(alignment)) {
    if (seg.kind == Segment::Kind::kShared) {
      for (std::size_t i = seg.begin; i < seg.end; ++i) builder.AddShared(*alignment.ops[i].ref);
    } else if (mode == UnionMode::kSpanLevel) {
      builder.AddFork(ForkOf(alignment, seg.begin, seg.end));
    } else {
      for (std::size_t i = seg.begin; i < seg.end; ++i) {
        builder.AddFork(ForkOf(alignment, i, i + 1));
      }
    }
  }
  return std::move(builder).Finish(mode);
}

MultiRefFst LinearFst(std::span<const Token> reference) {
  FstBuilder builder;
  for (const Token& tok : reference) builder.AddShared(tok);
  return std::move(builder).Finish(UnionMode::kSpanLevel);
}

std::size_t CountForks(const MultiRefFst& fst) {
  std::size_t forks = 0;
  for (StateId s = 0; s < fst.num_states(); ++s) forks += fst.OutArcs(s).size() > 1 ? 1 : 0;
  return forks;
}

PathLimitExceeded::PathLimitExceeded(std::uint64_t paths, std::uint64_t limit)
    : std::runtime_error("FST has " +
                         (paths == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("more than 2^64")
                              : std::to_string(paths)) +
                         " paths, above the enumeration limit of " + std::to_string(limit)),
      paths_(paths),
      limit_(limit) {}

std::uint64_t CountPaths(const MultiRefFst& fst) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(fst.num_states(), 0);
  if (fst.start() >= fst.num_states() || fst.final_state() >= fst.num_states()) return 0;
  count[fst.start()] = 1;
  for (StateId s = 0; s < fst.num_states(); ++s) {
    if (count[s] == 0) continue;
    for (std::size_t a : fst.OutArcs(s)) {
      const Arc& arc = fst.arc(a);
      if (arc.to <= s) throw std::logic_error("CountPaths: arc " + ArcText(arc) + " points backwards");
      if (arc.to >= fst.num_states()) continue;
      count[arc.to] = count[arc.to] > kMax - count[s] ? kMax : count[arc.to] + count[s];
    }
  }
  return count[fst.final_state()];
}

PathSet EnumeratePaths(const MultiRefFst& fst, std::uint64_t limit) {
  PathSet result;
  result.raw_count = CountPaths(fst);
  if (result.raw_count > limit) throw PathLimitExceeded(result.raw_count, limit);
  if (result.raw_count == 0) return result;

  struct Frame {
    StateId state;
    std::size_t next = 0;
    bool labeled = false;
  };
  std::vector<Frame> stack{{fst.start()}};
  Tokens current;
  if (fst.start() == fst.final_state()) result.paths.insert(current);
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto out = fst.OutArcs(top.state);
    if (top.next == out.size()) {
      if (top.labeled) current.pop_back();
      stack.pop_back();
      continue;
    }
    const Arc& arc = fst.arc(out[top.next++]);
    if (arc.label) current.push_back(*arc.label);
    stack.push_back({arc.to, 0, arc.label.has_value()});
    if (arc.to == fst.final_state()) result.paths.insert(current);
  }
  return result;
}

bool ValidationReport::Passed(std::string_view check) const {
  if (std::find(checks.begin(), checks.end(), check) == checks.end()) return false;
  return std::none_of(issues.begin(), issues.end(),
                      [&](const ValidationIssue& i) { return i.check == check; });
}

std::string ValidationReport::Summary() const {
  if (issues.empty()) return {};
  return issues.front().check + ": " + issues.front().message;
}

ValidationReport Validate(const MultiRefFst& fst) {
  ValidationReport report;
  const std::size_t n = fst.num_states();
  const auto& arcs = fst.arcs();
  auto issue = [&](std::string_view check, std::string message) -> ValidationIssue& {
    report.issues.push_back({std::string(check), std::move(message), {}, {}});
    return report.issues.back();
  };

  report.checks.emplace_back(kCheckStartFinal);
  if (n == 0 || fst.start() >= n || fst.final_state() >= n) {
    issue(kCheckStartFinal, "start " + std::to_string(fst.start()) + " / final " +
                                std::to_string(fst.final_state()) + " outside " +
                                std::to_string(n) + " states");
    return report;
  }

  report.checks.emplace_back(kCheckArcRange);
  {
    std::vector<std::size_t> bad;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (arcs[a].from >= n || arcs[a].to >= n) bad.push_back(a);
    }
    if (!bad.empty()) {
      auto& i = issue(kCheckArcRange, "arc " + ArcText(arcs[bad.front()]) + " references a missing state");
      i.arcs = std::move(bad);
      return report;
    }
  }

  report.checks.emplace_back(kCheckAcyclic);
  {
    std::vector<std::size_t> indegree(n, 0);
    for (const Arc& arc : arcs) ++indegree[arc.to];
    std::deque<StateId> ready;
    for (StateId s = 0; s < n; ++s) {
      if (indegree[s] == 0) ready.push_back(s);
    }
    std::vector<bool> done(n, false);
    while (!ready.empty()) {
      StateId s = ready.front();
      ready.pop_front();
      done[s] = true;
      for (std::size_t a : fst.OutArcs(s)) {
        if (--indegree[arcs[a].to] == 0) ready.push_back(arcs[a].to);
      }
    }
    std::vector<std::size_t> cyclic;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (!done[arcs[a].from] && !done[arcs[a].to]) cyclic.push_back(a);
    }
    if (!cyclic.empty()) {
      auto& i = issue(kCheckAcyclic, "cycle through arc " + ArcText(arcs[cyclic.front()]));
      i.arcs = std::move(cyclic);
    }
  }

  report.checks.emplace_back(kCheckTopoOrder);
  {
    std::vector<std::size_t> backward;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (arcs[a].to <= arcs[a].from) backward.push_back(a);
    }
    if (!backward.empty()) {
      auto& i = issue(kCheckTopoOrder, "arc " + ArcText(arcs[backward.front()]) +
                                           " does not point to a later state");
      i.arcs = std::move(backward);
    }
  }

  report.checks.emplace_back(kCheckConnected);
  {
    std::vector<std::vector<StateId>> reverse(n);
    for (const Arc& arc : arcs) reverse[arc.to].push_back(arc.from);
    auto reach = [&](StateId from, bool backward) {
      std::vector<bool> seen(n, false);
      std::vector<StateId> todo{from};
      seen[from] = true;
      while (!todo.empty()) {
        StateId s = todo.back();
        todo.pop_back();
        auto visit = [&](StateId t) {
          if (!seen[t]) {
            seen[t] = true;
            todo.push_back(t);
          }
        };
        if (backward) {
          for (StateId t : reverse[s]) visit(t);
        } else {
          for (std::size_t a : fst.OutArcs(s)) visit(arcs[a].to);
        }
      }
      return seen;
    };
    auto forward = reach(fst.start(), false);
    auto backward = reach(fst.final_state(), true);
    std::vector<StateId> dead;
    for (StateId s = 0; s < n; ++s) {
      if (!forward[s] || !backward[s]) dead.push_back(s);
    }
    if (!dead.empty()) {
      auto& i = issue(kCheckConnected, "state " + std::to_string(dead.front()) +
                                           " is not on a start-to-final path");
      i.states = std::move(dead);
    }
  }

  report.checks.emplace_back(kCheckLabels);
  {
    std::vector<std::size_t> bad;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      const auto& label = arcs[a].label;
      if (label && (label->empty() || HasWhitespace(*label) || *label == kEpsilonLabel)) {
        bad.push_back(a);
      }
    }
    if (!bad.empty()) {
      auto& i = issue(kCheckLabels, "arc " + std::to_string(bad.front()) +
                                        " has an empty, reserved or whitespace label");
      i.arcs = std::move(bad);
    }
  }

  report.checks.emplace_back(kCheckTags);
  {
    std::vector<std::size_t> bad;
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (arcs[a].IsEpsilon() && arcs[a].tag == SpanTag::kGold) bad.push_back(a);
    }
    for (StateId s = 0; s < n; ++s) {
      auto out = fst.OutArcs(s);
      if (out.size() < 2) continue;
      bool pair = out.size() == 2 && arcs[out[0]].tag != arcs[out[1]].tag &&
                  arcs[out[0]].tag != SpanTag::kGold && arcs[out[1]].tag != SpanTag::kGold;
      if (!pair) bad.insert(bad.end(), out.begin(), out.end());
    }
    if (!bad.empty()) {
      std::sort(bad.begin(), bad.end());
      bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
      auto& i = issue(kCheckTags, "arc " + ArcText(arcs[bad.front()]) +
                                      " breaks the GOLD / one-V-one-NV fork structure");
      i.arcs = std::move(bad);
    }
  }
  return report;
}

InvalidFstError::InvalidFstError(ValidationReport report)
    : std::runtime_error("invalid FST: " + report.Summary()), report_(std::move(report)) {}

CanonicalFst Canonicalize(const MultiRefFst& fst) {
  CanonicalFst canon;
  canon.num_states = fst.num_states();
  constexpr StateId kUnset = std::numeric_limits<StateId>::max();
  std::vector<StateId> id(fst.num_states(), kUnset);
  StateId next = 0;
  std::deque<StateId> queue;
  if (fst.start() < fst.num_states()) {
    id[fst.start()] = next++;
    queue.push_back(fst.start());
  }
  std::vector<StateId> order;
  auto sorted_out = [&](StateId s) {
    auto out = fst.OutArcs(s);
    std::vector<std::size_t> sorted(out.begin(), out.end());
    std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
      const Arc& x = fst.arc(a);
      const Arc& y = fst.arc(b);
      // Epsilon sorts first.
      return std::tie(x.label, x.tag) < std::tie(y.label, y.tag);
    });
    return sorted;
  };
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (std::size_t a : sorted_out(s)) {
      StateId t = fst.arc(a).to;
      if (t < fst.num_states() && id[t] == kUnset) {
        id[t] = next++;
        queue.push_back(t);
      }
    }
  }
  for (StateId s = 0; s < fst.num_states(); ++s) {
    if (id[s] == kUnset) {
      id[s] = next++;
      order.push_back(s);
    }
  }
  for (StateId s : order) {
    for (std::size_t a : sorted_out(s)) {
      const Arc& arc = fst.arc(a);
      StateId to = arc.to < fst.num_states() ? id[arc.to] : arc.to;
      canon.arcs.emplace_back(id[s], to, arc.label ? *arc.label : std::string(kEpsilonLabel),
                              arc.tag);
    }
  }
  canon.start = fst.start() < fst.num_states() ? id[fst.start()] : fst.start();
  canon.final_state = fst.final_state() < fst.num_states() ? id[fst.final_state()] : fst.final_state();
  return canon;
}

}  // namespace multiref
