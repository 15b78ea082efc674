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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "multiref/alignment.hpp"

namespace multiref {

// Which reference an arc came from. GOLD marks words both references agree on.
enum class SpanTag : std::uint8_t { kV = 0, kNV = 1, kGold = 2 };
inline constexpr std::size_t kNumTags = 3;

std::string_view TagName(SpanTag tag);
std::optional<SpanTag> ParseTag(std::string_view name);

enum class UnionMode { kSpanLevel, kWordLevel };

std::string_view ModeName(UnionMode mode);
std::optional<UnionMode> ParseMode(std::string_view name);

using StateId = std::uint32_t;

struct Arc {
  StateId from = 0;
  StateId to = 0;
  std::optional<Token> label;  // nullopt is epsilon
  SpanTag tag = SpanTag::kGold;

  bool IsEpsilon() const { return !label.has_value(); }
  bool operator==(const Arc&) const = default;
};

// Acyclic word acceptor with one start and one final state. Arcs are kept in
// construction order; OutArcs() returns indices into arcs() in that order.
class MultiRefFst {
 public:
  MultiRefFst() = default;
  MultiRefFst(std::size_t num_states, StateId start, StateId final_state,
              std::vector<Arc> arcs, UnionMode mode);

  std::size_t num_states() const { return num_states_; }
  StateId start() const { return start_; }
  StateId final_state() const { return final_; }
  UnionMode mode() const { return mode_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(std::size_t index) const { return arcs_[index]; }

  // Indices of arcs leaving `state`. Out-of-range states have none.
  std::span<const std::size_t> OutArcs(StateId state) const;

 private:
  std::size_t num_states_ = 1;
  StateId start_ = 0;
  StateId final_ = 0;
  std::vector<Arc> arcs_;
  UnionMode mode_ = UnionMode::kSpanLevel;
  std::vector<std::size_t> out_offsets_;
  std::vector<std::size_t> out_index_;
};

// A maximal run of alignment ops: all Match (shared) or all non-Match
// (disagreement). [begin, end) indexes Alignment::ops.
struct Segment {
  enum class Kind { kShared, kDisagreement };
  Kind kind = Kind::kShared;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Segment&) const = default;
};

std::vector<Segment> GroupSpans(const Alignment& alignment);

// One alternative reading inside a fork.
struct Branch {
  SpanTag tag = SpanTag::kV;
  Tokens tokens;  // empty side becomes a single epsilon arc
};

// Compiles a V (reference side) / NV (hypothesis side) alignment. Matches
// become GOLD arcs; disagreements become forks with a V branch and an NV
// branch, per maximal span (SpanLevel) or per op (WordLevel).
// Throws std::invalid_argument when the alignment fails Alignment::Check().
MultiRefFst BuildFst(const Alignment& alignment, UnionMode mode = UnionMode::kSpanLevel);

// Single-reference acceptor: a chain of GOLD arcs.
MultiRefFst LinearFst(std::span<const Token> reference);

// States with more than one outgoing arc.
std::size_t CountForks(const MultiRefFst& fst);

inline constexpr std::uint64_t kDefaultPathLimit = std::uint64_t{1} << 20;

class PathLimitExceeded : public std::runtime_error {
 public:
  PathLimitExceeded(std::uint64_t paths, std::uint64_t limit);
  std::uint64_t paths() const { return paths_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t paths_;
  std::uint64_t limit_;
};

// Number of start->final paths, saturating at UINT64_MAX. Requires arcs to
// point forward in state numbering (see Validate).
std::uint64_t CountPaths(const MultiRefFst& fst);

struct PathSet {
  std::set<Tokens> paths;  // distinct label sequences, epsilons dropped
  std::uint64_t raw_count = 0;  // paths before deduplication
};

// All start->final label sequences. Throws PathLimitExceeded (before doing
// any enumeration) when the path count is above `limit`.
PathSet EnumeratePaths(const MultiRefFst& fst, std::uint64_t limit = kDefaultPathLimit);

// Names of the structural checks run by Validate.
inline constexpr std::string_view kCheckStartFinal = "start-final";
inline constexpr std::string_view kCheckArcRange = "arc-range";
inline constexpr std::string_view kCheckAcyclic = "acyclic";
inline constexpr std::string_view kCheckTopoOrder = "topological-order";
inline constexpr std::string_view kCheckConnected = "connected";
inline constexpr std::string_view kCheckLabels = "labels";
inline constexpr std::string_view kCheckTags = "tags";

struct ValidationIssue {
  std::string check;
  std::string message;
  std::vector<std::size_t> arcs;  // offending arc indices
  std::vector<StateId> states;    // offending states
};

struct ValidationReport {
  std::vector<std::string> checks;  // every check that ran, in order
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool Passed(std::string_view check) const;
  // "check: message" for the first issue, empty when ok.
  std::string Summary() const;
};

ValidationReport Validate(const MultiRefFst& fst);

class InvalidFstError : public std::runtime_error {
 public:
  explicit InvalidFstError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Structure-only form for equality tests: states renumbered breadth-first
// from start, each state's arcs visited sorted by (label, tag).
struct CanonicalFst {
  std::size_t num_states = 0;
  StateId start = 0;
  StateId final_state = 0;
  // (src, dst, label or "<eps>", tag)
  std::vector<std::tuple<StateId, StateId, std::string, SpanTag>> arcs;

  bool operator==(const CanonicalFst&) const = default;
};

CanonicalFst Canonicalize(const MultiRefFst& fst);

// Text format:
//   # comment lines
//   start<TAB>id
//   src<TAB>dst<TAB>label<TAB>tag      (label "<eps>" for epsilon)
//   final<TAB>id
// Arc lines are sorted by src, then construction order.
inline constexpr std::string_view kEpsilonLabel = "<eps>";

std::string SerializeFst(const MultiRefFst& fst);

class FstParseError : public std::runtime_error {
 public:
  FstParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parses the text format. Structural problems (cycles, unreachable states)
// are left to Validate; only syntax errors throw.
MultiRefFst ParseFst(std::string_view text);

}  // namespace multiref
