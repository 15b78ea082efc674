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

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>

#include "multiref/multiref_fst.hpp"

namespace multiref {
namespace {

constexpr std::string_view kModeComment = "# multiref-fst mode=";

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    std::size_t tab = line.find('\t');
    fields.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) return fields;
    line.remove_prefix(tab + 1);
  }
}

StateId ParseState(std::string_view field, std::size_t line_no) {
  StateId value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw FstParseError(line_no, "bad state id '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

FstParseError::FstParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string SerializeFst(const MultiRefFst& fst) {
  std::string out;
  out += kModeComment;
  out += ModeName(fst.mode());
  out += '\n';
  out += "start\t" + std::to_string(fst.start()) + '\n';
  std::vector<std::size_t> order(fst.arcs().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fst.arc(a).from < fst.arc(b).from;
  });
  for (std::size_t a : order) {
    const Arc& arc = fst.arc(a);
    if (arc.label && *arc.label == kEpsilonLabel) {
      throw std::invalid_argument("token '<eps>' collides with the epsilon label");
    }
    out += std::to_string(arc.from);
    out += '\t';
    out += std::to_string(arc.to);
    out += '\t';
    out += arc.label ? std::string_view(*arc.label) : kEpsilonLabel;
    out += '\t';
    out += TagName(arc.tag);
    out += '\n';
  }
  out += "final\t" + std::to_string(fst.final_state()) + '\n';
  return out;
}

MultiRefFst ParseFst(std::string_view text) {
  std::optional<StateId> start;
  std::optional<StateId> final_state;
  UnionMode mode = UnionMode::kSpanLevel;
  std::vector<Arc> arcs;
  StateId max_state = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kModeComment)) {
        auto parsed = ParseMode(line.substr(kModeComment.size()));
        if (!parsed) throw FstParseError(line_no, "unknown mode in '" + std::string(line) + "'");
        mode = *parsed;
      }
      continue;
    }
    auto fields = SplitTabs(line);
    if (fields.size() == 2 && (fields[0] == "start" || fields[0] == "final")) {
      auto& slot = fields[0] == "start" ? start : final_state;
      if (slot) throw FstParseError(line_no, "duplicate " + std::string(fields[0]) + " line");
      slot = ParseState(fields[1], line_no);
      max_state = std::max(max_state, *slot);
      continue;
    }
    if (fields.size() != 4) {
      throw FstParseError(line_no, "expected src<TAB>dst<TAB>label<TAB>tag, got '" +
                                       std::string(line) + "'");
    }
    Arc arc;
    arc.from = ParseState(fields[0], line_no);
    arc.to = ParseState(fields[1], line_no);
    if (fields[2].empty()) throw FstParseError(line_no, "empty label");
    if (fields[2] != kEpsilonLabel) arc.label = std::string(fields[2]);
    auto tag = ParseTag(fields[3]);
    if (!tag) throw FstParseError(line_no, "unknown tag '" + std::string(fields[3]) + "'");
    arc.tag = *tag;
    max_state = std::max({max_state, arc.from, arc.to});
    arcs.push_back(std::move(arc));
  }
  if (!start) throw FstParseError(line_no, "missing start line");
  if (!final_state) throw FstParseError(line_no, "missing final line");
  return MultiRefFst(std::size_t{max_state} + 1, *start, *final_state, std::move(arcs), mode);
}

}  // namespace multiref
