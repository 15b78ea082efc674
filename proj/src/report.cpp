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

#include "multiref/report.hpp"

#include <cstdio>

namespace multiref {
namespace {

void AppendEscaped(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void WriteCounts(JsonWriter& w, const ErrorCounts& c) {
  w.BeginObject();
  w.Key("substitutions");
  w.Uint(c.substitutions);
  w.Key("insertions");
  w.Uint(c.insertions);
  w.Key("deletions");
  w.Uint(c.deletions);
  w.Key("reference_words");
  w.Uint(c.reference_words);
  w.Key("wer");
  w.Ratio(c.Wer());
  w.EndObject();
}

}  // namespace

std::string FormatRatio(std::optional<double> ratio) {
  if (!ratio) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", *ratio);
  return buf;
}

void JsonWriter::Newline() {
  out_ += '\n';
  out_.append(stack_.size() * 2, ' ');
}

void JsonWriter::BeforeValue() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  Frame& top = stack_.back();
  if (!top.empty) out_ += ',';
  if (top.inline_) {
    if (!top.empty) out_ += ' ';
  } else {
    Newline();
  }
  top.empty = false;
}

void JsonWriter::BeginObject() {
  BeforeValue();
  out_ += '{';
  bool in_inline = !stack_.empty() && stack_.back().inline_;
  stack_.push_back({in_inline, true});
}

void JsonWriter::BeginInlineObject() {
  BeforeValue();
  out_ += '{';
  stack_.push_back({true, true});
}

void JsonWriter::EndObject() {
  Frame top = stack_.back();
  stack_.pop_back();
  if (!top.empty && !top.inline_) Newline();
  out_ += '}';
}

void JsonWriter::BeginArray() {
  BeforeValue();
  out_ += '[';
  bool in_inline = !stack_.empty() && stack_.back().inline_;
  stack_.push_back({in_inline, true});
}

void JsonWriter::EndArray() {
  Frame top = stack_.back();
  stack_.pop_back();
  if (!top.empty && !top.inline_) Newline();
  out_ += ']';
}

void JsonWriter::Key(std::string_view key) {
  BeforeValue();
  AppendEscaped(out_, key);
  out_ += ": ";
  after_key_ = true;
}

void JsonWriter::String(std::string_view value) {
  BeforeValue();
  AppendEscaped(out_, value);
}

void JsonWriter::OptionalString(const std::optional<std::string>& value) {
  if (value) {
    String(*value);
  } else {
    Null();
  }
}

void JsonWriter::Uint(unsigned long long value) {
  BeforeValue();
  out_ += std::to_string(value);
}

void JsonWriter::Bool(bool value) {
  BeforeValue();
  out_ += value ? "true" : "false";
}

void JsonWriter::Ratio(std::optional<double> value) {
  BeforeValue();
  out_ += FormatRatio(value);
}

void JsonWriter::Null() {
  BeforeValue();
  out_ += "null";
}

std::string JsonWriter::Finish() {
  out_ += '\n';
  return std::move(out_);
}

std::string ScoreReportJson(const ScoreReport& report, const OracleResult* oracle) {
  JsonWriter w;
  w.BeginObject();
  w.Key("overall");
  WriteCounts(w, report.counts.overall);
  w.Key("per_tag");
  w.BeginObject();
  for (SpanTag tag : {SpanTag::kV, SpanTag::kNV, SpanTag::kGold}) {
    w.Key(TagName(tag));
    WriteCounts(w, report.counts.at(tag));
  }
  w.EndObject();
  w.Key("mwer");
  w.Ratio(report.mwer);
  w.Key("gold_wer");
  w.Ratio(report.gold_wer);
  w.Key("denominator");
  w.Uint(report.denominator);
  w.Key("objective");
  w.String(ObjectiveName(report.objective));
  w.Key("best_path");
  w.BeginArray();
  const auto tags = AttributeTags(report.best_path);
  for (std::size_t k = 0; k < report.best_path.size(); ++k) {
    const PathStep& step = report.best_path[k];
    w.BeginInlineObject();
    w.Key("arc_label");
    if (step.arc && step.arc->label) {
      w.String(*step.arc->label);
    } else if (step.arc) {
      w.String(kEpsilonLabel);
    } else {
      w.Null();
    }
    w.Key("hyp");
    w.OptionalString(step.op ? step.op->hyp : std::nullopt);
    w.Key("tag");
    w.String(TagName(tags[k]));
    w.Key("op");
    w.String(step.op ? EditKindName(step.op->kind) : std::string_view("eps"));
    w.EndObject();
  }
  w.EndArray();
  if (oracle != nullptr) {
    w.Key("oracle");
    w.BeginObject();
    w.Key("best_errors");
    w.Uint(oracle->best_errors);
    w.Key("best_wer");
    w.Ratio(oracle->best_wer);
    w.Key("best_path");
    w.String(JoinTokens(oracle->best_path_tokens));
    w.Key("candidates_examined");
    w.Uint(oracle->candidates_examined);
    w.Key("agrees_with_scorer");
    bool agrees = report.objective == Objective::kMinErrors
                      ? oracle->best_errors == report.counts.overall.Errors()
                      : static_cast<unsigned __int128>(oracle->min_wer.errors) * report.denominator ==
                            static_cast<unsigned __int128>(report.counts.overall.Errors()) *
                                oracle->min_wer.words;
    w.Bool(agrees);
    if (oracle->RatioPathDiffers()) {
      w.Key("min_wer_path");
      w.BeginObject();
      w.Key("errors");
      w.Uint(oracle->min_wer.errors);
      w.Key("reference_words");
      w.Uint(oracle->min_wer.words);
      w.Key("wer");
      w.Ratio(oracle->min_wer.Wer());
      w.Key("path");
      w.String(JoinTokens(oracle->min_wer.tokens));
      w.EndObject();
    }
    w.EndObject();
  }
  w.EndObject();
  return w.Finish();
}

std::string AlignmentJson(const Alignment& alignment) {
  const ErrorCounts c = CountErrors(alignment);
  JsonWriter w;
  w.BeginObject();
  w.Key("ref_len");
  w.Uint(alignment.ref_len);
  w.Key("hyp_len");
  w.Uint(alignment.hyp_len);
  w.Key("substitutions");
  w.Uint(c.substitutions);
  w.Key("insertions");
  w.Uint(c.insertions);
  w.Key("deletions");
  w.Uint(c.deletions);
  w.Key("reference_words");
  w.Uint(c.reference_words);
  w.Key("wer");
  w.Ratio(c.Wer());
  w.Key("ops");
  w.BeginArray();
  for (const EditOp& op : alignment.ops) {
    w.BeginInlineObject();
    w.Key("op");
    w.String(EditKindName(op.kind));
    w.Key("ref");
    w.OptionalString(op.ref);
    w.Key("hyp");
    w.OptionalString(op.hyp);
    w.EndObject();
  }
  w.EndArray();
  w.EndObject();
  return w.Finish();
}

}  // namespace multiref
