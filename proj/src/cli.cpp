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

#include "multiref/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "multiref/alignment.hpp"
#include "multiref/multiref_fst.hpp"
#include "multiref/oracle.hpp"
#include "multiref/report.hpp"
#include "multiref/scoring.hpp"
#include "multiref/text_norm.hpp"

namespace multiref {
namespace {

namespace fs = std::filesystem;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw CliError("error reading " + path);
  return ss.str();
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

// Writes `content` to `path` via a temporary sibling and a rename, so the
// destination either holds the full output or does not change. An empty path
// means `out`.
void WriteOutput(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
    if (!out) throw CliError("error writing output");
    return;
  }
  fs::path tmp = path + ".partial";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CliError("cannot write " + path);
    f << content;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw CliError("error writing " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CliError("cannot write " + path);
  }
}

// A whole-file transcript: lines joined in order, then normalized.
Tokens LoadTranscript(const std::string& path, const NormalizationConfig& steps) {
  return ApplyPipeline(steps, ReadText(path));
}

NormalizationConfig ParseSteps(const std::string& list) {
  try {
    return NormalizationConfig::Parse(list);
  } catch (const std::invalid_argument& e) {
    throw CliError(e.what());
  }
}

struct NormalizeArgs {
  std::string input;
  std::string steps;
  std::string output;
};

struct AlignArgs {
  std::string ref;
  std::string hyp;
  std::string steps;
  std::string output;
};

struct BuildArgs {
  std::string v;
  std::string nv;
  std::string mode = "span-level";
  std::string steps;
  std::string output;
};

struct ScoreArgs {
  std::string fst;
  std::vector<std::string> hyps;
  std::string steps;
  std::string objective = "min-wer";
  bool oracle = false;
  std::uint64_t oracle_limit = kDefaultPathLimit;
  std::string output;
  std::string out_dir;
};

struct AblateArgs {
  std::string ref;
  std::string hyp;
  bool per_line = false;
  std::string output;
};

void CmdNormalize(const NormalizeArgs& a, std::ostream& out) {
  const NormalizationConfig steps = ParseSteps(a.steps);
  std::string result;
  for (const std::string& line : SplitLines(ReadText(a.input))) {
    result += JoinTokens(ApplyPipeline(steps, line));
    result += '\n';
  }
  WriteOutput(a.output, result, out);
}

void CmdAlign(const AlignArgs& a, std::ostream& out) {
  const NormalizationConfig steps = ParseSteps(a.steps);
  Tokens ref = LoadTranscript(a.ref, steps);
  Tokens hyp = LoadTranscript(a.hyp, steps);
  WriteOutput(a.output, AlignmentJson(Align(ref, hyp)), out);
}

void CmdBuildFst(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  const NormalizationConfig steps = ParseSteps(a.steps);
  auto mode = ParseMode(a.mode);
  if (!mode) throw CliError("unknown mode: " + a.mode);
  Tokens v = LoadTranscript(a.v, steps);
  Tokens nv = LoadTranscript(a.nv, steps);
  if (v.empty()) throw CliError("reference " + a.v + " has no words");
  if (nv.empty()) throw CliError("reference " + a.nv + " has no words");
  MultiRefFst fst = BuildFst(Align(v, nv), *mode);
  const std::size_t forks = CountForks(fst);
  err << "forks: " << forks << "\n";
  err << "paths: <= 2^" << forks << "\n";
  WriteOutput(a.output, SerializeFst(fst), out);
}

std::string ScoreOne(const MultiRefFst& fst, const std::string& hyp_path,
                     const NormalizationConfig& steps, const ScoreOptions& options, bool oracle,
                     std::uint64_t limit) {
  Tokens hyp = LoadTranscript(hyp_path, steps);
  ScoreReport report = ScoreFst(fst, hyp, options);
  if (!oracle) return ScoreReportJson(report);
  OracleResult result = OracleMwer(fst, hyp, limit);
  return ScoreReportJson(report, &result);
}

void CmdScore(const ScoreArgs& a, std::ostream& out) {
  const NormalizationConfig steps = ParseSteps(a.steps);
  auto objective = ParseObjective(a.objective);
  if (!objective) throw CliError("unknown objective: " + a.objective);
  if (a.hyps.size() > 1 && a.out_dir.empty()) {
    throw CliError("several hypotheses need --out-dir");
  }
  MultiRefFst fst;
  try {
    fst = ParseFst(ReadText(a.fst));
  } catch (const FstParseError& e) {
    throw CliError(a.fst + ": " + e.what());
  }
  ValidationReport validation = Validate(fst);
  if (!validation.ok()) throw CliError(a.fst + ": invalid FST: " + validation.Summary());

  const ScoreOptions options{*objective};
  std::vector<std::future<std::string>> jobs;
  for (const std::string& hyp : a.hyps) {
    jobs.push_back(std::async(std::launch::async, ScoreOne, std::cref(fst), hyp, std::cref(steps),
                              options, a.oracle, a.oracle_limit));
  }
  std::vector<std::string> reports;
  for (auto& job : jobs) reports.push_back(job.get());

  if (a.out_dir.empty()) {
    WriteOutput(a.output, reports.front(), out);
    return;
  }
  fs::create_directories(a.out_dir);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    fs::path dest = fs::path(a.out_dir) / (fs::path(a.hyps[i]).filename().string() + ".json");
    WriteOutput(dest.string(), reports[i], out);
  }
}

void CmdAblate(const AblateArgs& a, std::ostream& out) {
  const std::string ref_text = ReadText(a.ref);
  const std::string hyp_text = ReadText(a.hyp);
  std::vector<std::pair<std::string, std::string>> units;
  if (a.per_line) {
    auto ref_lines = SplitLines(ref_text);
    auto hyp_lines = SplitLines(hyp_text);
    if (ref_lines.size() != hyp_lines.size()) {
      throw CliError("--per-line needs equal line counts (" + std::to_string(ref_lines.size()) +
                     " vs " + std::to_string(hyp_lines.size()) + ")");
    }
    for (std::size_t i = 0; i < ref_lines.size(); ++i) units.emplace_back(ref_lines[i], hyp_lines[i]);
  } else {
    units.emplace_back(ref_text, hyp_text);
  }

  std::string table =
      "condition\twer\tins\tdel\tsubstitutions\tinsertions\tdeletions\treference_words\n";
  const char* names[] = {"raw", "+filler-words", "+english-normalize", "+stutters-repetitions",
                         "+filler-phrases"};
  auto ladder = NormalizationConfig::Ladder();
  for (std::size_t row = 0; row < ladder.size(); ++row) {
    ErrorCounts total;
    for (const auto& [ref_raw, hyp_raw] : units) {
      Tokens ref = ApplyPipeline(ladder[row], ref_raw);
      Tokens hyp = ApplyPipeline(ladder[row], hyp_raw);
      total += CountErrors(Align(ref, hyp));
    }
    auto rate = [&](std::size_t count) -> std::optional<double> {
      if (total.reference_words == 0) return std::nullopt;
      return static_cast<double>(count) / static_cast<double>(total.reference_words);
    };
    table += names[row];
    table += '\t' + FormatRatio(total.Wer());
    table += '\t' + FormatRatio(rate(total.insertions));
    table += '\t' + FormatRatio(rate(total.deletions));
    table += '\t' + std::to_string(total.substitutions);
    table += '\t' + std::to_string(total.insertions);
    table += '\t' + std::to_string(total.deletions);
    table += '\t' + std::to_string(total.reference_words);
    table += '\n';
  }
  WriteOutput(a.output, table, out);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multireference WER scoring over tagged word FSTs", "multiref"};
  app.require_subcommand(1);
  const std::string steps_help =
      "Comma separated cleaning steps, applied in order: filler-words, english-normalize, "
      "stutters-repetitions, filler-phrases";

  NormalizeArgs normalize;
  auto* cmd_normalize = app.add_subcommand("normalize", "Tokenize and clean a transcript, line by line");
  cmd_normalize->add_option("input", normalize.input, "Transcript file")->required();
  cmd_normalize->add_option("--steps", normalize.steps, steps_help);
  cmd_normalize->add_option("-o,--output", normalize.output, "Output file (default stdout)");

  AlignArgs align;
  auto* cmd_align = app.add_subcommand("align", "Minimum edit distance word alignment as JSON");
  cmd_align->add_option("reference", align.ref)->required();
  cmd_align->add_option("hypothesis", align.hyp)->required();
  cmd_align->add_option("--steps", align.steps, steps_help);
  cmd_align->add_option("-o,--output", align.output, "Output file (default stdout)");

  BuildArgs build;
  auto* cmd_build = app.add_subcommand("build-fst", "Compile a V/NV reference pair into a multireference FST");
  cmd_build->add_option("verbatim", build.v, "Verbatim (V) reference")->required();
  cmd_build->add_option("nonverbatim", build.nv, "Nonverbatim (NV) reference")->required();
  cmd_build->add_option("--mode", build.mode, "span-level (default) or word-level");
  cmd_build->add_option("--steps", build.steps, steps_help);
  cmd_build->add_option("-o,--output", build.output, "Output file (default stdout)");

  ScoreArgs score;
  auto* cmd_score = app.add_subcommand("score", "Score hypotheses against a multireference FST");
  cmd_score->add_option("fst", score.fst, "FST text file")->required();
  cmd_score->add_option("hypotheses", score.hyps, "Hypothesis transcripts")->required();
  cmd_score->add_option("--steps", score.steps, steps_help + " (hypothesis side)");
  cmd_score->add_option("--objective", score.objective, "min-wer (default) or min-errors");
  cmd_score->add_flag("--oracle", score.oracle, "Cross-check with brute-force path enumeration");
  cmd_score->add_option("--oracle-limit", score.oracle_limit, "Maximum paths the oracle may enumerate");
  cmd_score->add_option("-o,--output", score.output, "Report file (default stdout)");
  cmd_score->add_option("--out-dir", score.out_dir, "Write <hypothesis>.json reports here");

  AblateArgs ablate;
  auto* cmd_ablate = app.add_subcommand("ablate", "WER under the cumulative cleaning ladder");
  cmd_ablate->add_option("reference", ablate.ref)->required();
  cmd_ablate->add_option("hypothesis", ablate.hyp)->required();
  cmd_ablate->add_flag("--per-line", ablate.per_line, "Align line pairs separately and sum counts");
  cmd_ablate->add_option("-o,--output", ablate.output, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (cmd_normalize->parsed()) CmdNormalize(normalize, out);
    if (cmd_align->parsed()) CmdAlign(align, out);
    if (cmd_build->parsed()) CmdBuildFst(build, out, err);
    if (cmd_score->parsed()) CmdScore(score, out);
    if (cmd_ablate->parsed()) CmdAblate(ablate, out);
  } catch (const std::exception& e) {
    err << "multiref: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace multiref
