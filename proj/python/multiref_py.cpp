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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "multiref/alignment.hpp"
#include "multiref/multiref_fst.hpp"
#include "multiref/oracle.hpp"
#include "multiref/report.hpp"
#include "multiref/scoring.hpp"
#include "multiref/text_norm.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace multiref;

namespace {

UnionMode ModeArg(const std::string& name) {
  auto mode = ParseMode(name);
  if (!mode) throw py::value_error("mode must be 'span-level' or 'word-level'");
  return *mode;
}

Objective ObjectiveArg(const std::string& name) {
  auto objective = ParseObjective(name);
  if (!objective) throw py::value_error("objective must be 'min-wer' or 'min-errors'");
  return *objective;
}

py::object RatioOrNone(std::optional<double> r) {
  return r ? py::object(py::float_(*r)) : py::object(py::none());
}

py::dict CountsDict(const ErrorCounts& c) {
  py::dict d;
  d["substitutions"] = c.substitutions;
  d["insertions"] = c.insertions;
  d["deletions"] = c.deletions;
  d["reference_words"] = c.reference_words;
  d["wer"] = RatioOrNone(c.Wer());
  return d;
}

}  // namespace

PYBIND11_MODULE(_multiref, m) {
  m.doc() = "Multireference WER scoring over tagged word FSTs";

  py::register_exception<PathLimitExceeded>(m, "PathLimitExceeded");
  py::register_exception<InvalidFstError>(m, "InvalidFstError");
  py::register_exception<FstParseError>(m, "FstParseError");

  m.def("tokenize", [](const std::string& raw) { return Tokenize(raw); }, py::arg("raw"));
  m.def(
      "apply_pipeline",
      [](const std::string& steps, const std::string& raw) {
        return ApplyPipeline(NormalizationConfig::Parse(steps), raw);
      },
      py::arg("steps"), py::arg("raw"),
      "Tokenize `raw` and apply the comma separated cleaning `steps` in order.");

  py::class_<ErrorCounts>(m, "ErrorCounts")
      .def_readonly("substitutions", &ErrorCounts::substitutions)
      .def_readonly("insertions", &ErrorCounts::insertions)
      .def_readonly("deletions", &ErrorCounts::deletions)
      .def_readonly("reference_words", &ErrorCounts::reference_words)
      .def_property_readonly("errors", &ErrorCounts::Errors)
      .def_property_readonly("wer", &ErrorCounts::Wer);

  py::class_<Alignment>(m, "Alignment")
      .def_readonly("ref_len", &Alignment::ref_len)
      .def_readonly("hyp_len", &Alignment::hyp_len)
      .def_property_readonly("cost", &Alignment::Cost)
      .def_property_readonly("ops",
                             [](const Alignment& a) {
                               py::list ops;
                               for (const EditOp& op : a.ops) {
                                 ops.append(py::make_tuple(std::string(EditKindName(op.kind)),
                                                           op.ref, op.hyp));
                               }
                               return ops;
                             })
      .def("counts", &CountErrors)
      .def("to_json", &AlignmentJson);

  m.def(
      "align", [](const Tokens& ref, const Tokens& hyp) { return Align(ref, hyp); },
      py::arg("reference"), py::arg("hypothesis"));

  py::class_<MultiRefFst>(m, "MultiRefFst")
      .def_property_readonly("num_states", &MultiRefFst::num_states)
      .def_property_readonly("start", &MultiRefFst::start)
      .def_property_readonly("final", &MultiRefFst::final_state)
      .def_property_readonly("mode", [](const MultiRefFst& f) { return std::string(ModeName(f.mode())); })
      .def_property_readonly("arcs",
                             [](const MultiRefFst& f) {
                               py::list arcs;
                               for (const Arc& arc : f.arcs()) {
                                 arcs.append(py::make_tuple(arc.from, arc.to, arc.label,
                                                            std::string(TagName(arc.tag))));
                               }
                               return arcs;
                             })
      .def_property_readonly("num_forks", &CountForks)
      .def("serialize", &SerializeFst)
      .def("paths",
           [](const MultiRefFst& f, std::uint64_t limit) {
             auto paths = EnumeratePaths(f, limit).paths;
             return std::vector<Tokens>(paths.begin(), paths.end());
           },
           py::arg("limit") = kDefaultPathLimit)
      .def("validate", [](const MultiRefFst& f) {
        py::list issues;
        for (const auto& issue : Validate(f).issues) {
          issues.append(py::make_tuple(issue.check, issue.message, issue.arcs, issue.states));
        }
        return issues;
      });

  m.def(
      "build_fst",
      [](const Tokens& v, const Tokens& nv, const std::string& mode) {
        return BuildFst(Align(v, nv), ModeArg(mode));
      },
      py::arg("verbatim"), py::arg("nonverbatim"), py::arg("mode") = "span-level");
  m.def("parse_fst", [](const std::string& text) { return ParseFst(text); }, py::arg("text"));

  py::class_<ScoreReport>(m, "ScoreReport")
      .def_property_readonly("mwer", [](const ScoreReport& r) { return r.mwer; })
      .def_property_readonly("gold_wer", [](const ScoreReport& r) { return r.gold_wer; })
      .def_readonly("denominator", &ScoreReport::denominator)
      .def_property_readonly("overall", [](const ScoreReport& r) { return CountsDict(r.counts.overall); })
      .def_property_readonly("per_tag",
                             [](const ScoreReport& r) {
                               py::dict d;
                               for (SpanTag tag : {SpanTag::kV, SpanTag::kNV, SpanTag::kGold}) {
                                 d[py::str(std::string(TagName(tag)))] = CountsDict(r.counts.at(tag));
                               }
                               return d;
                             })
      .def("to_json", [](const ScoreReport& r) { return ScoreReportJson(r); });

  m.def(
      "score_fst",
      [](const MultiRefFst& f, const Tokens& hyp, const std::string& objective) {
        return ScoreFst(f, hyp, {ObjectiveArg(objective)});
      },
      py::arg("fst"), py::arg("hypothesis"), py::arg("objective") = "min-wer");
  m.def(
      "score_single", [](const Tokens& ref, const Tokens& hyp) { return ScoreSingle(ref, hyp); },
      py::arg("reference"), py::arg("hypothesis"));

  m.def(
      "oracle_mwer",
      [](const MultiRefFst& f, const Tokens& hyp, std::uint64_t limit) {
        OracleResult r = OracleMwer(f, hyp, limit);
        py::dict d;
        d["best_errors"] = r.best_errors;
        d["best_wer"] = RatioOrNone(r.best_wer);
        d["best_path"] = r.best_path_tokens;
        d["candidates_examined"] = r.candidates_examined;
        d["min_wer"] = RatioOrNone(r.min_wer.Wer());
        d["min_wer_path"] = r.min_wer.tokens;
        return d;
      },
      py::arg("fst"), py::arg("hypothesis"), py::arg("limit") = kDefaultPathLimit);
  m.def(
      "naive_edit_distance", [](const Tokens& a, const Tokens& b) { return NaiveEditDistance(a, b); },
      py::arg("a"), py::arg("b"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
