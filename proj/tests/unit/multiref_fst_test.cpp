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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "multiref/multiref_fst.hpp"
#include "test_support.hpp"

using namespace multiref;
using multiref::testing::Words;

namespace {

using Kind = Segment::Kind;

MultiRefFst Build(const std::string& v, const std::string& nv, UnionMode mode) {
  return BuildFst(Align(Words(v), Words(nv)), mode);
}

const char* kFig1V = "i'm uh guessing this is i imagine you had to guess";
const char* kFig1NV = "i'm guessing this is i'm imagining you had to guess";
const char* kImplausible = "i'm guessing this is i'm imagine you had to guess";

}  // namespace

TEST_CASE("group spans into maximal runs") {
  Alignment same = Align(Words("a b c"), Words("a b c"));
  CHECK(GroupSpans(same) == std::vector<Segment>{{Kind::kShared, 0, 3}});

  Alignment mixed{{EditOp::Match("a"), EditOp::Substitute("b", "x"), EditOp::Delete("c"),
                   EditOp::Match("d")},
                  4, 3};
  CHECK(GroupSpans(mixed) == std::vector<Segment>{{Kind::kShared, 0, 1},
                                                  {Kind::kDisagreement, 1, 3},
                                                  {Kind::kShared, 3, 4}});

  Alignment ends{{EditOp::Substitute("a", "x"), EditOp::Match("b"), EditOp::Substitute("c", "y")}, 3, 3};
  CHECK(GroupSpans(ends) == std::vector<Segment>{{Kind::kDisagreement, 0, 1},
                                                 {Kind::kShared, 1, 2},
                                                 {Kind::kDisagreement, 2, 3}});
  CHECK(GroupSpans(Alignment{}).empty());
}

TEST_CASE("identical references give a linear GOLD chain") {
  for (UnionMode mode : {UnionMode::kSpanLevel, UnionMode::kWordLevel}) {
    MultiRefFst fst = Build("one two three four", "one two three four", mode);
    CHECK(fst.num_states() == 5);
    CHECK(fst.arcs().size() == 4);
    CHECK(CountForks(fst) == 0);
    for (const Arc& arc : fst.arcs()) CHECK(arc.tag == SpanTag::kGold);
    CHECK(EnumeratePaths(fst).paths == std::set<Tokens>{Words("one two three four")});
    CHECK(Validate(fst).ok());
  }
}

TEST_CASE("span-level fork for a deletion") {
  MultiRefFst fst = Build("the big cat", "the cat", UnionMode::kSpanLevel);
  std::vector<Arc> expected = {
      {0, 1, "the", SpanTag::kGold},
      {1, 2, "big", SpanTag::kV},
      {1, 2, std::nullopt, SpanTag::kNV},
      {2, 3, "cat", SpanTag::kGold},
  };
  CHECK(fst.arcs() == expected);
  CHECK(fst.start() == 0);
  CHECK(fst.final_state() == 3);
  CHECK(CountForks(fst) == 1);
  CHECK(SerializeFst(fst) == multiref::testing::ReadFixture("three_span.fst"));
}

TEST_CASE("multi-token branches keep topological numbering") {
  MultiRefFst fst = Build("x a b y", "x c d e y", UnionMode::kSpanLevel);
  CHECK(Validate(fst).ok());
  CHECK(CountForks(fst) == 1);
  auto paths = EnumeratePaths(fst).paths;
  CHECK(paths == std::set<Tokens>{Words("x a b y"), Words("x c d e y")});
  for (const Arc& arc : fst.arcs()) CHECK(arc.from < arc.to);
}

TEST_CASE("word-level union accepts the implausible mixed sentence, span-level does not") {
  MultiRefFst word = Build(kFig1V, kFig1NV, UnionMode::kWordLevel);
  MultiRefFst span = Build(kFig1V, kFig1NV, UnionMode::kSpanLevel);
  CHECK(EnumeratePaths(word).paths.contains(Words(kImplausible)));
  CHECK_FALSE(EnumeratePaths(span).paths.contains(Words(kImplausible)));
  CHECK(CountForks(span) == 2);
  CHECK(CountForks(word) == 3);
  CHECK(EnumeratePaths(span).raw_count == 4);
  CHECK(EnumeratePaths(word).raw_count == 8);
}

TEST_CASE("two span forks give at most four paths including both references") {
  MultiRefFst fst = Build("a b c d e", "a x c y e", UnionMode::kSpanLevel);
  PathSet ps = EnumeratePaths(fst);
  CHECK(ps.raw_count == 4);
  CHECK(ps.paths.size() <= 4);
  CHECK(ps.paths.contains(Words("a b c d e")));
  CHECK(ps.paths.contains(Words("a x c y e")));
  CHECK(ps.paths.contains(Words("a b c y e")));
}

TEST_CASE("enumeration limit is enforced before enumerating") {
  std::string v, nv;
  for (int i = 0; i < 11; ++i) {
    v += " k" + std::to_string(i) + " a" + std::to_string(i);
    nv += " k" + std::to_string(i) + " b" + std::to_string(i);
  }
  MultiRefFst fst = Build(v, nv, UnionMode::kSpanLevel);
  CHECK(CountForks(fst) == 11);
  CHECK(CountPaths(fst) == 2048);
  CHECK_THROWS_AS(EnumeratePaths(fst, 2047), PathLimitExceeded);
  CHECK(EnumeratePaths(fst, 2048).paths.size() == 2048);
  try {
    EnumeratePaths(fst, 100);
    FAIL("expected PathLimitExceeded");
  } catch (const PathLimitExceeded& e) {
    CHECK(e.paths() == 2048);
    CHECK(e.limit() == 100);
  }

  std::string big_v, big_nv;
  for (int i = 0; i < 21; ++i) {
    big_v += " k a" + std::to_string(i);
    big_nv += " k b" + std::to_string(i);
  }
  MultiRefFst big = Build(big_v, big_nv, UnionMode::kSpanLevel);
  CHECK(CountPaths(big) == (std::uint64_t{1} << 21));
  CHECK_THROWS_AS(EnumeratePaths(big), PathLimitExceeded);
}

TEST_CASE("build rejects an inconsistent alignment") {
  Alignment bad{{EditOp::Match("a")}, 2, 1};
  CHECK_THROWS_AS(BuildFst(bad), std::invalid_argument);
}

TEST_CASE("validate reports planted defects") {
  MultiRefFst good = Build("the big cat", "the cat", UnionMode::kSpanLevel);
  ValidationReport ok = Validate(good);
  CHECK(ok.ok());
  for (auto check : {kCheckStartFinal, kCheckArcRange, kCheckAcyclic, kCheckTopoOrder,
                     kCheckConnected, kCheckLabels, kCheckTags}) {
    CHECK(ok.Passed(check));
  }

  SUBCASE("back arc") {
    auto arcs = good.arcs();
    arcs.push_back({2, 1, "again", SpanTag::kV});
    MultiRefFst cyclic(good.num_states(), 0, 3, arcs, UnionMode::kSpanLevel);
    ValidationReport r = Validate(cyclic);
    CHECK_FALSE(r.Passed(kCheckAcyclic));
    CHECK_FALSE(r.Passed(kCheckTopoOrder));
    auto it = std::find_if(r.issues.begin(), r.issues.end(),
                           [](const ValidationIssue& i) { return i.check == kCheckAcyclic; });
    REQUIRE(it != r.issues.end());
    CHECK(std::find(it->arcs.begin(), it->arcs.end(), arcs.size() - 1) != it->arcs.end());
    CHECK(it->message.find("cycle") != std::string::npos);
  }

  SUBCASE("unreachable state") {
    MultiRefFst extra(good.num_states() + 1, 0, 3, good.arcs(), UnionMode::kSpanLevel);
    ValidationReport r = Validate(extra);
    CHECK_FALSE(r.Passed(kCheckConnected));
    CHECK(r.Passed(kCheckAcyclic));
    CHECK(r.issues.front().states == std::vector<StateId>{4});
  }

  SUBCASE("dead end") {
    auto arcs = good.arcs();
    arcs.push_back({1, 4, "stray", SpanTag::kV});
    MultiRefFst dead(5, 0, 3, arcs, UnionMode::kSpanLevel);
    CHECK_FALSE(Validate(dead).Passed(kCheckConnected));
  }

  SUBCASE("bad tags") {
    auto arcs = good.arcs();
    arcs[2].tag = SpanTag::kGold;  // epsilon GOLD arc
    CHECK_FALSE(Validate(MultiRefFst(4, 0, 3, arcs, UnionMode::kSpanLevel)).Passed(kCheckTags));
    arcs[2].tag = SpanTag::kV;  // two V branches
    CHECK_FALSE(Validate(MultiRefFst(4, 0, 3, arcs, UnionMode::kSpanLevel)).Passed(kCheckTags));
  }

  SUBCASE("out of range") {
    CHECK_FALSE(Validate(MultiRefFst(4, 0, 9, good.arcs(), UnionMode::kSpanLevel)).Passed(kCheckStartFinal));
    auto arcs = good.arcs();
    arcs.push_back({3, 17, "x", SpanTag::kGold});
    CHECK_FALSE(Validate(MultiRefFst(4, 0, 3, arcs, UnionMode::kSpanLevel)).Passed(kCheckArcRange));
  }

  SUBCASE("labels") {
    auto arcs = good.arcs();
    arcs[0].label = "two words";
    CHECK_FALSE(Validate(MultiRefFst(4, 0, 3, arcs, UnionMode::kSpanLevel)).Passed(kCheckLabels));
  }
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(ParseFst("start\t0\n0\t1\tx\n"), FstParseError);
  CHECK_THROWS_AS(ParseFst("start\t0\n0\t1\tx\tBLUE\nfinal\t1\n"), FstParseError);
  CHECK_THROWS_AS(ParseFst("0\t1\tx\tGOLD\nfinal\t1\n"), FstParseError);
  CHECK_THROWS_AS(ParseFst("start\t0\nstart\t0\nfinal\t0\n"), FstParseError);
  CHECK_THROWS_AS(ParseFst("start\tzero\nfinal\t0\n"), FstParseError);
  try {
    ParseFst("# c\nstart\t0\n0\t1\tx\tGOLD\t9\nfinal\t1\n");
    FAIL("expected FstParseError");
  } catch (const FstParseError& e) {
    CHECK(e.line() == 3);
  }
  MultiRefFst empty = ParseFst("start\t0\nfinal\t0\n");
  CHECK(empty.num_states() == 1);
  CHECK(Validate(empty).ok());
  CHECK(EnumeratePaths(empty).paths == std::set<Tokens>{Tokens{}});
}

TEST_CASE("canonical form ignores state numbering") {
  MultiRefFst a(4, 0, 3,
                {{0, 1, "x", SpanTag::kGold}, {1, 3, "y", SpanTag::kV}, {1, 2, "z", SpanTag::kNV},
                 {2, 3, std::nullopt, SpanTag::kNV}},
                UnionMode::kSpanLevel);
  MultiRefFst b(4, 0, 3,
                {{0, 2, "x", SpanTag::kGold}, {2, 1, "z", SpanTag::kNV}, {1, 3, std::nullopt, SpanTag::kNV},
                 {2, 3, "y", SpanTag::kV}},
                UnionMode::kSpanLevel);
  CHECK(Canonicalize(a) == Canonicalize(b));
  MultiRefFst c(4, 0, 3,
                {{0, 1, "x", SpanTag::kGold}, {1, 3, "y", SpanTag::kNV}, {1, 2, "z", SpanTag::kV},
                 {2, 3, std::nullopt, SpanTag::kV}},
                UnionMode::kSpanLevel);
  CHECK_FALSE(Canonicalize(a) == Canonicalize(c));
}

TEST_CASE("structural properties on random reference pairs") {
  std::mt19937 rng(2024);
  const Tokens vocab = multiref::testing::Vocabulary(5);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens v = multiref::testing::RandomTokens(rng, vocab, 0, 10);
    Tokens nv = multiref::testing::RandomTokens(rng, vocab, 0, 10);
    Alignment a = Align(v, nv);
    std::size_t matches = 0;
    for (const auto& op : a.ops) matches += op.IsError() ? 0 : 1;

    MultiRefFst span = BuildFst(a, UnionMode::kSpanLevel);
    MultiRefFst word = BuildFst(a, UnionMode::kWordLevel);
    PathSet span_paths = EnumeratePaths(span);
    PathSet word_paths = EnumeratePaths(word);
    for (const MultiRefFst* f : {&span, &word}) {
      CHECK(Validate(*f).ok());
      std::size_t gold = 0;
      for (const Arc& arc : f->arcs()) gold += arc.tag == SpanTag::kGold ? 1 : 0;
      CHECK(gold == matches);
      CHECK(CountPaths(*f) == (std::uint64_t{1} << CountForks(*f)));
      CHECK(Canonicalize(ParseFst(SerializeFst(*f))) == Canonicalize(*f));
    }
    CHECK(span_paths.paths.contains(v));
    CHECK(span_paths.paths.contains(nv));
    CHECK(word_paths.paths.contains(v));
    CHECK(word_paths.paths.contains(nv));
    CHECK(std::includes(word_paths.paths.begin(), word_paths.paths.end(), span_paths.paths.begin(),
                        span_paths.paths.end()));
  }
}
