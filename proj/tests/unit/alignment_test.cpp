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

#include <random>

#include "multiref/alignment.hpp"
#include "multiref/oracle.hpp"
#include "test_support.hpp"

using namespace multiref;
using multiref::testing::Words;

namespace {

std::vector<EditKind> Kinds(const Alignment& a) {
  std::vector<EditKind> kinds;
  for (const auto& op : a.ops) kinds.push_back(op.kind);
  return kinds;
}

}  // namespace

TEST_CASE("align examples") {
  auto a = Align(Words("a b c"), Words("a x c"));
  CHECK(a.ops == std::vector{EditOp::Match("a"), EditOp::Substitute("b", "x"), EditOp::Match("c")});
  CHECK(a.Cost() == 1);

  auto b = Align(Tokens{}, Words("a"));
  CHECK(b.ops == std::vector{EditOp::Insert("a")});
  CHECK(b.Cost() == 1);

  // Brute force over every alignment of the pair gives 1.
  CHECK(multiref::testing::BruteForceCost(Words("the big cat"), Words("the cat")) == 1);
  auto c = Align(Words("the big cat"), Words("the cat"));
  CHECK(c.ops == std::vector{EditOp::Match("the"), EditOp::Delete("big"), EditOp::Match("cat")});
  CHECK(c.Cost() == 1);

  CHECK(Align(Tokens{}, Tokens{}).ops.empty());
}

TEST_CASE("tie breaking prefers substitution over delete+insert, delete over insert") {
  // "a b" vs "b c": cost 2 either as sub+sub or del a, match b, ins c. The
  // backtrace from the end takes Sub at (2,2), then Sub again.
  auto a = Align(Words("a b"), Words("b c"));
  CHECK(a.Cost() == 2);
  CHECK(Kinds(a) == std::vector{EditKind::kSubstitute, EditKind::kSubstitute});

  auto b = Align(Words("x y"), Words("z"));
  CHECK(Kinds(b) == std::vector{EditKind::kDelete, EditKind::kSubstitute});

  // Deterministic: same inputs, same alignment.
  CHECK(Align(Words("a b c d"), Words("d c b a")).ops == Align(Words("a b c d"), Words("d c b a")).ops);
}

TEST_CASE("error counts") {
  auto same = Align(Words("a b c d e"), Words("a b c d e"));
  auto c = CountErrors(same);
  CHECK(c == ErrorCounts{0, 0, 0, 5});
  CHECK(c.Wer() == 0.0);

  Alignment msm{{EditOp::Match("a"), EditOp::Substitute("b", "x"), EditOp::Match("c")}, 3, 3};
  CHECK(CountErrors(msm) == ErrorCounts{1, 0, 0, 3});
  CHECK(*CountErrors(msm).Wer() == doctest::Approx(1.0 / 3.0));

  Alignment ins{{EditOp::Insert("a"), EditOp::Insert("b")}, 0, 2};
  CHECK(CountErrors(ins) == ErrorCounts{0, 2, 0, 0});
  CHECK_FALSE(CountErrors(ins).Wer().has_value());
}

TEST_CASE("alignment check rejects malformed ops") {
  Alignment ok{{EditOp::Match("a"), EditOp::Delete("b")}, 2, 1};
  CHECK_NOTHROW(ok.Check());

  Alignment bad_len{{EditOp::Match("a")}, 2, 1};
  CHECK_THROWS_AS(bad_len.Check(), std::invalid_argument);

  Alignment bad_match{{EditOp{EditKind::kMatch, "a", "b"}}, 1, 1};
  CHECK_THROWS_AS(bad_match.Check(), std::invalid_argument);

  Alignment bad_sub{{EditOp{EditKind::kSubstitute, "a", "a"}}, 1, 1};
  CHECK_THROWS_AS(bad_sub.Check(), std::invalid_argument);

  Alignment bad_del{{EditOp{EditKind::kDelete, "a", "a"}}, 1, 1};
  CHECK_THROWS_AS(bad_del.Check(), std::invalid_argument);
}

TEST_CASE("align is optimal and reconstructs both sides (random)") {
  std::mt19937 rng(7);
  const Tokens vocab = multiref::testing::Vocabulary(3);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens r = multiref::testing::RandomTokens(rng, vocab, 0, 5);
    Tokens h = multiref::testing::RandomTokens(rng, vocab, 0, 5);
    Alignment a = Align(r, h);
    CHECK_NOTHROW(a.Check());
    CHECK(a.RefTokens() == r);
    CHECK(a.HypTokens() == h);
    CHECK(a.Cost() == multiref::testing::BruteForceCost(r, h));
    CHECK(a.Cost() == NaiveEditDistance(r, h));

    // Symmetry with Insert/Delete swapped.
    Alignment back = Align(h, r);
    CHECK(back.Cost() == a.Cost());
    Alignment swapped{{}, a.hyp_len, a.ref_len};
    for (const auto& op : a.ops) {
      EditKind kind = op.kind == EditKind::kInsert   ? EditKind::kDelete
                      : op.kind == EditKind::kDelete ? EditKind::kInsert
                                                     : op.kind;
      swapped.ops.push_back({kind, op.hyp, op.ref});
    }
    CHECK_NOTHROW(swapped.Check());
    CHECK(swapped.Cost() == back.Cost());
  }
}

TEST_CASE("self alignment is all Match") {
  std::mt19937 rng(11);
  const Tokens vocab = multiref::testing::Vocabulary(4);
  for (int trial = 0; trial < 100; ++trial) {
    Tokens r = multiref::testing::RandomTokens(rng, vocab, 0, 12);
    Alignment a = Align(r, r);
    CHECK(a.Cost() == 0);
    for (const auto& op : a.ops) CHECK(op.kind == EditKind::kMatch);
  }
}
