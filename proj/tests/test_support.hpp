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

// Shared helpers for the test binaries: seeded generators and brute-force
// checkers that do not reuse library code paths.

#include <cstddef>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multiref/alignment.hpp"
#include "multiref/text_norm.hpp"

namespace multiref::testing {

inline std::string FixturePath(const std::string& name) {
  return std::string(MULTIREF_FIXTURES) + "/" + name;
}

inline std::string ReadFixture(const std::string& name) {
  std::ifstream in(FixturePath(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Tokens Words(const std::string& text) {
  Tokens out;
  std::istringstream in(text);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Vocabulary "w0".."w{size-1}".
inline Tokens Vocabulary(std::size_t size) {
  Tokens vocab;
  for (std::size_t i = 0; i < size; ++i) vocab.push_back("w" + std::to_string(i));
  return vocab;
}

inline Tokens RandomTokens(std::mt19937& rng, const Tokens& vocab, std::size_t min_len,
                           std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  Tokens out(len(rng));
  for (auto& t : out) t = vocab[pick(rng)];
  return out;
}

// Every alignment of ref against hyp, by exhaustive recursion over the
// Match/Substitute, Delete and Insert moves. Exponential; keep inputs tiny.
inline void ForEachAlignment(const Tokens& ref, const Tokens& hyp,
                             const std::function<void(const std::vector<EditOp>&)>& visit) {
  std::vector<EditOp> ops;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == ref.size() && j == hyp.size()) {
      visit(ops);
      return;
    }
    if (i < ref.size() && j < hyp.size()) {
      ops.push_back(ref[i] == hyp[j] ? EditOp::Match(ref[i]) : EditOp::Substitute(ref[i], hyp[j]));
      rec(i + 1, j + 1);
      ops.pop_back();
    }
    if (i < ref.size()) {
      ops.push_back(EditOp::Delete(ref[i]));
      rec(i + 1, j);
      ops.pop_back();
    }
    if (j < hyp.size()) {
      ops.push_back(EditOp::Insert(hyp[j]));
      rec(i, j + 1);
      ops.pop_back();
    }
  };
  rec(0, 0);
}

inline std::size_t BruteForceCost(const Tokens& ref, const Tokens& hyp) {
  std::size_t best = ref.size() + hyp.size();
  ForEachAlignment(ref, hyp, [&](const std::vector<EditOp>& ops) {
    std::size_t cost = 0;
    for (const auto& op : ops) cost += op.IsError() ? 1 : 0;
    best = std::min(best, cost);
  });
  return best;
}

}  // namespace multiref::testing
