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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace multiref {

// A word token: non-empty, lowercase, no whitespace.
using Token = std::string;
using Tokens = std::vector<Token>;

// Cleaning steps of the normalization ladder, in their canonical ladder order.
enum class NormStep {
  kFillerWords,
  kEnglishNormalize,
  kStuttersRepetitions,
  kFillerPhrases,
};

std::string_view StepName(NormStep step);
std::optional<NormStep> ParseStep(std::string_view name);

// Ordered list of distinct cleaning steps. An empty config is the raw condition.
class NormalizationConfig {
 public:
  NormalizationConfig() = default;
  // Throws std::invalid_argument on a duplicate step.
  explicit NormalizationConfig(std::vector<NormStep> steps);

  // Parses a comma separated list of step names ("filler-words,english-normalize").
  // Empty string yields the empty config. Throws std::invalid_argument on
  // unknown or duplicate names.
  static NormalizationConfig Parse(std::string_view list);

  // The cumulative ladder: raw, +filler-words, +english-normalize,
  // +stutters-repetitions, +filler-phrases.
  static std::vector<NormalizationConfig> Ladder();

  const std::vector<NormStep>& steps() const { return steps_; }
  std::string ToString() const;

  bool operator==(const NormalizationConfig&) const = default;

 private:
  std::vector<NormStep> steps_;
};

// Lexicons and rewrite tables used by the cleaning steps. The shipped tables
// live under data/ and are compiled in; MULTIREF_DATA_DIR points at a
// directory holding replacements with the same file names.
struct NormalizationTables {
  std::unordered_set<std::string> filler_words;
  std::unordered_map<std::string, Tokens> contractions;
  std::unordered_map<std::string, Tokens> numbers;
  std::unordered_map<std::string, std::string> spelling;
  // Phrases removed anywhere, and phrases removed only at sequence start.
  std::vector<Tokens> filler_phrases;
  std::vector<Tokens> initial_filler_phrases;

  static NormalizationTables Builtin();
  // Missing files fall back to the builtin table of the same name.
  static NormalizationTables FromDirectory(const std::filesystem::path& dir);
  // Builtin tables, or FromDirectory($MULTIREF_DATA_DIR) when that is set.
  // Loaded once per process.
  static const NormalizationTables& Default();
};

inline constexpr const char* kDataDirEnv = "MULTIREF_DATA_DIR";

// Whitespace split, ASCII case fold, and trimming of the sentence punctuation
// . , ? ! ; : " ( ) from both ends of each token. Apostrophes and hyphens are
// kept (including a trailing stutter hyphen). Tokens left empty, or made only
// of hyphens, are dropped.
Tokens Tokenize(std::string_view raw);

Tokens RemoveFillerWords(std::span<const Token> tokens,
                         const NormalizationTables& tables = NormalizationTables::Default());

// Contraction expansion, then number canonicalization, then British to
// American spelling.
Tokens NormalizeEnglish(std::span<const Token> tokens,
                        const NormalizationTables& tables = NormalizationTables::Default());

// Drops stutter fragments ("w-" before "what") and collapses immediate
// unigram and bigram repetitions.
Tokens RemoveStuttersRepetitions(std::span<const Token> tokens);

Tokens RemoveFillerPhrases(std::span<const Token> tokens,
                           const NormalizationTables& tables = NormalizationTables::Default());

Tokens ApplyStep(NormStep step, std::span<const Token> tokens,
                 const NormalizationTables& tables = NormalizationTables::Default());

// Tokenize, then each configured step in order.
Tokens ApplyPipeline(const NormalizationConfig& config, std::string_view raw,
                     const NormalizationTables& tables = NormalizationTables::Default());

std::string JoinTokens(std::span<const Token> tokens);

}  // namespace multiref
