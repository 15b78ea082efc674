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

#include "multiref/text_norm.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "builtin_data.hpp"

namespace multiref {
namespace {

constexpr std::string_view kStepNames[] = {
    "filler-words",
    "english-normalize",
    "stutters-repetitions",
    "filler-phrases",
};

constexpr std::size_t kStutterWindow = 3;

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool IsTrimmedPunct(char c) {
  switch (c) {
    case '.': case ',': case '?': case '!': case ';': case ':':
    case '"': case '(': case ')':
      return true;
    default:
      return false;
  }
}

char AsciiLower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

Tokens SplitSpaces(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view StripHyphens(std::string_view s) {
  while (!s.empty() && s.back() == '-') s.remove_suffix(1);
  return s;
}

bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix) {
  if (prefix.size() > s.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (AsciiLower(s[i]) != AsciiLower(prefix[i])) return false;
  }
  return true;
}

// Non-empty, non-comment lines of a data file.
std::vector<std::string_view> DataLines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && IsSpace(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

std::unordered_map<std::string, Tokens> ParseMapping(std::string_view text,
                                                     std::string_view file) {
  std::unordered_map<std::string, Tokens> table;
  for (std::string_view line : DataLines(text)) {
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw std::runtime_error(std::string(file) + ": expected from<TAB>to, got '" +
                               std::string(line) + "'");
    }
    Tokens from = SplitSpaces(line.substr(0, tab));
    Tokens to = SplitSpaces(line.substr(tab + 1));
    if (from.size() != 1 || to.empty()) {
      throw std::runtime_error(std::string(file) + ": bad mapping '" + std::string(line) + "'");
    }
    table[from.front()] = std::move(to);
  }
  return table;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

NormalizationTables TablesFromSource(
    const std::function<std::string(std::string_view)>& source) {
  NormalizationTables t;
  for (std::string_view line : DataLines(source("filler_words.txt"))) {
    for (auto& tok : SplitSpaces(line)) t.filler_words.insert(std::move(tok));
  }
  std::string phrases = source("filler_phrases.txt");
  for (std::string_view line : DataLines(phrases)) {
    bool initial = false;
    Tokens words = SplitSpaces(line);
    if (!words.empty() && words.front().starts_with('^')) {
      initial = true;
      words.front().erase(0, 1);
      if (words.front().empty()) words.erase(words.begin());
    }
    if (words.empty()) continue;
    (initial ? t.initial_filler_phrases : t.filler_phrases).push_back(std::move(words));
  }
  // Longest phrase first so "you know" wins over a hypothetical "you".
  auto by_length = [](const Tokens& a, const Tokens& b) { return a.size() > b.size(); };
  std::stable_sort(t.filler_phrases.begin(), t.filler_phrases.end(), by_length);
  std::stable_sort(t.initial_filler_phrases.begin(), t.initial_filler_phrases.end(), by_length);

  t.contractions = ParseMapping(source("contractions.tsv"), "contractions.tsv");
  t.numbers = ParseMapping(source("numbers.tsv"), "numbers.tsv");
  for (auto& [from, to] : ParseMapping(source("spelling.tsv"), "spelling.tsv")) {
    if (to.size() != 1) throw std::runtime_error("spelling.tsv: '" + from + "' maps to several words");
    t.spelling.emplace(from, std::move(to.front()));
  }
  return t;
}

bool MatchesAt(std::span<const Token> tokens, std::size_t pos, const Tokens& phrase) {
  if (pos + phrase.size() > tokens.size()) return false;
  return std::equal(phrase.begin(), phrase.end(), tokens.begin() + pos);
}

// Single stutter pass, right to left. A fragment is judged against the next
// kStutterWindow tokens that survive, so the result has no removable fragment
// left.
Tokens StutterPass(std::span<const Token> tokens) {
  Tokens kept_reversed;
  kept_reversed.reserve(tokens.size());
  for (std::size_t i = tokens.size(); i-- > 0;) {
    const Token& tok = tokens[i];
    std::string_view stem = StripHyphens(tok);
    bool fragment = tok.ends_with('-') && !stem.empty();
    bool drop = false;
    if (fragment) {
      std::size_t seen = 0;
      for (auto it = kept_reversed.rbegin(); it != kept_reversed.rend() && seen < kStutterWindow;
           ++it, ++seen) {
        if (StartsWithIgnoreCase(StripHyphens(*it), stem)) {
          drop = true;
          break;
        }
      }
    }
    if (!drop) kept_reversed.push_back(tok);
  }
  return Tokens(kept_reversed.rbegin(), kept_reversed.rend());
}

// Collapses "a a" -> "a" and "a b a b" -> "a b", left to right.
Tokens RepetitionPass(std::span<const Token> tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const Token& tok : tokens) {
    if (!out.empty() && out.back() == tok) continue;
    out.push_back(tok);
    std::size_t n = out.size();
    if (n >= 4 && out[n - 4] == out[n - 2] && out[n - 3] == out[n - 1]) {
      out.resize(n - 2);
    }
  }
  return out;
}

Tokens FillerPhrasePass(std::span<const Token> tokens, const NormalizationTables& tables) {
  Tokens out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Tokens* hit = nullptr;
    for (const Tokens& phrase : tables.filler_phrases) {
      if (MatchesAt(tokens, i, phrase)) {
        hit = &phrase;
        break;
      }
    }
    if (hit != nullptr) {
      i += hit->size();
    } else {
      out.push_back(tokens[i++]);
    }
  }
  std::size_t start = 0;
  for (bool again = true; again;) {
    again = false;
    for (const Tokens& phrase : tables.initial_filler_phrases) {
      if (MatchesAt(out, start, phrase)) {
        start += phrase.size();
        again = true;
        break;
      }
    }
  }
  out.erase(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(start));
  return out;
}

template <typename Pass>
Tokens Fixpoint(std::span<const Token> tokens, Pass pass) {
  Tokens current(tokens.begin(), tokens.end());
  while (true) {
    Tokens next = pass(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

void AppendMapped(const std::unordered_map<std::string, Tokens>& table, const Token& tok,
                  Tokens& out) {
  auto it = table.find(tok);
  if (it == table.end()) {
    out.push_back(tok);
  } else {
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
}

}  // namespace

std::string_view StepName(NormStep step) { return kStepNames[static_cast<std::size_t>(step)]; }

std::optional<NormStep> ParseStep(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kStepNames); ++i) {
    if (kStepNames[i] == name) return static_cast<NormStep>(i);
  }
  return std::nullopt;
}

NormalizationConfig::NormalizationConfig(std::vector<NormStep> steps) : steps_(std::move(steps)) {
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    for (std::size_t j = i + 1; j < steps_.size(); ++j) {
      if (steps_[i] == steps_[j]) {
        throw std::invalid_argument("duplicate normalization step: " +
                                    std::string(StepName(steps_[i])));
      }
    }
  }
}

NormalizationConfig NormalizationConfig::Parse(std::string_view list) {
  std::vector<NormStep> steps;
  while (!list.empty()) {
    std::size_t comma = list.find(',');
    std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    while (!item.empty() && IsSpace(item.front())) item.remove_prefix(1);
    while (!item.empty() && IsSpace(item.back())) item.remove_suffix(1);
    if (item.empty()) continue;
    auto step = ParseStep(item);
    if (!step) throw std::invalid_argument("unknown normalization step: " + std::string(item));
    steps.push_back(*step);
  }
  return NormalizationConfig(std::move(steps));
}

std::vector<NormalizationConfig> NormalizationConfig::Ladder() {
  std::vector<NormalizationConfig> ladder;
  std::vector<NormStep> steps;
  ladder.emplace_back();
  for (NormStep step : {NormStep::kFillerWords, NormStep::kEnglishNormalize,
                        NormStep::kStuttersRepetitions, NormStep::kFillerPhrases}) {
    steps.push_back(step);
    ladder.emplace_back(steps);
  }
  return ladder;
}

std::string NormalizationConfig::ToString() const {
  std::string s;
  for (NormStep step : steps_) {
    if (!s.empty()) s += ',';
    s += StepName(step);
  }
  return s;
}

NormalizationTables NormalizationTables::Builtin() {
  return TablesFromSource([](std::string_view name) {
    return std::string(internal::BuiltinDataFile(name));
  });
}

NormalizationTables NormalizationTables::FromDirectory(const std::filesystem::path& dir) {
  return TablesFromSource([&dir](std::string_view name) {
    auto path = dir / std::string(name);
    if (std::filesystem::exists(path)) return ReadFile(path);
    return std::string(internal::BuiltinDataFile(name));
  });
}

const NormalizationTables& NormalizationTables::Default() {
  static const NormalizationTables tables = [] {
    const char* dir = std::getenv(kDataDirEnv);
    if (dir != nullptr && *dir != '\0') return FromDirectory(dir);
    return Builtin();
  }();
  return tables;
}

Tokens Tokenize(std::string_view raw) {
  Tokens out;
  for (Token& tok : SplitSpaces(raw)) {
    std::size_t b = 0;
    std::size_t e = tok.size();
    while (b < e && IsTrimmedPunct(tok[b])) ++b;
    while (e > b && IsTrimmedPunct(tok[e - 1])) --e;
    if (b == e) continue;
    std::string word = tok.substr(b, e - b);
    if (word.find_first_not_of('-') == std::string::npos) continue;
    std::transform(word.begin(), word.end(), word.begin(), AsciiLower);
    out.push_back(std::move(word));
  }
  return out;
}

Tokens RemoveFillerWords(std::span<const Token> tokens, const NormalizationTables& tables) {
  Tokens out;
  out.reserve(tokens.size());
  for (const Token& tok : tokens) {
    if (!tables.filler_words.contains(tok)) out.push_back(tok);
  }
  return out;
}

Tokens NormalizeEnglish(std::span<const Token> tokens, const NormalizationTables& tables) {
  Tokens expanded;
  for (const Token& tok : tokens) AppendMapped(tables.contractions, tok, expanded);
  Tokens numbered;
  for (const Token& tok : expanded) AppendMapped(tables.numbers, tok, numbered);
  for (Token& tok : numbered) {
    auto it = tables.spelling.find(tok);
    if (it != tables.spelling.end()) tok = it->second;
  }
  return numbered;
}

Tokens RemoveStuttersRepetitions(std::span<const Token> tokens) {
  // Removing a repetition can pull a later word into a fragment's window, so
  // the two passes run until neither changes anything.
  return Fixpoint(tokens, [](std::span<const Token> t) { return RepetitionPass(StutterPass(t)); });
}

Tokens RemoveFillerPhrases(std::span<const Token> tokens, const NormalizationTables& tables) {
  return Fixpoint(tokens, [&](std::span<const Token> t) { return FillerPhrasePass(t, tables); });
}

Tokens ApplyStep(NormStep step, std::span<const Token> tokens, const NormalizationTables& tables) {
  switch (step) {
    case NormStep::kFillerWords:
      return RemoveFillerWords(tokens, tables);
    case NormStep::kEnglishNormalize:
      return NormalizeEnglish(tokens, tables);
    case NormStep::kStuttersRepetitions:
      return RemoveStuttersRepetitions(tokens);
    case NormStep::kFillerPhrases:
      return RemoveFillerPhrases(tokens, tables);
  }
  return Tokens(tokens.begin(), tokens.end());
}

Tokens ApplyPipeline(const NormalizationConfig& config, std::string_view raw,
                     const NormalizationTables& tables) {
  Tokens tokens = Tokenize(raw);
  for (NormStep step : config.steps()) tokens = ApplyStep(step, tokens, tables);
  return tokens;
}

std::string JoinTokens(std::span<const Token> tokens) {
  std::string s;
  for (const Token& tok : tokens) {
    if (!s.empty()) s += ' ';
    s += tok;
  }
  return s;
}

}  // namespace multiref
