// Copyright 2026 The qasynth Authors.
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

#include "qasynth/lexicon.h"

#include <algorithm>
#include <array>
#include <cctype>

#include <nlohmann/json.hpp>

#include "embedded_data.h"
#include "qasynth/errors.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

constexpr std::array<std::pair<PosTag, std::string_view>, 8> kTagNames = {{
    {PosTag::kNoun, "NOUN"},
    {PosTag::kVerb, "VERB"},
    {PosTag::kPastPart, "VERB-PASTPART"},
    {PosTag::kAdj, "ADJ"},
    {PosTag::kPrep, "PREP"},
    {PosTag::kDet, "DET"},
    {PosTag::kPron, "PRON"},
    {PosTag::kOther, "OTHER"},
}};

bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool IsAlnum(char c) { return IsAlpha(c) || IsDigit(c); }
bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Length of a placeholder starting at s[i], or 0.
std::size_t PlaceholderAt(std::string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && IsUpper(s[j])) ++j;
  if (j == i || j >= s.size() || s[j] != '_') return 0;
  std::size_t k = j + 1;
  while (k < s.size() && IsDigit(s[k])) ++k;
  if (k == j + 1) return 0;
  if (k < s.size() && (IsAlnum(s[k]) || s[k] == '_')) return 0;
  return k - i;
}

std::vector<std::string> RawTokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if ((i == 0 || !IsAlnum(s[i - 1])) && PlaceholderAt(s, i)) {
      std::size_t n = PlaceholderAt(s, i);
      out.emplace_back(s.substr(i, n));
      i += n;
      continue;
    }
    const bool negative = c == '-' && i + 1 < s.size() && IsDigit(s[i + 1]) &&
                          (i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1])));
    if (IsAlnum(c) || negative) {
      std::size_t j = i + 1;
      while (j < s.size()) {
        char d = s[j];
        if (IsAlnum(d)) {
          ++j;
          continue;
        }
        bool joins = false;
        if (j + 1 < s.size()) {
          char prev = s[j - 1], next = s[j + 1];
          if (d == '\'') joins = IsAlpha(prev) && IsAlpha(next);
          else if (d == '-') joins = IsAlnum(prev) && IsAlnum(next);
          else if (d == '.' || d == ':') joins = IsDigit(prev) && IsDigit(next);
        }
        if (!joins) break;
        j += 2;
      }
      out.push_back(ToLower(s.substr(i, j - i)));
      i = j;
      continue;
    }
    out.emplace_back(1, c);
    ++i;
  }
  return out;
}

PosTag TagFromJson(const nlohmann::json &j, const std::string &where) {
  if (!j.is_string()) throw ValidationError(where + ": tag must be a string");
  auto tag = PosTagFromName(j.get<std::string>());
  if (!tag)
    throw ValidationError(where + ": unknown tag '" + j.get<std::string>() + "'");
  return *tag;
}

std::set<std::string> WordSet(const nlohmann::json &doc, const char *key) {
  std::set<std::string> out;
  if (!doc.contains(key)) return out;
  const auto &list = doc.at(key);
  if (!list.is_array())
    throw ValidationError(std::string("lexicon: '") + key + "' must be a list");
  for (const auto &w : list) {
    if (!w.is_string() || w.get<std::string>().empty())
      throw ValidationError(std::string("lexicon: '") + key +
                            "' must contain non-empty strings");
    out.insert(ToLower(w.get<std::string>()));
  }
  return out;
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  for (const auto &[t, name] : kTagNames)
    if (t == tag) return name;
  return "OTHER";
}

std::optional<PosTag> PosTagFromName(std::string_view name) {
  for (const auto &[t, n] : kTagNames)
    if (n == name) return t;
  return std::nullopt;
}

Lexicon Lexicon::Parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ValidationError(std::string("lexicon: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("lexicon: top level must be an object");
  Lexicon lex;
  lex.determiners_ = WordSet(doc, "determiners");
  lex.prepositions_ = WordSet(doc, "prepositions");
  lex.pronouns_ = WordSet(doc, "pronouns");
  lex.copulas_ = WordSet(doc, "copulas");
  lex.verbs_ = WordSet(doc, "verbs");
  lex.adjectives_ = WordSet(doc, "adjectives");
  lex.others_ = WordSet(doc, "others");

  const std::pair<const char *, const std::set<std::string> *> closed[] = {
      {"determiners", &lex.determiners_},
      {"prepositions", &lex.prepositions_},
      {"pronouns", &lex.pronouns_},
      {"copulas", &lex.copulas_}};
  std::vector<Diagnostic> problems;
  for (std::size_t a = 0; a < std::size(closed); ++a)
    for (std::size_t b = a + 1; b < std::size(closed); ++b)
      for (const std::string &w : *closed[a].second)
        if (closed[b].second->count(w))
          problems.push_back({Severity::kError, closed[b].first,
                              "'" + w + "' is also listed in " + closed[a].first});
  if (!problems.empty())
    throw ValidationError("lexicon: closed classes overlap", problems);

  if (doc.contains("exceptions")) {
    const auto &ex = doc.at("exceptions");
    if (!ex.is_object()) throw ValidationError("lexicon: 'exceptions' must be an object");
    for (const auto &[word, tag] : ex.items())
      lex.exceptions_[ToLower(word)] = TagFromJson(tag, "exceptions." + word);
  }
  if (doc.contains("suffix_rules")) {
    const auto &rules = doc.at("suffix_rules");
    if (!rules.is_array()) throw ValidationError("lexicon: 'suffix_rules' must be a list");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const std::string where = "suffix_rules[" + std::to_string(i) + "]";
      const auto &r = rules[i];
      if (!r.is_object() || !r.contains("suffix") || !r.at("suffix").is_string() ||
          r.at("suffix").get<std::string>().empty() || !r.contains("tag"))
        throw ValidationError(where + ": needs a non-empty 'suffix' and a 'tag'");
      SuffixRule rule;
      rule.suffix = ToLower(r.at("suffix").get<std::string>());
      rule.tag = TagFromJson(r.at("tag"), where + ".tag");
      if (r.contains("min_stem")) {
        if (!r.at("min_stem").is_number_unsigned())
          throw ValidationError(where + ": 'min_stem' must be a non-negative integer");
        rule.min_stem = r.at("min_stem").get<std::size_t>();
      }
      lex.suffix_rules_.push_back(std::move(rule));
    }
  }
  return lex;
}

const Lexicon &Lexicon::Default() {
  static const Lexicon kDefault = Parse(embedded::default_lexicon());
  return kDefault;
}

PosTag Lexicon::TagWord(std::string_view word_in) const {
  const std::string word = ToLower(word_in);
  if (auto it = exceptions_.find(word); it != exceptions_.end()) return it->second;
  if (copulas_.count(word)) return PosTag::kVerb;
  if (determiners_.count(word)) return PosTag::kDet;
  if (prepositions_.count(word)) return PosTag::kPrep;
  if (pronouns_.count(word)) return PosTag::kPron;
  if (others_.count(word)) return PosTag::kOther;
  if (verbs_.count(word)) return PosTag::kVerb;
  if (adjectives_.count(word)) return PosTag::kAdj;
  if (IsPlaceholder(word_in)) return PosTag::kOther;
  if (std::none_of(word.begin(), word.end(), IsAlpha)) return PosTag::kOther;
  for (const SuffixRule &rule : suffix_rules_)
    if (EndsWith(word, rule.suffix) &&
        word.size() >= rule.suffix.size() + rule.min_stem)
      return rule.tag;
  return PosTag::kNoun;
}

std::vector<std::string> Lexicon::Words() const {
  std::set<std::string> all;
  for (const auto *s : {&determiners_, &prepositions_, &pronouns_, &copulas_,
                        &verbs_, &adjectives_, &others_})
    all.insert(s->begin(), s->end());
  for (const auto &[w, tag] : exceptions_) all.insert(w);
  return {all.begin(), all.end()};
}

bool IsPlaceholder(std::string_view token) {
  return !token.empty() && PlaceholderAt(token, 0) == token.size();
}

std::vector<Token> Tokenize(std::string_view text,
                            const std::vector<std::string> &values) {
  std::vector<std::string> raw = RawTokens(text);
  std::vector<std::vector<std::string>> value_toks;
  value_toks.reserve(values.size());
  for (const std::string &v : values) value_toks.push_back(RawTokens(v));

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t v = 0; v < value_toks.size(); ++v) {
      const auto &vt = value_toks[v];
      if (vt.empty() || vt.size() <= best_len || i + vt.size() > raw.size()) continue;
      if (std::equal(vt.begin(), vt.end(), raw.begin() + static_cast<long>(i))) {
        best = static_cast<int>(v);
        best_len = vt.size();
      }
    }
    Token tok;
    if (best >= 0) {
      tok.surface = Join(value_toks[static_cast<std::size_t>(best)], " ");
      tok.is_value_anchor = true;
      tok.value_index = best;
      i += best_len;
    } else {
      tok.surface = raw[i++];
    }
    out.push_back(std::move(tok));
  }
  return out;
}

std::string JoinTokens(const std::vector<Token> &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].surface;
  }
  return out;
}

std::vector<Token> TagTokens(std::vector<Token> tokens, const Lexicon &lexicon) {
  for (Token &t : tokens) {
    if (t.is_value_anchor && t.surface.find(' ') != std::string::npos)
      t.tag = PosTag::kNoun;
    else
      t.tag = lexicon.TagWord(t.surface);
  }
  return tokens;
}

std::vector<std::string> SplitName(std::string_view id) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(ToLower(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < id.size(); ++i) {
    char c = id[i];
    if (!IsAlnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      char prev = cur.back();
      bool boundary =
          (IsLower(prev) && IsUpper(c)) || (IsDigit(prev) != IsDigit(c)) ||
          (IsUpper(prev) && IsUpper(c) && i + 1 < id.size() && IsLower(id[i + 1]));
      if (boundary) flush();
    }
    cur += c;
  }
  flush();
  return out;
}

namespace {

std::string StemOnce(std::string w) {
  if (EndsWith(w, "ies") && w.size() > 4) return w.substr(0, w.size() - 3) + "y";
  if (EndsWith(w, "sses")) return w.substr(0, w.size() - 2);
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && !EndsWith(w, "us") && w.size() > 3)
    return w.substr(0, w.size() - 1);
  for (std::string_view suffix : {"er", "or"})
    if (EndsWith(w, suffix) && w.size() >= suffix.size() + 4)
      return w.substr(0, w.size() - suffix.size());
  for (std::string_view suffix : {"ing", "ed"})
    if (EndsWith(w, suffix) && w.size() >= suffix.size() + 3)
      return w.substr(0, w.size() - suffix.size());
  return w;
}

}  // namespace

std::string Stem(std::string_view word) {
  std::string w = ToLower(word);
  for (;;) {
    std::string next = StemOnce(w);
    if (next == w) return w;
    w = std::move(next);
  }
}

}  // namespace qasynth
