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

#ifndef QASYNTH_LEXICON_H_
#define QASYNTH_LEXICON_H_

// Tokenization, rule-based part-of-speech tagging, identifier splitting and
// stemming.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qasynth {

enum class PosTag { kNoun, kVerb, kPastPart, kAdj, kPrep, kDet, kPron, kOther };

std::string_view PosTagName(PosTag tag);  // "NOUN", "VERB-PASTPART", ...
std::optional<PosTag> PosTagFromName(std::string_view name);

struct Token {
  std::string surface;
  PosTag tag = PosTag::kOther;
  bool is_value_anchor = false;
  int value_index = -1;  // index into the value list given to Tokenize

  bool operator==(const Token &) const = default;
};

struct SuffixRule {
  std::string suffix;
  PosTag tag = PosTag::kNoun;
  std::size_t min_stem = 2;  // characters that must remain before the suffix
};

class Lexicon {
 public:
  // Throws ValidationError on malformed documents or overlapping closed
  // classes.
  static Lexicon Parse(std::string_view json_text);
  static const Lexicon &Default();

  PosTag TagWord(std::string_view word) const;

  bool IsDeterminer(std::string_view w) const { return determiners_.count(std::string(w)) > 0; }
  bool IsPreposition(std::string_view w) const { return prepositions_.count(std::string(w)) > 0; }
  bool IsPronoun(std::string_view w) const { return pronouns_.count(std::string(w)) > 0; }
  bool IsCopula(std::string_view w) const { return copulas_.count(std::string(w)) > 0; }

  // Every word the lexicon mentions.
  std::vector<std::string> Words() const;

 private:
  std::set<std::string> determiners_, prepositions_, pronouns_, copulas_;
  std::set<std::string> verbs_, adjectives_, others_;
  std::map<std::string, PosTag> exceptions_;
  std::vector<SuffixRule> suffix_rules_;
};

// True for placeholder tokens such as NUMBER_0 or TIME_12.
bool IsPlaceholder(std::string_view token);

// Lowercased word tokens with punctuation split off. Placeholders keep their
// case. Each occurrence of a string from `values` (matched token-wise,
// case-insensitively, longest first) becomes one anchor token whose surface
// is the lowercased value.
std::vector<Token> Tokenize(std::string_view text,
                            const std::vector<std::string> &values = {});

// Space-joined surfaces.
std::string JoinTokens(const std::vector<Token> &tokens);

// Assigns a tag to every token. Anchors are tagged NOUN unless the lexicon
// knows the value as a single word.
std::vector<Token> TagTokens(std::vector<Token> tokens,
                             const Lexicon &lexicon = Lexicon::Default());

// Pluggable tagger; the default implementation applies TagTokens.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<Token> Tag(std::vector<Token> tokens) const = 0;
};

class RuleTagger : public Tagger {
 public:
  explicit RuleTagger(const Lexicon &lexicon = Lexicon::Default())
      : lexicon_(lexicon) {}
  std::vector<Token> Tag(std::vector<Token> tokens) const override {
    return TagTokens(std::move(tokens), lexicon_);
  }

 private:
  const Lexicon &lexicon_;
};

// "alumniOf" -> {alumni, of}; "aggregate_rating" -> {aggregate, rating};
// "HTMLParser2" -> {html, parser, 2}.
std::vector<std::string> SplitName(std::string_view identifier);

// Suffix-stripping stem: plurals, agentive -er/-or, then -ed/-ing, applied
// until nothing changes. Stem(Stem(w)) == Stem(w).
std::string Stem(std::string_view word);

}  // namespace qasynth

#endif  // QASYNTH_LEXICON_H_
