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

#include "qasynth/canonicalizer.h"

#include <algorithm>

#include "qasynth/text.h"

namespace qasynth {

std::vector<Annotation> CanonicalSet::All() const {
  std::vector<Annotation> out = tables;
  out.insert(out.end(), attributes.begin(), attributes.end());
  return out;
}

namespace {

std::vector<std::string> NameWords(std::string_view name) {
  auto dot = name.rfind('.');
  if (dot != std::string_view::npos) name = name.substr(dot + 1);
  return SplitName(name);
}

struct Placement {
  PosCategory pos;
  std::string phrase;
};

// Decides the category from the tags of `words` and puts the placeholder
// where that category expects it.
std::optional<Placement> Place(const std::vector<std::string> &words,
                               const Lexicon &lexicon) {
  std::vector<PosTag> tags;
  for (const std::string &w : words) tags.push_back(lexicon.TagWord(w));
  if (tags.empty() ||
      std::all_of(tags.begin(), tags.end(), [](PosTag t) { return t == PosTag::kOther; }))
    return std::nullopt;
  const std::string joined = Join(words, " ");
  const std::string value(kValueMarker);
  const PosTag first = tags.front(), last = tags.back();
  if (first == PosTag::kVerb) {
    bool rest_nouns = words.size() > 1 &&
                      std::all_of(tags.begin() + 1, tags.end(),
                                  [](PosTag t) { return t == PosTag::kNoun; });
    if (rest_nouns) {
      std::vector<std::string> rest(words.begin() + 1, words.end());
      return Placement{PosCategory::kActiveVerb,
                       words.front() + " " + value + " " + Join(rest, " ")};
    }
    return Placement{PosCategory::kActiveVerb, joined + " " + value};
  }
  if (first == PosTag::kPastPart) return Placement{PosCategory::kPassiveVerb, joined + " " + value};
  if (first == PosTag::kPrep) return Placement{PosCategory::kPrepositional, joined + " " + value};
  if (last == PosTag::kPrep) return Placement{PosCategory::kIsANoun, joined + " " + value};
  if (last == PosTag::kAdj) return Placement{PosCategory::kAdjective, joined + " " + value};
  return Placement{PosCategory::kHasANoun, value + " " + joined};
}

// Category of a phrase that already contains the placeholder.
PosCategory CategoryOf(const std::vector<std::string> &words, const Lexicon &lexicon) {
  std::vector<std::string> rest;
  for (const std::string &w : words)
    if (w != kValueMarker) rest.push_back(w);
  if (rest.empty()) return PosCategory::kAdjective;
  auto placed = Place(rest, lexicon);
  if (!placed) return PosCategory::kHasANoun;
  const bool value_last = words.back() == kValueMarker;
  // "$value star" style nouns and "alumni of $value" style nouns differ only
  // in placement.
  if (placed->pos == PosCategory::kIsANoun && !value_last) return PosCategory::kHasANoun;
  if (placed->pos == PosCategory::kHasANoun && value_last &&
      lexicon.TagWord(rest.back()) == PosTag::kPrep)
    return PosCategory::kIsANoun;
  return placed->pos;
}

}  // namespace

Annotation DeriveTableCanonical(const Table &table) {
  Annotation a;
  a.table = table.name;
  a.pos = PosCategory::kIsANoun;
  a.phrase = table.canonical_override ? NormalizePhrase(*table.canonical_override)
                                      : Join(SplitName(table.name), " ");
  a.source = AnnotationSource::kCanonical;
  return a;
}

Annotation DeriveAttributeCanonical(const Table &table, const Attribute &attribute,
                                    const Lexicon &lexicon) {
  Annotation a;
  a.table = table.name;
  a.attribute = attribute.name;
  a.source = AnnotationSource::kCanonical;
  const std::string where = table.name + "." + attribute.name;
  std::vector<std::string> words =
      attribute.canonical_override
          ? SplitWhitespace(NormalizePhrase(*attribute.canonical_override))
          : NameWords(attribute.name);
  const bool has_marker =
      std::find(words.begin(), words.end(), kValueMarker) != words.end();

  if (attribute.type.kind == TypeKind::kBoolean) {
    if (has_marker)
      throw ValidationError("boolean attribute " + where +
                            " cannot use $value in its canonical phrase");
    a.pos = PosCategory::kHasANoun;
    a.phrase = Join(words, " ");
    if (a.phrase.empty())
      throw ValidationError("attribute " + where + " has an empty name; set a canonical override");
    return a;
  }
  if (has_marker) {
    a.phrase = Join(words, " ");
    a.pos = CategoryOf(words, lexicon);
    return a;
  }
  auto placed = Place(words, lexicon);
  if (!placed)
    throw ValidationError("cannot derive a phrase for attribute " + where +
                              " (no taggable word); set a canonical override",
                          {{Severity::kError, where, "untaggable name"}});
  a.pos = placed->pos;
  a.phrase = placed->phrase;
  return a;
}

CanonicalSet DeriveCanonical(const Schema &schema, const Lexicon &lexicon) {
  CanonicalSet out;
  std::vector<Diagnostic> problems;
  for (const Table &t : schema.tables) {
    out.tables.push_back(DeriveTableCanonical(t));
    for (const Attribute &a : t.attributes) {
      try {
        out.attributes.push_back(DeriveAttributeCanonical(t, a, lexicon));
      } catch (const ValidationError &e) {
        problems.push_back({Severity::kError, t.name + "." + a.name, e.what()});
      }
    }
  }
  if (!problems.empty())
    throw ValidationError("canonical annotation failed; override the listed names", problems);
  return out;
}

}  // namespace qasynth
