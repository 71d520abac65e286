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

#ifndef QASYNTH_TEMPLATE_LIBRARY_H_
#define QASYNTH_TEMPLATE_LIBRARY_H_

// Template rules as data. A library document is JSON:
//   {"max_depth": 12,
//    "rules": [{"id": "has_np", "category": "set",
//               "pattern": "$set with $np", "semantics": "filter"}, ...]}
//
// Pattern syntax: plain words, "(a|an|the)" alternations whose branches may be
// several words, "?(...)" optionals, and slot markers:
//   $table  table phrase           $set   a (possibly filtered) table query
//   $value  attribute value        $attr  attribute property noun
//   $isnp $np $vp $pvp $adj $prep  annotation of the matching category

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qasynth/errors.h"
#include "qasynth/schema.h"

namespace qasynth {

enum class RuleCategory { kValue, kSet, kRoot };

enum class Semantics {
  kTable,
  kFilter,
  kSelect,
  kProject,
  kSortAsc,
  kSortDesc,
  kTop1Asc,
  kTop1Desc,
  kCount,
  kAvg,
  kMax,
  kMin,
  kSum,
  kValue,
  kValueGe,
  kValueLe,
  kValueGt,
  kValueLt,
  kValueHere,
};

std::string_view SemanticsName(Semantics s);
std::optional<Semantics> SemanticsFromName(std::string_view name);

enum class SlotKind { kTable, kSet, kValue, kAttr, kAnnotation };

struct PatternNode {
  enum class Kind { kWord, kSlot, kAlternation, kOptional } kind = Kind::kWord;
  std::string word;                                // kWord
  SlotKind slot = SlotKind::kTable;                // kSlot
  PosCategory pos = PosCategory::kIsANoun;         // kSlot with kAnnotation
  std::vector<std::vector<PatternNode>> branches;  // kAlternation; kOptional uses branches[0]
};

// One element of a fully expanded pattern.
struct PatternItem {
  bool is_slot = false;
  std::string word;
  SlotKind slot = SlotKind::kTable;
  PosCategory pos = PosCategory::kIsANoun;

  bool operator==(const PatternItem &) const = default;
};

struct TemplateRule {
  std::string id;
  RuleCategory category = RuleCategory::kSet;
  std::string pattern_text;
  std::vector<PatternNode> pattern;
  Semantics semantics = Semantics::kSelect;
  std::vector<TypeKind> types;       // attribute types admitted; empty means all
  std::vector<PosCategory> pos;      // value rules: categories admitted; empty means all

  // Category of the annotation slot, if any.
  std::optional<PosCategory> annotation_slot() const;
  bool Admits(TypeKind kind) const;
  bool Admits(PosCategory category) const;
};

// Throws ValidationError (with the position) on malformed patterns.
std::vector<PatternNode> ParsePattern(std::string_view text);

// Every flat sequence the pattern denotes, in a fixed order.
std::vector<std::vector<PatternItem>> ExpandPattern(const std::vector<PatternNode> &pattern);

struct TemplateLibrary {
  std::vector<TemplateRule> rules;
  int max_depth = 12;

  const TemplateRule *Find(std::string_view id) const;

  // Parses without checking library-level invariants. Throws ValidationError
  // on malformed documents.
  static TemplateLibrary Parse(std::string_view json_text);
  static const TemplateLibrary &Starter();
  // The starter library document.
  static std::string_view StarterText();
};

// Parse + ValidateLibrary; throws when validation reports errors.
TemplateLibrary LoadLibrary(std::string_view json_text);
TemplateLibrary LoadLibraryFile(const std::string &path);

// Missing category coverage, missing roots, unknown markers, slots that do
// not fit the semantics, unreachable rules, and recursion that cannot be
// bounded by max_depth.
std::vector<Diagnostic> ValidateLibrary(const TemplateLibrary &library);

// Surface plural of a table phrase (inflects the last word).
std::string Pluralize(std::string_view phrase);

}  // namespace qasynth

#endif  // QASYNTH_TEMPLATE_LIBRARY_H_
