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

#ifndef QASYNTH_ANNOTATION_H_
#define QASYNTH_ANNOTATION_H_

// POS-typed phrases for tables and attributes, and their JSONL dump format:
//   {"table":"People","attribute":"alumniOf","pos":"is_a_noun",
//    "phrase":"alumni of $value","source":"canonical","support_count":1}
// Table annotations have "attribute": null.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qasynth/errors.h"
#include "qasynth/schema.h"

namespace qasynth {

inline constexpr std::string_view kValueMarker = "$value";

enum class AnnotationSource { kCanonical, kMined, kManual };

std::string_view SourceName(AnnotationSource s);
std::optional<AnnotationSource> SourceFromName(std::string_view name);

struct Annotation {
  std::string table;
  std::string attribute;  // empty for a table annotation
  PosCategory pos = PosCategory::kHasANoun;
  std::string phrase;     // lowercase, single-spaced, "$value" as a token
  AnnotationSource source = AnnotationSource::kCanonical;
  int support_count = 1;

  bool is_table() const { return attribute.empty(); }
  bool has_placeholder() const;
  std::vector<std::string> Words() const;  // phrase split on spaces
  AttributeRef ref() const { return {table, attribute}; }

  bool operator==(const Annotation &) const = default;
};

// Lowercases and collapses whitespace; keeps "$value" intact.
std::string NormalizePhrase(std::string_view phrase);

// Checks the phrase invariants, and table/attribute existence when a schema
// is given.
std::vector<Diagnostic> ValidateAnnotation(const Annotation &a,
                                           const Schema *schema = nullptr,
                                           const std::string &where = "");

// Stable order: table, attribute, pos, phrase.
void SortAnnotations(std::vector<Annotation> &annotations);

std::string WriteAnnotations(const std::vector<Annotation> &annotations);
// Errors name the offending line ("line 3: ...").
std::vector<Annotation> ReadAnnotations(std::string_view text,
                                        const Schema *schema = nullptr);
void WriteAnnotationsFile(const std::string &path,
                          const std::vector<Annotation> &annotations);
std::vector<Annotation> ReadAnnotationsFile(const std::string &path,
                                            const Schema *schema = nullptr);

}  // namespace qasynth

#endif  // QASYNTH_ANNOTATION_H_
