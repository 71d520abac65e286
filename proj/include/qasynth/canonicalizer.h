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

#ifndef QASYNTH_CANONICALIZER_H_
#define QASYNTH_CANONICALIZER_H_

// Canonical annotations derived from table and attribute names (or their
// overrides) by tagging the name words.

#include <vector>

#include "qasynth/annotation.h"
#include "qasynth/lexicon.h"
#include "qasynth/schema.h"

namespace qasynth {

struct CanonicalSet {
  std::vector<Annotation> tables;      // one per table, in schema order
  std::vector<Annotation> attributes;  // one per attribute, in schema order

  std::vector<Annotation> All() const;
};

// Table phrase: the split name (or override), IsANoun, no placeholder.
Annotation DeriveTableCanonical(const Table &table);

// Throws ValidationError when the name has no taggable word.
Annotation DeriveAttributeCanonical(const Table &table, const Attribute &attribute,
                                    const Lexicon &lexicon = Lexicon::Default());

// Collects every untaggable name into one ValidationError.
CanonicalSet DeriveCanonical(const Schema &schema,
                             const Lexicon &lexicon = Lexicon::Default());

}  // namespace qasynth

#endif  // QASYNTH_CANONICALIZER_H_
