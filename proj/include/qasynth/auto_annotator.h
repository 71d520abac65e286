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

#ifndef QASYNTH_AUTO_ANNOTATOR_H_
#define QASYNTH_AUTO_ANNOTATOR_H_

// Mines extra POS-typed phrases for attributes by paraphrasing probe
// sentences built from the canonical annotation and matching the
// paraphrases back against the library's filter templates.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qasynth/annotation.h"
#include "qasynth/errors.h"
#include "qasynth/lexicon.h"
#include "qasynth/logic_form.h"
#include "qasynth/paraphrase.h"
#include "qasynth/schema.h"
#include "qasynth/template_library.h"

namespace qasynth {

struct AnnotatorOptions {
  int rounds = 3;                    // depth of the paraphrase tree
  std::size_t max_values = 10;       // example values used per attribute
  std::size_t max_phrase_words = 5;  // words in a mined phrase, "$value" excluded
  int min_support = 1;               // distinct candidates needed to keep a phrase
  std::string command = "show me";   // prefix of every probe
};

struct Probe {
  std::string id;
  std::string utterance;
  AttributeRef attribute;
  std::string value;  // value surface as it appears in the utterance
  std::string rule_id;
  PosCategory pos = PosCategory::kIsANoun;
  Query lf = Query::Table("");
};

// One probe per (filter-rule expansion, example value). Throws
// ValidationError when no filter rule takes the canonical's category.
std::vector<Probe> GenerateProbes(const Table &table, const Attribute &attribute,
                                  const Annotation &canonical, const TemplateLibrary &library,
                                  const AnnotatorOptions &options = {});

struct ProbeCandidate {
  std::size_t probe = 0;  // index into the probe list
  std::string text;
  int round = 1;
};

struct ParaphraseTree {
  std::vector<ProbeCandidate> candidates;
  std::vector<Diagnostic> failures;
};

// Round k paraphrases every distinct round k-1 output of the same probe.
// Candidates are distinct per probe and never equal the probe itself.
ParaphraseTree ExpandProbes(const std::vector<Probe> &probes, Paraphraser &backend,
                            const ParaphraseConfig &config, int rounds);

struct Extraction {
  PosCategory pos = PosCategory::kIsANoun;
  std::string phrase;
  std::string rule_id;

  bool operator==(const Extraction &) const = default;
};

// Matches a candidate against every filter-rule expansion. The table span
// must be the table phrase or its plural; the captured slot must contain
// the probe value exactly once and satisfy the category's POS constraint.
// At most one extraction per (category, phrase).
std::vector<Extraction> ExtractFromCandidate(const std::string &candidate, const Probe &probe,
                                             const std::string &table_phrase,
                                             const TemplateLibrary &library,
                                             const Tagger &tagger,
                                             const AnnotatorOptions &options = {});

struct ConflictReport {
  std::string table;
  std::string phrase;
  std::vector<std::string> attributes;  // attributes sharing the phrase
  std::string kept_on;                  // empty when dropped everywhere
};

// Within a table, a phrase carried by several attributes of the same
// semantic type stays only where canonical, or else on the single
// attribute whose name shares a stem with the phrase. Canonical
// annotations are never dropped.
std::vector<Annotation> ResolveConflicts(std::vector<Annotation> annotations,
                                         const Schema &schema,
                                         std::vector<ConflictReport> *reports = nullptr);

struct AnnotateResult {
  std::vector<Annotation> annotations;  // canonical plus mined, sorted
  std::vector<Diagnostic> diagnostics;  // backend failures, skipped attributes
  std::vector<ConflictReport> conflicts;
  std::size_t probes = 0;
  std::size_t candidates = 0;
  std::size_t discarded = 0;  // candidates that matched no template
  std::size_t mined = 0;      // mined annotations kept

  bool backend_failed() const;
};

// Canonical annotations for every table and attribute, plus mined ones
// when `backend` is non-null. Backend failures are reported, not thrown,
// and the result then holds whatever was mined before the failure.
AnnotateResult Annotate(const Schema &schema, const TemplateLibrary &library,
                        Paraphraser *backend, const ParaphraseConfig &config = {},
                        const AnnotatorOptions &options = {},
                        const Tagger &tagger = RuleTagger());

}  // namespace qasynth

#endif  // QASYNTH_AUTO_ANNOTATOR_H_
