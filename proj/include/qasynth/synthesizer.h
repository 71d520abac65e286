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

#ifndef QASYNTH_SYNTHESIZER_H_
#define QASYNTH_SYNTHESIZER_H_

// Template-based synthesis. The derivation space of every root rule/table
// pair (a stratum) is counted exactly; target_size is split across strata,
// small strata are enumerated and large ones are sampled uniformly over
// derivations with a seeded generator.

#include <cstdint>
#include <string>
#include <vector>

#include "qasynth/annotation.h"
#include "qasynth/compiled_grammar.h"
#include "qasynth/dataset.h"
#include "qasynth/errors.h"
#include "qasynth/template_library.h"

namespace qasynth {

struct SynthesisOptions {
  std::size_t target_size = 1000;
  int max_atoms = 3;
  std::uint64_t seed = 1;
  // Chart-parses every output to report ambiguity and soundness defects.
  bool check_parses = true;
};

struct SynthesisResult {
  Dataset examples;  // sorted by id
  std::vector<Diagnostic> diagnostics;
  double derivation_space = 0;  // derivations within the atom caps and max_depth
  bool exhausted = false;       // the whole space was smaller than the target
  std::size_t ambiguous = 0;    // examples with more than one parse
};

// Throws ValidationError for bad options or attributes without annotations.
SynthesisResult Synthesize(const Grammar &grammar, const SynthesisOptions &options);
SynthesisResult Synthesize(const Schema &schema, const std::vector<Annotation> &annotations,
                           const TemplateLibrary &library, const SynthesisOptions &options);

// A derivation rendered as tokens plus its value.
struct Derivation {
  std::vector<std::string> tokens;
  SemValue value;
};

// Exact derivation counts by (symbol, atoms, height bound).
class DerivationCounter {
 public:
  DerivationCounter(const Grammar &grammar, int max_atoms, int max_height);

  double Count(int symbol, int atoms, int height);
  double CountProduction(int production, int atoms, int height);
  // Ways to split `atoms` over the nonterminal children of a production,
  // starting at child index `from`.
  double CountChildren(int production, std::size_t from, int atoms, int height);

  int max_atoms() const { return max_atoms_; }
  int max_height() const { return max_height_; }

 private:
  const Grammar &g_;
  int max_atoms_, max_height_;
  std::vector<double> memo_;  // -1 = unknown
  std::vector<std::vector<int>> children_;  // nonterminal children per production
};

// Every derivation of `production` with exactly `atoms` atoms within
// `height`. Only sensible for small spaces.
std::vector<Derivation> EnumerateProduction(const Grammar &grammar, DerivationCounter &counter,
                                            int production, int atoms, int height);

}  // namespace qasynth

#endif  // QASYNTH_SYNTHESIZER_H_
