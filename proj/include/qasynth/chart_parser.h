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

#ifndef QASYNTH_CHART_PARSER_H_
#define QASYNTH_CHART_PARSER_H_

// Memoized span parser over a compiled grammar. Returns every distinct query
// (by canonical text) the grammar derives for the utterance.

#include <string>
#include <string_view>
#include <vector>

#include "qasynth/compiled_grammar.h"
#include "qasynth/logic_form.h"

namespace qasynth {

class ChartParser {
 public:
  // The grammar must outlive the parser.
  explicit ChartParser(const Grammar &grammar);

  // Tokens as produced by Tokenize. Results sorted by canonical text.
  std::vector<Query> Parse(const std::vector<std::string> &tokens) const;
  std::vector<Query> Parse(std::string_view utterance) const;

  // Parse(...) contains a query canonically equal to `lf`.
  bool Accepts(std::string_view utterance, const Query &lf) const;

  const Grammar &grammar() const { return grammar_; }

 private:
  const Grammar &grammar_;
  std::vector<std::vector<std::size_t>> suffix_min_;  // per production
  std::vector<std::vector<std::size_t>> suffix_max_;
};

}  // namespace qasynth

#endif  // QASYNTH_CHART_PARSER_H_
