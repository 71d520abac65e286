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

#ifndef QASYNTH_COMPILED_GRAMMAR_H_
#define QASYNTH_COMPILED_GRAMMAR_H_

// A template library instantiated over a schema and its annotations: a
// context-free grammar whose productions carry semantic actions. Both the
// synthesizer (generation) and the chart parser (recognition) run on it.
//
// Nonterminals, per table t and attribute a:
//   ROOT          full questions (root rules)
//   SET[t]        table queries, possibly filtered (set rules)
//   PRED[pos][t]  one atom expressed by an annotation of category pos
//   VEXPR[a/pos]  value expression (plain value, comparison, HERE)
//   VLIT[a]       one example value; parsing also admits any number for
//                 numeric attributes and placeholders of the matching family
//   ATTR[k][t]    property noun of an attribute admitted by a root rule

#include <optional>
#include <string>
#include <vector>

#include "qasynth/annotation.h"
#include "qasynth/logic_form.h"
#include "qasynth/schema.h"
#include "qasynth/template_library.h"

namespace qasynth {

struct SemValue {
  enum class Kind { kNone, kQuery, kAtom, kLiteral, kAttr };
  Kind kind = Kind::kNone;
  std::optional<Query> query;
  Atom atom;
  Literal literal;
  std::string attr;
  std::string key;  // canonical text; equal keys mean equal values
};

enum class Action {
  kTable,
  kFilter,
  kPass,
  kConstAtom,
  kMakeAtom,
  kConstLiteral,
  kConstAttr,
  kSelect,
  kProject,
  kSort,
  kTop1,
  kAggregate,
};

struct GrammarElem {
  bool terminal = true;
  std::string word;  // terminal
  int symbol = -1;   // nonterminal
};

struct Production {
  int lhs = -1;
  std::vector<GrammarElem> rhs;
  Action action = Action::kSelect;
  int atoms = 0;      // attribute atoms this production introduces
  int stratum = -1;   // root productions: index into Grammar::strata()
  std::string table;  // kTable
  std::string path;   // kMakeAtom, kConstAttr
  CompareOp op = CompareOp::kEq;
  Atom atom;          // kConstAtom
  Literal literal;    // kConstLiteral
  SortDirection direction = SortDirection::kAsc;
  AggregateOp aggregate = AggregateOp::kCount;
};

struct GrammarSymbol {
  std::string name;
  std::vector<int> productions;
  // Open classes, parse-only.
  bool any_number = false;
  std::string placeholder_family;
  std::size_t min_len = 0;
  std::size_t max_len = 0;  // kUnbounded when recursive
};

// A root rule instantiated for one table.
struct Stratum {
  std::string rule_id;
  std::string table;
  std::vector<int> productions;
};

class Grammar {
 public:
  static constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

  // Annotations may omit tables; those use the derived canonical phrase.
  static Grammar Compile(const Schema &schema, const std::vector<Annotation> &annotations,
                         const TemplateLibrary &library);

  int root() const { return 0; }
  const std::vector<GrammarSymbol> &symbols() const { return symbols_; }
  const std::vector<Production> &productions() const { return productions_; }
  const std::vector<Stratum> &strata() const { return strata_; }
  const Schema &schema() const { return schema_; }
  int max_depth() const { return max_depth_; }

  // Attributes without a single annotation.
  const std::vector<AttributeRef> &unannotated() const { return unannotated_; }

  // Applies a production's action to the values of its nonterminal children
  // (in order). Returns nullopt when the result would violate a structural
  // invariant.
  std::optional<SemValue> Apply(const Production &p,
                                const std::vector<const SemValue *> &children) const;

 private:
  int AddSymbol(std::string name);
  int AddProduction(Production p);
  void ComputeLengths();

  Schema schema_;
  int max_depth_ = 12;
  std::vector<GrammarSymbol> symbols_;
  std::vector<Production> productions_;
  std::vector<Stratum> strata_;
  std::vector<AttributeRef> unannotated_;
};

// Default comparison for a plain value of the given type: =~ for strings and
// entities, == otherwise.
CompareOp DefaultOp(TypeKind kind);

// Wraps a literal as a semantic value.
SemValue LiteralSem(Literal literal);

}  // namespace qasynth

#endif  // QASYNTH_COMPILED_GRAMMAR_H_
