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

#include "qasynth/compiled_grammar.h"

#include <algorithm>
#include <map>
#include <set>

#include "qasynth/canonicalizer.h"
#include "qasynth/lexicon.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

void AppendWords(std::vector<GrammarElem> &rhs, std::string_view text) {
  for (std::string &w : Words(text)) rhs.push_back({true, std::move(w), -1});
}

CompareOp OpFor(Semantics s, TypeKind kind) {
  switch (s) {
    case Semantics::kValueGe: return CompareOp::kGe;
    case Semantics::kValueLe: return CompareOp::kLe;
    case Semantics::kValueGt: return CompareOp::kGt;
    case Semantics::kValueLt: return CompareOp::kLt;
    default: return DefaultOp(kind);
  }
}

std::string TypesKey(const std::vector<TypeKind> &types) {
  std::vector<std::string> names;
  for (TypeKind k : types) names.emplace_back(TypeKindName(k));
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names.empty() ? "any" : Join(names, "+");
}

std::string_view PlaceholderFamily(TypeKind kind) {
  switch (kind) {
    case TypeKind::kNumber: return "NUMBER";
    case TypeKind::kTime: return "TIME";
    case TypeKind::kDate: return "DATE";
    case TypeKind::kLocation: return "LOCATION";
    default: return "";
  }
}

// Property nouns of an attribute: its noun annotations with the placeholder
// at either end, minus the placeholder and a leading determiner.
std::vector<std::string> PropertyNouns(const std::vector<const Annotation *> &annotations) {
  std::vector<std::string> out;
  const Lexicon &lex = Lexicon::Default();
  for (const Annotation *a : annotations) {
    if (a->pos != PosCategory::kHasANoun || a->source == AnnotationSource::kMined) continue;
    std::vector<std::string> words = a->Words();
    if (words.size() < 2) continue;
    if (words.front() == kValueMarker) words.erase(words.begin());
    else if (words.back() == kValueMarker) words.pop_back();
    else continue;
    if (!words.empty() && lex.IsDeterminer(words.front())) words.erase(words.begin());
    if (words.empty()) continue;
    std::string noun = Join(words, " ");
    if (std::find(out.begin(), out.end(), noun) == out.end()) out.push_back(noun);
  }
  return out;
}

}  // namespace

CompareOp DefaultOp(TypeKind kind) {
  return kind == TypeKind::kString || kind == TypeKind::kEntity ? CompareOp::kSoftEq
                                                                : CompareOp::kEq;
}

SemValue LiteralSem(Literal literal) {
  SemValue v;
  v.kind = SemValue::Kind::kLiteral;
  v.key = literal.Serialize();
  v.literal = std::move(literal);
  return v;
}

int Grammar::AddSymbol(std::string name) {
  GrammarSymbol sym;
  sym.name = std::move(name);
  symbols_.push_back(std::move(sym));
  return static_cast<int>(symbols_.size() - 1);
}

int Grammar::AddProduction(Production p) {
  const int id = static_cast<int>(productions_.size());
  symbols_[static_cast<std::size_t>(p.lhs)].productions.push_back(id);
  productions_.push_back(std::move(p));
  return id;
}

Grammar Grammar::Compile(const Schema &schema, const std::vector<Annotation> &annotations,
                         const TemplateLibrary &library) {
  Grammar g;
  g.schema_ = schema;
  g.max_depth_ = library.max_depth;
  g.AddSymbol("ROOT");

  std::map<AttributeRef, std::vector<const Annotation *>> by_attr;
  std::map<std::string, std::vector<const Annotation *>> by_table;
  for (const Annotation &a : annotations) {
    if (!schema.FindTable(a.table)) continue;
    if (a.is_table()) by_table[a.table].push_back(&a);
    else if (schema.FindAttribute(a.table, a.attribute)) by_attr[a.ref()].push_back(&a);
  }

  std::vector<const TemplateRule *> value_rules, set_rules, root_rules;
  for (const TemplateRule &r : library.rules) {
    switch (r.category) {
      case RuleCategory::kValue: value_rules.push_back(&r); break;
      case RuleCategory::kSet: set_rules.push_back(&r); break;
      case RuleCategory::kRoot: root_rules.push_back(&r); break;
    }
  }

  for (const Table &table : schema.tables) {
    const int set_sym = g.AddSymbol("SET[" + table.name + "]");
    std::map<PosCategory, int> pred_sym;
    for (PosCategory pos : kAllPosCategories)
      pred_sym[pos] = g.AddSymbol("PRED[" + std::string(PosName(pos)) + "][" + table.name + "]");

    std::vector<std::string> table_phrases;
    for (const Annotation *a : by_table[table.name]) table_phrases.push_back(a->phrase);
    if (table_phrases.empty()) table_phrases.push_back(DeriveTableCanonical(table).phrase);

    // Attribute-level symbols.
    std::map<std::string, int> vlit;
    std::map<std::string, std::vector<std::string>> nouns;
    for (const Attribute &attr : table.attributes) {
      const AttributeRef ref{table.name, attr.name};
      const auto &anns = by_attr[ref];
      if (anns.empty()) g.unannotated_.push_back(ref);
      nouns[attr.name] = PropertyNouns(anns);
      if (attr.type.kind == TypeKind::kBoolean) {
        for (const Annotation *a : anns) {
          Production p;
          p.lhs = pred_sym[a->pos];
          AppendWords(p.rhs, a->phrase);
          p.action = Action::kConstAtom;
          p.atom = {attr.name, CompareOp::kEq, Literal::Boolean(true)};
          p.atoms = 1;
          if (!p.rhs.empty()) g.AddProduction(std::move(p));
        }
        continue;
      }
      const int lit = g.AddSymbol("VLIT[" + ref.ToString() + "]");
      vlit[attr.name] = lit;
      g.symbols_[static_cast<std::size_t>(lit)].any_number = attr.type.kind == TypeKind::kNumber;
      g.symbols_[static_cast<std::size_t>(lit)].placeholder_family =
          std::string(PlaceholderFamily(attr.type.kind));
      for (const Value &v : attr.example_values) {
        Production p;
        p.lhs = lit;
        AppendWords(p.rhs, v.surface);
        p.action = Action::kConstLiteral;
        p.literal = LiteralFromValue(v);
        if (!p.rhs.empty()) g.AddProduction(std::move(p));
      }

      std::map<PosCategory, int> vexpr;
      for (const Annotation *a : anns) {
        if (!vexpr.count(a->pos)) {
          const int sym = g.AddSymbol("VEXPR[" + ref.ToString() + "/" + std::string(PosName(a->pos)) + "]");
          vexpr[a->pos] = sym;
          for (const TemplateRule *r : value_rules) {
            if (!r->Admits(attr.type.kind) || !r->Admits(a->pos)) continue;
            if (a->pos == PosCategory::kAdjective && r->semantics != Semantics::kValue) continue;
            for (const auto &seq : ExpandPattern(r->pattern)) {
              Production p;
              p.lhs = sym;
              for (const PatternItem &item : seq) {
                if (item.is_slot) p.rhs.push_back({false, "", lit});
                else AppendWords(p.rhs, item.word);
              }
              if (r->semantics == Semantics::kValueHere) {
                p.action = Action::kConstAtom;
                p.atom = {attr.name, CompareOp::kEq, Literal::Here()};
              } else {
                p.action = Action::kMakeAtom;
                p.path = attr.name;
                p.op = OpFor(r->semantics, attr.type.kind);
              }
              g.AddProduction(std::move(p));
            }
          }
        }
        Production p;
        p.lhs = pred_sym[a->pos];
        for (const std::string &w : a->Words()) {
          if (w == kValueMarker) p.rhs.push_back({false, "", vexpr[a->pos]});
          else AppendWords(p.rhs, w);
        }
        p.action = Action::kPass;
        p.atoms = 1;
        g.AddProduction(std::move(p));
      }
    }

    // Set rules.
    for (const TemplateRule *r : set_rules) {
      for (const auto &seq : ExpandPattern(r->pattern)) {
        if (r->semantics == Semantics::kTable) {
          for (const std::string &phrase : table_phrases) {
            Production p;
            p.lhs = set_sym;
            for (const PatternItem &item : seq) {
              if (item.is_slot) AppendWords(p.rhs, Pluralize(phrase));
              else AppendWords(p.rhs, item.word);
            }
            p.action = Action::kTable;
            p.table = table.name;
            g.AddProduction(std::move(p));
          }
          continue;
        }
        Production p;
        p.lhs = set_sym;
        for (const PatternItem &item : seq) {
          if (!item.is_slot) AppendWords(p.rhs, item.word);
          else if (item.slot == SlotKind::kSet) p.rhs.push_back({false, "", set_sym});
          else p.rhs.push_back({false, "", pred_sym[item.pos]});
        }
        p.action = Action::kFilter;
        g.AddProduction(std::move(p));
      }
    }

    // Root rules.
    std::map<std::string, int> attr_sym;
    for (const TemplateRule *r : root_rules) {
      int attr_nt = -1;
      bool uses_attr = false;
      for (const auto &seq : ExpandPattern(r->pattern))
        for (const PatternItem &item : seq) uses_attr |= item.is_slot && item.slot == SlotKind::kAttr;
      if (uses_attr) {
        const std::string key = TypesKey(r->types);
        auto it = attr_sym.find(key);
        if (it == attr_sym.end()) {
          attr_nt = g.AddSymbol("ATTR[" + key + "][" + table.name + "]");
          attr_sym[key] = attr_nt;
          for (const Attribute &attr : table.attributes) {
            if (attr.type.kind == TypeKind::kBoolean || !r->Admits(attr.type.kind)) continue;
            for (const std::string &noun : nouns[attr.name]) {
              Production p;
              p.lhs = attr_nt;
              AppendWords(p.rhs, noun);
              p.action = Action::kConstAttr;
              p.path = attr.name;
              g.AddProduction(std::move(p));
            }
          }
        } else {
          attr_nt = it->second;
        }
      }
      Stratum stratum{r->id, table.name, {}};
      const int stratum_id = static_cast<int>(g.strata_.size());
      for (const auto &seq : ExpandPattern(r->pattern)) {
        Production p;
        p.lhs = 0;
        for (const PatternItem &item : seq) {
          if (!item.is_slot) AppendWords(p.rhs, item.word);
          else if (item.slot == SlotKind::kSet) p.rhs.push_back({false, "", set_sym});
          else p.rhs.push_back({false, "", attr_nt});
        }
        p.stratum = stratum_id;
        switch (r->semantics) {
          case Semantics::kProject: p.action = Action::kProject; break;
          case Semantics::kSortAsc: p.action = Action::kSort; p.direction = SortDirection::kAsc; break;
          case Semantics::kSortDesc: p.action = Action::kSort; p.direction = SortDirection::kDesc; break;
          case Semantics::kTop1Asc: p.action = Action::kTop1; p.direction = SortDirection::kAsc; break;
          case Semantics::kTop1Desc: p.action = Action::kTop1; p.direction = SortDirection::kDesc; break;
          case Semantics::kCount: p.action = Action::kAggregate; p.aggregate = AggregateOp::kCount; break;
          case Semantics::kAvg: p.action = Action::kAggregate; p.aggregate = AggregateOp::kAvg; break;
          case Semantics::kMax: p.action = Action::kAggregate; p.aggregate = AggregateOp::kMax; break;
          case Semantics::kMin: p.action = Action::kAggregate; p.aggregate = AggregateOp::kMin; break;
          case Semantics::kSum: p.action = Action::kAggregate; p.aggregate = AggregateOp::kSum; break;
          default: p.action = Action::kSelect; break;
        }
        stratum.productions.push_back(g.AddProduction(std::move(p)));
      }
      g.strata_.push_back(std::move(stratum));
    }
  }
  g.ComputeLengths();
  return g;
}

void Grammar::ComputeLengths() {
  // Least fixpoint for minimum lengths. Maximum lengths saturate at a cap,
  // which then means unbounded.
  const std::size_t n = symbols_.size();
  std::vector<std::size_t> lo(n, kUnbounded), hi(n, 0);
  constexpr std::size_t cap = 256;
  for (std::size_t s = 0; s < n; ++s)
    if (symbols_[s].any_number || !symbols_[s].placeholder_family.empty()) lo[s] = hi[s] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Production &p : productions_) {
      std::size_t pmin = 0, pmax = 0;
      bool feasible = true;
      for (const GrammarElem &e : p.rhs) {
        if (e.terminal) {
          ++pmin;
          ++pmax;
          continue;
        }
        const auto c = static_cast<std::size_t>(e.symbol);
        if (lo[c] == kUnbounded) {
          feasible = false;
          break;
        }
        pmin += lo[c];
        pmax = std::min(cap, pmax + hi[c]);
      }
      if (!feasible) continue;
      const auto l = static_cast<std::size_t>(p.lhs);
      if (pmin < lo[l]) {
        lo[l] = pmin;
        changed = true;
      }
      if (pmax > hi[l] && hi[l] < cap) {
        hi[l] = std::min(cap, pmax);
        changed = true;
      }
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    symbols_[s].min_len = lo[s];
    symbols_[s].max_len = hi[s] >= cap ? kUnbounded : hi[s];
  }
}

std::optional<SemValue> Grammar::Apply(const Production &p,
                                       const std::vector<const SemValue *> &children) const {
  const SemValue *query = nullptr, *atom = nullptr, *attr = nullptr, *literal = nullptr;
  for (const SemValue *c : children) {
    switch (c->kind) {
      case SemValue::Kind::kQuery: query = c; break;
      case SemValue::Kind::kAtom: atom = c; break;
      case SemValue::Kind::kAttr: attr = c; break;
      case SemValue::Kind::kLiteral: literal = c; break;
      case SemValue::Kind::kNone: break;
    }
  }
  SemValue out;
  auto make_query = [&](Query q) -> std::optional<SemValue> {
    std::vector<Diagnostic> problems = ValidateQuery(q, &schema_);
    if (HasErrors(problems)) return std::nullopt;
    out.kind = SemValue::Kind::kQuery;
    out.key = SerializeLf(q);
    out.query = Canonicalize(q);
    return out;
  };
  auto make_atom = [&](Atom a) -> std::optional<SemValue> {
    out.kind = SemValue::Kind::kAtom;
    out.key = a.Serialize();
    out.atom = std::move(a);
    return out;
  };
  switch (p.action) {
    case Action::kTable:
      return make_query(Query::Table(p.table));
    case Action::kFilter:
      if (!query || !atom) return std::nullopt;
      return make_query(Query::Filter(*query->query, Pred::MakeAtom(atom->atom)));
    case Action::kPass:
      if (children.size() != 1) return std::nullopt;
      return *children[0];
    case Action::kConstAtom:
      return make_atom(p.atom);
    case Action::kMakeAtom:
      if (!literal) return std::nullopt;
      return make_atom({p.path, p.op, literal->literal});
    case Action::kConstLiteral:
      return LiteralSem(p.literal);
    case Action::kConstAttr:
      out.kind = SemValue::Kind::kAttr;
      out.attr = p.path;
      out.key = "@" + p.path;
      return out;
    case Action::kSelect:
      if (!query) return std::nullopt;
      return *query;
    case Action::kProject:
      if (!query || !attr) return std::nullopt;
      return make_query(Query::Project(*query->query, {attr->attr}));
    case Action::kSort:
      if (!query || !attr) return std::nullopt;
      return make_query(Query::Sort(*query->query, attr->attr, p.direction));
    case Action::kTop1:
      if (!query || !attr) return std::nullopt;
      return make_query(Query::Index(Query::Sort(*query->query, attr->attr, p.direction), 1));
    case Action::kAggregate:
      if (!query) return std::nullopt;
      if (p.aggregate != AggregateOp::kCount && !attr) return std::nullopt;
      return make_query(Query::Aggregate(
          p.aggregate, attr ? std::optional<std::string>(attr->attr) : std::nullopt,
          *query->query));
  }
  return std::nullopt;
}

}  // namespace qasynth
