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

#include "qasynth/logic_form.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "qasynth/text.h"

namespace qasynth {

struct Query::Node {
  QueryKind kind = QueryKind::kTable;
  std::string table;
  std::optional<Query> inner;
  std::optional<Pred> pred;
  std::vector<std::string> attrs;
  std::string attr;
  bool has_attr = false;
  SortDirection direction = SortDirection::kAsc;
  int index = 1;
  AggregateOp aggregate = AggregateOp::kCount;
};

namespace {

std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

bool IsPlaceholderToken(std::string_view s) {
  auto underscore = s.rfind('_');
  if (underscore == std::string_view::npos || underscore == 0 ||
      underscore + 1 == s.size())
    return false;
  for (std::size_t i = 0; i < underscore; ++i)
    if (!std::isupper(static_cast<unsigned char>(s[i]))) return false;
  for (std::size_t i = underscore + 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string PlaceholderFamily(std::string_view s) {
  return std::string(s.substr(0, s.rfind('_')));
}

}  // namespace

std::string Literal::Serialize() const {
  switch (kind) {
    case LiteralKind::kString: return Quote(text);
    case LiteralKind::kNumber: return FormatNumber(number);
    case LiteralKind::kLocation: return "new Location(" + Quote(text) + ")";
    case LiteralKind::kHere: return "HERE";
    case LiteralKind::kBoolean: return flag ? "true" : "false";
    case LiteralKind::kEnum: return "enum(" + Quote(text) + ")";
    case LiteralKind::kDate: return "new Date(" + Quote(text) + ")";
    case LiteralKind::kTime: return "new Time(" + Quote(text) + ")";
    case LiteralKind::kPlaceholder: return text;
  }
  return text;
}

Literal LiteralFromValue(const Value &value) {
  switch (value.kind) {
    case TypeKind::kNumber: return Literal::Number(std::get<double>(value.raw));
    case TypeKind::kBoolean: return Literal::Boolean(std::get<bool>(value.raw));
    case TypeKind::kLocation: return Literal::Location(value.surface);
    case TypeKind::kEnum: return Literal::Enum(value.surface);
    case TypeKind::kDate: return Literal::Date(value.surface);
    case TypeKind::kTime: return Literal::Time(value.surface);
    case TypeKind::kString:
    case TypeKind::kEntity: return Literal::String(value.surface);
  }
  return Literal::String(value.surface);
}

std::string_view CompareOpText(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "==";
    case CompareOp::kSoftEq: return "=~";
    case CompareOp::kGe: return ">=";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGt: return ">";
    case CompareOp::kLt: return "<";
    case CompareOp::kContains: return "contains";
  }
  return "==";
}

std::string Atom::Serialize() const {
  return path + " " + std::string(CompareOpText(op)) + " " + value.Serialize();
}

Pred Pred::MakeAtom(Atom atom) {
  Pred p;
  p.is_atom_ = true;
  p.atom_ = std::move(atom);
  return p;
}

Pred Pred::MakeAnd(std::vector<Pred> children) {
  Pred p;
  p.is_atom_ = false;
  p.children_ = std::move(children);
  return p;
}

std::vector<Atom> Pred::Atoms() const {
  if (is_atom_) return {atom_};
  std::vector<Atom> out;
  for (const Pred &c : children_) {
    auto sub = c.Atoms();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string_view AggregateOpName(AggregateOp op) {
  switch (op) {
    case AggregateOp::kCount: return "count";
    case AggregateOp::kMax: return "max";
    case AggregateOp::kMin: return "min";
    case AggregateOp::kAvg: return "avg";
    case AggregateOp::kSum: return "sum";
  }
  return "count";
}

Query Query::Table(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = QueryKind::kTable;
  n->table = std::move(name);
  return Query(std::move(n));
}

Query Query::Filter(Query inner, Pred pred) {
  auto n = std::make_shared<Node>();
  n->kind = QueryKind::kFilter;
  n->inner = std::move(inner);
  n->pred = std::move(pred);
  return Query(std::move(n));
}

Query Query::Project(Query inner, std::vector<std::string> attrs) {
  auto n = std::make_shared<Node>();
  n->kind = QueryKind::kProject;
  n->inner = std::move(inner);
  n->attrs = std::move(attrs);
  return Query(std::move(n));
}

Query Query::Sort(Query inner, std::string attr, SortDirection direction) {
  auto n = std::make_shared<Node>();
  n->kind = QueryKind::kSort;
  n->inner = std::move(inner);
  n->attr = std::move(attr);
  n->has_attr = true;
  n->direction = direction;
  return Query(std::move(n));
}

Query Query::Index(Query inner, int index) {
  auto n = std::make_shared<Node>();
  n->kind = QueryKind::kIndex;
  n->inner = std::move(inner);
  n->index = index;
  return Query(std::move(n));
}

Query Query::Aggregate(AggregateOp op, std::optional<std::string> attr,
                       Query inner) {
  auto n = std::make_shared<Node>();
  n->kind = QueryKind::kAggregate;
  n->aggregate = op;
  n->has_attr = attr.has_value();
  if (attr) n->attr = std::move(*attr);
  n->inner = std::move(inner);
  return Query(std::move(n));
}

QueryKind Query::kind() const { return node_->kind; }
const std::string &Query::table() const { return node_->table; }
const Query &Query::inner() const { return *node_->inner; }
const Pred &Query::pred() const { return *node_->pred; }
const std::vector<std::string> &Query::attrs() const { return node_->attrs; }
const std::string &Query::attr() const { return node_->attr; }
bool Query::has_attr() const { return node_->has_attr; }
SortDirection Query::direction() const { return node_->direction; }
int Query::index() const { return node_->index; }
AggregateOp Query::aggregate_op() const { return node_->aggregate; }

const std::string &Query::BaseTable() const {
  const Query *q = this;
  while (q->kind() != QueryKind::kTable) q = &q->inner();
  return q->table();
}

namespace {

// Sorted, flattened conjunct list.
std::vector<Atom> CanonicalAtoms(const Pred &p) {
  std::vector<Atom> atoms = p.Atoms();
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom &a, const Atom &b) {
                     return a.Serialize() < b.Serialize();
                   });
  return atoms;
}

Pred PredFromAtoms(std::vector<Atom> atoms) {
  if (atoms.size() == 1) return Pred::MakeAtom(std::move(atoms[0]));
  std::vector<Pred> children;
  for (Atom &a : atoms) children.push_back(Pred::MakeAtom(std::move(a)));
  return Pred::MakeAnd(std::move(children));
}

void CheckStructure(const Query &q, const std::string &where,
                    std::vector<Diagnostic> &out) {
  auto error = [&](std::string message) {
    out.push_back({Severity::kError, where, std::move(message)});
  };
  switch (q.kind()) {
    case QueryKind::kTable:
      if (q.table().empty()) error("table name is empty");
      return;
    case QueryKind::kFilter: {
      std::vector<const Pred *> stack = {&q.pred()};
      while (!stack.empty()) {
        const Pred *p = stack.back();
        stack.pop_back();
        if (p->is_atom()) {
          if (p->atom().path.empty()) error("filter atom has an empty path");
        } else {
          if (p->children().size() < 2)
            error("conjunction needs at least two operands");
          for (const Pred &c : p->children()) stack.push_back(&c);
        }
      }
      break;
    }
    case QueryKind::kProject:
      if (q.attrs().empty()) error("projection needs at least one attribute");
      if (q.inner().kind() == QueryKind::kProject)
        error("projection nested directly inside projection");
      break;
    case QueryKind::kSort:
      if (q.attr().empty()) error("sort needs an attribute");
      break;
    case QueryKind::kIndex:
      if (q.index() < 1) error("index must be a positive integer");
      break;
    case QueryKind::kAggregate:
      if (q.aggregate_op() != AggregateOp::kCount && !q.has_attr())
        error(std::string(AggregateOpName(q.aggregate_op())) +
              " aggregate needs an attribute");
      break;
  }
  CheckStructure(q.inner(), where + ".inner", out);
}

std::string SerializeCanonical(const Query &q) {
  switch (q.kind()) {
    case QueryKind::kTable:
      return q.table();
    case QueryKind::kFilter: {
      std::string head = q.inner().kind() == QueryKind::kTable
                             ? q.inner().table()
                             : "(" + SerializeCanonical(q.inner()) + ")";
      std::vector<std::string> parts;
      for (const Atom &a : q.pred().Atoms()) parts.push_back(a.Serialize());
      return head + ", " + Join(parts, " && ");
    }
    case QueryKind::kProject:
      return "[" + Join(q.attrs(), ",") + "] of (" +
             SerializeCanonical(q.inner()) + ")";
    case QueryKind::kSort:
      return "sort " + q.attr() +
             (q.direction() == SortDirection::kAsc ? " asc" : " desc") +
             " of (" + SerializeCanonical(q.inner()) + ")";
    case QueryKind::kIndex:
      return "(" + SerializeCanonical(q.inner()) + ")[" +
             std::to_string(q.index()) + "]";
    case QueryKind::kAggregate: {
      std::string out = "aggregate ";
      out += AggregateOpName(q.aggregate_op());
      if (q.has_attr()) out += " " + q.attr();
      return out + " of (" + SerializeCanonical(q.inner()) + ")";
    }
  }
  return {};
}

}  // namespace

Query Canonicalize(const Query &q) {
  switch (q.kind()) {
    case QueryKind::kTable:
      return q;
    case QueryKind::kFilter: {
      Query inner = Canonicalize(q.inner());
      std::vector<Atom> atoms = q.pred().Atoms();
      if (inner.kind() == QueryKind::kFilter) {
        std::vector<Atom> more = inner.pred().Atoms();
        atoms.insert(atoms.end(), more.begin(), more.end());
        inner = inner.inner();
      }
      return Query::Filter(
          inner, PredFromAtoms(CanonicalAtoms(PredFromAtoms(std::move(atoms)))));
    }
    case QueryKind::kProject:
      return Query::Project(Canonicalize(q.inner()), q.attrs());
    case QueryKind::kSort:
      return Query::Sort(Canonicalize(q.inner()), q.attr(), q.direction());
    case QueryKind::kIndex:
      return Query::Index(Canonicalize(q.inner()), q.index());
    case QueryKind::kAggregate:
      return Query::Aggregate(
          q.aggregate_op(),
          q.has_attr() ? std::optional<std::string>(q.attr()) : std::nullopt,
          Canonicalize(q.inner()));
  }
  return q;
}

std::string SerializeLf(const Query &q) {
  std::vector<Diagnostic> problems;
  CheckStructure(q, "query", problems);
  if (!problems.empty())
    throw ValidationError("logical form violates an invariant", problems);
  return SerializeCanonical(Canonicalize(q));
}

bool LfEqual(const Query &a, const Query &b) {
  return SerializeLf(a) == SerializeLf(b);
}

// ---------------------------------------------------------------------------
// Parser

LfSyntaxError::LfSyntaxError(std::size_t offset, const std::string &message)
    : ValidationError("logical form syntax error at offset " +
                      std::to_string(offset) + ": " + message),
      offset_(offset) {}

namespace {

enum class TokKind { kIdent, kNumber, kString, kPunct, kEnd };

struct Tok {
  TokKind kind;
  std::string text;
  std::size_t offset;
};

std::vector<Tok> LexLf(std::string_view s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({TokKind::kIdent, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() &&
                std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      ++i;
      while (i < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'))
        ++i;
      out.push_back({TokKind::kNumber, std::string(s.substr(start, i - start)), start});
    } else if (c == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '\\' && i + 1 < s.size()) {
          text += s[i + 1];
          i += 2;
        } else if (s[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          text += s[i++];
        }
      }
      if (!closed) throw LfSyntaxError(start, "unterminated string literal");
      out.push_back({TokKind::kString, std::move(text), start});
    } else {
      static constexpr std::string_view kTwo[] = {"&&", "==", "=~", ">=", "<="};
      bool matched = false;
      for (std::string_view op : kTwo) {
        if (s.substr(i, 2) == op) {
          out.push_back({TokKind::kPunct, std::string(op), start});
          i += 2;
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("[](),<>").find(c) == std::string_view::npos)
          throw LfSyntaxError(start, std::string("unexpected character '") + c + "'");
        out.push_back({TokKind::kPunct, std::string(1, c), start});
        ++i;
      }
    }
  }
  out.push_back({TokKind::kEnd, "", s.size()});
  return out;
}

class LfParser {
 public:
  explicit LfParser(std::string_view text) : toks_(LexLf(text)) {}

  Query ParseAll() {
    Query q = ParseQuery();
    if (Peek().kind != TokKind::kEnd) Fail("unexpected trailing input");
    return q;
  }

 private:
  const Tok &Peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Tok &Next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void Fail(const std::string &message) const {
    const Tok &t = Peek();
    throw LfSyntaxError(t.offset, message + (t.kind == TokKind::kEnd
                                                 ? " (at end of input)"
                                                 : " near '" + t.text + "'"));
  }
  bool IsPunct(std::string_view p, std::size_t ahead = 0) const {
    const Tok &t = Peek(ahead);
    return t.kind == TokKind::kPunct && t.text == p;
  }
  bool IsWord(std::string_view w, std::size_t ahead = 0) const {
    const Tok &t = Peek(ahead);
    return t.kind == TokKind::kIdent && t.text == w;
  }
  void ExpectPunct(std::string_view p) {
    if (!IsPunct(p)) Fail("expected '" + std::string(p) + "'");
    ++pos_;
  }
  void ExpectWord(std::string_view w) {
    if (!IsWord(w)) Fail("expected '" + std::string(w) + "'");
    ++pos_;
  }
  std::string ExpectIdent(const char *what) {
    if (Peek().kind != TokKind::kIdent) Fail(std::string("expected ") + what);
    return Next().text;
  }
  std::string ExpectString() {
    if (Peek().kind != TokKind::kString) Fail("expected a quoted string");
    return Next().text;
  }

  Query ParseQuery() {
    Query head = ParseHead();
    if (IsPunct(",")) {
      ++pos_;
      return Query::Filter(std::move(head), ParsePred());
    }
    return head;
  }

  Query ParseHead() {
    Query q = ParsePrimary();
    while (IsPunct("[")) {
      ++pos_;
      if (Peek().kind != TokKind::kNumber) Fail("expected an index");
      const Tok &t = Next();
      auto n = ParseNumber(t.text);
      if (!n || *n < 1 || *n != static_cast<int>(*n))
        throw LfSyntaxError(t.offset, "index must be a positive integer");
      ExpectPunct("]");
      q = Query::Index(std::move(q), static_cast<int>(*n));
    }
    return q;
  }

  Query ParseSubquery() {
    ExpectWord("of");
    ExpectPunct("(");
    Query q = ParseQuery();
    ExpectPunct(")");
    return q;
  }

  Query ParsePrimary() {
    if (IsPunct("[")) {
      ++pos_;
      std::vector<std::string> attrs;
      attrs.push_back(ExpectIdent("an attribute path"));
      while (IsPunct(",")) {
        ++pos_;
        attrs.push_back(ExpectIdent("an attribute path"));
      }
      ExpectPunct("]");
      return Query::Project(ParseSubquery(), std::move(attrs));
    }
    if (IsPunct("(")) {
      ++pos_;
      Query q = ParseQuery();
      ExpectPunct(")");
      return q;
    }
    if (IsWord("sort")) {
      ++pos_;
      std::string attr = ExpectIdent("an attribute path");
      SortDirection dir;
      if (IsWord("asc")) dir = SortDirection::kAsc;
      else if (IsWord("desc")) dir = SortDirection::kDesc;
      else Fail("expected 'asc' or 'desc'");
      ++pos_;
      return Query::Sort(ParseSubquery(), std::move(attr), dir);
    }
    if (IsWord("aggregate")) {
      ++pos_;
      std::string op_name = ExpectIdent("an aggregate operator");
      std::optional<AggregateOp> op;
      for (AggregateOp candidate : {AggregateOp::kCount, AggregateOp::kMax,
                                    AggregateOp::kMin, AggregateOp::kAvg,
                                    AggregateOp::kSum})
        if (AggregateOpName(candidate) == op_name) op = candidate;
      if (!op) {
        --pos_;
        Fail("unknown aggregate operator");
      }
      std::optional<std::string> attr;
      if (!IsWord("of")) attr = ExpectIdent("an attribute path");
      return Query::Aggregate(*op, std::move(attr), ParseSubquery());
    }
    if (Peek().kind == TokKind::kIdent) return Query::Table(Next().text);
    Fail("expected a query");
  }

  Pred ParsePred() {
    std::vector<Pred> atoms;
    atoms.push_back(Pred::MakeAtom(ParseAtom()));
    while (IsPunct("&&")) {
      ++pos_;
      atoms.push_back(Pred::MakeAtom(ParseAtom()));
    }
    if (atoms.size() == 1) return std::move(atoms[0]);
    return Pred::MakeAnd(std::move(atoms));
  }

  Atom ParseAtom() {
    Atom atom;
    atom.path = ExpectIdent("an attribute path");
    const Tok &op = Peek();
    static const std::map<std::string, CompareOp> kOps = {
        {"==", CompareOp::kEq}, {"=~", CompareOp::kSoftEq},
        {">=", CompareOp::kGe}, {"<=", CompareOp::kLe},
        {">", CompareOp::kGt},  {"<", CompareOp::kLt},
        {"contains", CompareOp::kContains}};
    auto it = kOps.find(op.text);
    if (op.kind == TokKind::kString || op.kind == TokKind::kNumber ||
        it == kOps.end())
      Fail("expected a comparison operator");
    ++pos_;
    atom.op = it->second;
    atom.value = ParseLiteral();
    return atom;
  }

  Literal ParseLiteral() {
    const Tok &t = Peek();
    if (t.kind == TokKind::kString) return Literal::String(Next().text);
    if (t.kind == TokKind::kNumber) {
      auto v = ParseNumber(t.text);
      if (!v) Fail("malformed number");
      ++pos_;
      return Literal::Number(*v);
    }
    if (t.kind != TokKind::kIdent) Fail("expected a value");
    if (t.text == "HERE") {
      ++pos_;
      return Literal::Here();
    }
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return Literal::Boolean(t.text == "true");
    }
    if (t.text == "enum") {
      ++pos_;
      ExpectPunct("(");
      std::string s = ExpectString();
      ExpectPunct(")");
      return Literal::Enum(std::move(s));
    }
    if (t.text == "new") {
      ++pos_;
      std::string type = ExpectIdent("a value constructor");
      ExpectPunct("(");
      std::string s = ExpectString();
      ExpectPunct(")");
      if (type == "Location") return Literal::Location(std::move(s));
      if (type == "Date") return Literal::Date(std::move(s));
      if (type == "Time") return Literal::Time(std::move(s));
      throw LfSyntaxError(t.offset, "unknown value constructor '" + type + "'");
    }
    if (IsPlaceholderToken(t.text)) return Literal::Placeholder(Next().text);
    Fail("expected a value");
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

bool LiteralFits(const SemanticType &type, const Literal &lit) {
  if (lit.kind == LiteralKind::kPlaceholder) {
    const std::string family = PlaceholderFamily(lit.text);
    switch (type.kind) {
      case TypeKind::kNumber: return family == "NUMBER";
      case TypeKind::kTime: return family == "TIME";
      case TypeKind::kDate: return family == "DATE";
      case TypeKind::kLocation: return family == "LOCATION";
      default: return false;
    }
  }
  switch (type.kind) {
    case TypeKind::kString:
    case TypeKind::kEntity: return lit.kind == LiteralKind::kString;
    case TypeKind::kNumber: return lit.kind == LiteralKind::kNumber;
    case TypeKind::kLocation:
      return lit.kind == LiteralKind::kLocation || lit.kind == LiteralKind::kHere;
    case TypeKind::kTime: return lit.kind == LiteralKind::kTime;
    case TypeKind::kDate: return lit.kind == LiteralKind::kDate;
    case TypeKind::kBoolean: return lit.kind == LiteralKind::kBoolean;
    case TypeKind::kEnum: return lit.kind == LiteralKind::kEnum;
  }
  return false;
}

bool OpFits(const SemanticType &type, CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return true;
    case CompareOp::kSoftEq:
    case CompareOp::kContains:
      return type.kind == TypeKind::kString || type.kind == TypeKind::kEntity;
    default: return type.IsOrderable();
  }
}

void CheckSchema(const Query &q, const Schema &schema, const std::string &where,
                 std::vector<Diagnostic> &out) {
  auto error = [&](std::string message) {
    out.push_back({Severity::kError, where, std::move(message)});
  };
  const Table *table = schema.FindTable(q.BaseTable());
  if (!table) {
    if (q.kind() == QueryKind::kTable) error("unknown table '" + q.table() + "'");
    else CheckSchema(q.inner(), schema, where + ".inner", out);
    return;
  }
  auto lookup = [&](const std::string &path) -> const Attribute * {
    const Attribute *a = table->FindAttribute(path);
    if (!a) error("unknown attribute path '" + path + "' on table '" + table->name + "'");
    return a;
  };
  switch (q.kind()) {
    case QueryKind::kTable:
      return;
    case QueryKind::kFilter:
      for (const Atom &atom : q.pred().Atoms()) {
        const Attribute *a = lookup(atom.path);
        if (!a) continue;
        if (!OpFits(a->type, atom.op))
          error("operator '" + std::string(CompareOpText(atom.op)) +
                "' is not applicable to " + a->type.ToString() + " attribute '" +
                atom.path + "'");
        if (!LiteralFits(a->type, atom.value))
          error("value " + atom.value.Serialize() + " does not fit " +
                a->type.ToString() + " attribute '" + atom.path + "'");
      }
      break;
    case QueryKind::kProject:
      for (const std::string &p : q.attrs()) lookup(p);
      break;
    case QueryKind::kSort:
      if (const Attribute *a = lookup(q.attr()); a && !a->type.IsOrderable())
        error("cannot sort by non-orderable attribute '" + q.attr() + "'");
      break;
    case QueryKind::kIndex:
      break;
    case QueryKind::kAggregate:
      if (q.has_attr()) {
        const Attribute *a = lookup(q.attr());
        if (a && q.aggregate_op() != AggregateOp::kCount && !a->type.IsNumeric())
          error("cannot aggregate non-numeric attribute '" + q.attr() + "'");
      }
      break;
  }
  CheckSchema(q.inner(), schema, where + ".inner", out);
}

void CollectLiterals(const Query &q, LiteralSet &out) {
  if (q.kind() == QueryKind::kTable) return;
  if (q.kind() == QueryKind::kFilter) {
    for (const Atom &atom : q.pred().Atoms()) {
      const Literal &v = atom.value;
      switch (v.kind) {
        case LiteralKind::kNumber: out.numbers.insert(v.number); break;
        case LiteralKind::kHere:
        case LiteralKind::kBoolean: break;
        default: out.strings.insert(v.text); break;
      }
    }
  }
  CollectLiterals(q.inner(), out);
}

}  // namespace

Query ParseLf(std::string_view text, const Schema *schema) {
  LfParser parser(text);
  Query q = parser.ParseAll();
  std::vector<Diagnostic> problems = ValidateQuery(q, schema);
  if (HasErrors(problems))
    throw ValidationError("invalid logical form '" + std::string(text) + "'",
                          problems);
  return Canonicalize(q);
}

std::vector<Diagnostic> ValidateQuery(const Query &q, const Schema *schema) {
  std::vector<Diagnostic> out;
  CheckStructure(q, "query", out);
  if (schema) CheckSchema(q, *schema, "query", out);
  return out;
}

LiteralSet ExtractLiterals(const Query &q) {
  LiteralSet out;
  CollectLiterals(q, out);
  return out;
}

int CountAtoms(const Query &q) {
  if (q.kind() == QueryKind::kTable) return 0;
  int here = q.kind() == QueryKind::kFilter
                 ? static_cast<int>(q.pred().Atoms().size())
                 : 0;
  return here + CountAtoms(q.inner());
}

}  // namespace qasynth
