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

#ifndef QASYNTH_LOGIC_FORM_H_
#define QASYNTH_LOGIC_FORM_H_

// A small ThingTalk-flavoured query algebra over one table: selection,
// projection, sorting, indexing and aggregation. Queries are immutable and
// cheap to copy (nodes are shared).
//
// Canonical text (whitespace-exact):
//   Restaurant
//   Restaurant, geo == HERE && servesCuisine =~ "Chinese"
//   [telephone] of (Restaurant, id =~ "McDonald's")
//   sort aggregateRating.ratingValue desc of (Restaurant)
//   (sort price asc of (Restaurant))[1]
//   aggregate count of (Restaurant, openNow == true)
//   aggregate avg price of (Restaurant)
// Conjuncts are sorted by their serialized text, which makes serialization a
// normal form for conjunction order.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qasynth/errors.h"
#include "qasynth/schema.h"

namespace qasynth {

enum class LiteralKind {
  kString,
  kNumber,
  kLocation,
  kHere,
  kBoolean,
  kEnum,
  kDate,
  kTime,
  kPlaceholder,  // NUMBER_0, TIME_1, ...
};

struct Literal {
  LiteralKind kind = LiteralKind::kString;
  std::string text;   // surface for every kind except kNumber/kBoolean/kHere
  double number = 0;  // kNumber
  bool flag = false;  // kBoolean

  static Literal String(std::string s) { return {LiteralKind::kString, std::move(s)}; }
  static Literal Number(double v) { return {LiteralKind::kNumber, {}, v}; }
  static Literal Location(std::string s) { return {LiteralKind::kLocation, std::move(s)}; }
  static Literal Here() { return {LiteralKind::kHere, {}}; }
  static Literal Boolean(bool b) { return {LiteralKind::kBoolean, {}, 0, b}; }
  static Literal Enum(std::string s) { return {LiteralKind::kEnum, std::move(s)}; }
  static Literal Date(std::string s) { return {LiteralKind::kDate, std::move(s)}; }
  static Literal Time(std::string s) { return {LiteralKind::kTime, std::move(s)}; }
  static Literal Placeholder(std::string s) { return {LiteralKind::kPlaceholder, std::move(s)}; }

  std::string Serialize() const;
  bool operator==(const Literal &) const = default;
};

// The literal an example value takes in a logical form.
Literal LiteralFromValue(const Value &value);

enum class CompareOp { kEq, kSoftEq, kGe, kLe, kGt, kLt, kContains };

std::string_view CompareOpText(CompareOp op);

struct Atom {
  std::string path;  // attribute name, possibly dotted
  CompareOp op = CompareOp::kEq;
  Literal value;

  std::string Serialize() const;
  bool operator==(const Atom &) const = default;
};

// Atom or a conjunction of predicates.
class Pred {
 public:
  static Pred MakeAtom(Atom atom);
  static Pred MakeAnd(std::vector<Pred> children);

  bool is_atom() const { return is_atom_; }
  const Atom &atom() const { return atom_; }
  const std::vector<Pred> &children() const { return children_; }

  // All atoms, depth-first.
  std::vector<Atom> Atoms() const;

 private:
  bool is_atom_ = true;
  Atom atom_;
  std::vector<Pred> children_;
};

enum class QueryKind { kTable, kFilter, kProject, kSort, kIndex, kAggregate };
enum class SortDirection { kAsc, kDesc };
enum class AggregateOp { kCount, kMax, kMin, kAvg, kSum };

std::string_view AggregateOpName(AggregateOp op);

class Query {
 public:
  static Query Table(std::string name);
  static Query Filter(Query inner, Pred pred);
  static Query Project(Query inner, std::vector<std::string> attrs);
  static Query Sort(Query inner, std::string attr, SortDirection direction);
  static Query Index(Query inner, int n);
  static Query Aggregate(AggregateOp op, std::optional<std::string> attr,
                         Query inner);

  QueryKind kind() const;
  const std::string &table() const;                   // kTable
  const Query &inner() const;                         // all but kTable
  const Pred &pred() const;                           // kFilter
  const std::vector<std::string> &attrs() const;      // kProject
  const std::string &attr() const;                    // kSort, kAggregate
  bool has_attr() const;                              // kAggregate
  SortDirection direction() const;                    // kSort
  int index() const;                                  // kIndex
  AggregateOp aggregate_op() const;                   // kAggregate

  // Name of the table at the bottom of the query.
  const std::string &BaseTable() const;

 private:
  struct Node;
  explicit Query(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Flattens nested conjunctions and filters and sorts conjuncts.
Query Canonicalize(const Query &q);

// Deterministic canonical text. Throws ValidationError naming the offending
// node when a structural invariant is violated.
std::string SerializeLf(const Query &q);

// Parses canonical text (whitespace-tolerant). Syntax errors carry the byte
// offset. With a schema, attribute paths and operator/type compatibility are
// also checked.
Query ParseLf(std::string_view text, const Schema *schema = nullptr);

// Structural checks, plus schema checks when a schema is given.
std::vector<Diagnostic> ValidateQuery(const Query &q,
                                      const Schema *schema = nullptr);

bool LfEqual(const Query &a, const Query &b);

// Quoted strings (and other surface literals) and numbers appearing in the
// query. HERE, booleans and attribute names are excluded.
struct LiteralSet {
  std::set<std::string> strings;
  std::set<double> numbers;

  bool empty() const { return strings.empty() && numbers.empty(); }
  bool operator==(const LiteralSet &) const = default;
};

LiteralSet ExtractLiterals(const Query &q);

// Number of attribute atoms in filters anywhere in the query.
int CountAtoms(const Query &q);

// Thrown by ParseLf on malformed text.
class LfSyntaxError : public ValidationError {
 public:
  LfSyntaxError(std::size_t offset, const std::string &message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace qasynth

#endif  // QASYNTH_LOGIC_FORM_H_
