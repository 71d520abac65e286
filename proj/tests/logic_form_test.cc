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

#include <gtest/gtest.h>

#include <functional>

#include "qasynth/text.h"
#include "test_util.h"

namespace qasynth {
namespace {

Atom A(std::string path, CompareOp op, Literal v) { return {std::move(path), op, std::move(v)}; }

Query Row1() {
  return Query::Filter(
      Query::Table("Restaurant"),
      Pred::MakeAnd({Pred::MakeAtom(A("aggregateRating.ratingValue", CompareOp::kEq, Literal::Number(5))),
                     Pred::MakeAtom(A("aggregateRating.reviewCount", CompareOp::kGe,
                                      Literal::Number(100)))}));
}

TEST(LogicFormTest, SerializesTableRows) {
  EXPECT_EQ(SerializeLf(Row1()),
            "Restaurant, aggregateRating.ratingValue == 5 && aggregateRating.reviewCount >= 100");
  const Query row2 = Query::Project(
      Query::Filter(Query::Table("Restaurant"),
                    Pred::MakeAnd({Pred::MakeAtom(A("id", CompareOp::kSoftEq,
                                                    Literal::String("McDonald's"))),
                                   Pred::MakeAtom(A("geo", CompareOp::kEq,
                                                    Literal::Location("Parker Road")))})),
      {"telephone"});
  EXPECT_EQ(SerializeLf(row2),
            "[telephone] of (Restaurant, geo == new Location(\"Parker Road\") && id =~ "
            "\"McDonald's\")");
  EXPECT_EQ(SerializeLf(Query::Table("Restaurant")), "Restaurant");
}

TEST(LogicFormTest, ParsesTableRows) {
  const Query q = ParseLf(
      "Restaurant, aggregateRating.ratingValue == 5 && aggregateRating.reviewCount >= 100");
  EXPECT_TRUE(LfEqual(q, Row1()));
  EXPECT_EQ(ParseLf("Restaurant").kind(), QueryKind::kTable);
}

TEST(LogicFormTest, SyntaxErrorCarriesOffset) {
  try {
    ParseLf("Restaurant, ==");
    FAIL();
  } catch (const LfSyntaxError &e) {
    EXPECT_EQ(e.offset(), 12u);
  }
}

TEST(LogicFormTest, UnknownAttributeIsRejectedWithSchema) {
  const Schema s = qasynth::testing::Fixture("restaurants");
  EXPECT_NO_THROW(ParseLf("Restaurant, servesCuisine =~ \"Chinese\"", &s));
  EXPECT_THROW(ParseLf("Restaurant, cuisine =~ \"Chinese\"", &s), ValidationError);
  EXPECT_THROW(ParseLf("Restaurant, aggregateRating.ratingValue =~ \"5\"", &s), ValidationError);
  EXPECT_THROW(ParseLf("sort servesCuisine desc of (Restaurant)", &s), ValidationError);
}

TEST(LogicFormTest, Equality) {
  auto x = Pred::MakeAtom(A("x", CompareOp::kEq, Literal::Number(1)));
  auto y = Pred::MakeAtom(A("y", CompareOp::kEq, Literal::Number(2)));
  EXPECT_TRUE(LfEqual(Query::Filter(Query::Table("T"), Pred::MakeAnd({x, y})),
                      Query::Filter(Query::Table("T"), Pred::MakeAnd({y, x}))));
  EXPECT_FALSE(LfEqual(ParseLf("T, rating == 5"), ParseLf("T, rating == 4")));
  EXPECT_FALSE(LfEqual(ParseLf("sort rating desc of (T)"), ParseLf("sort rating asc of (T)")));
}

TEST(LogicFormTest, ExtractLiterals) {
  const LiteralSet row1 = ExtractLiterals(Row1());
  EXPECT_TRUE(row1.strings.empty());
  EXPECT_EQ(row1.numbers, (std::set<double>{5, 100}));
  EXPECT_TRUE(ExtractLiterals(Query::Table("T")).empty());
  const Query q = ParseLf("Restaurant, servesCuisine =~ \"Chinese\" && starRating == 2 && geo == HERE");
  EXPECT_EQ(ExtractLiterals(q).strings, (std::set<std::string>{"Chinese"}));
  EXPECT_EQ(ExtractLiterals(q).numbers, (std::set<double>{2}));
}

TEST(LogicFormTest, InvariantViolationsNameTheNode) {
  EXPECT_THROW(SerializeLf(Query::Project(Query::Table("T"), {})), ValidationError);
  EXPECT_THROW(SerializeLf(Query::Index(Query::Table("T"), 0)), ValidationError);
  EXPECT_THROW(SerializeLf(Query::Project(Query::Project(Query::Table("T"), {"a"}), {"b"})),
               ValidationError);
  EXPECT_THROW(
      SerializeLf(Query::Filter(Query::Table("T"),
                                Pred::MakeAnd({Pred::MakeAtom(A("a", CompareOp::kEq, Literal::Number(1)))}))),
      ValidationError);
}

TEST(LogicFormTest, AllConstructsRoundTrip) {
  for (const char *text : {
           "Restaurant",
           "[telephone] of (Restaurant, geo == HERE)",
           "[id,telephone] of (Restaurant)",
           "sort aggregateRating.ratingValue desc of (Restaurant)",
           "(sort aggregateRating.ratingValue desc of (Restaurant))[1]",
           "aggregate count of (Restaurant, servesCuisine =~ \"Chinese\")",
           "aggregate avg aggregateRating.ratingValue of (Restaurant)",
           "Book, bestseller == true",
           "Book, genre == enum(\"horror\")",
           "Book, datePublished > new Date(\"2005-03-01\")",
           "Restaurant, openingTime < new Time(\"08:00\")",
           "Restaurant, openingTime >= TIME_0",
           "People, age <= -3.5",
           "Book, author contains \"King\"",
       }) {
    const Query q = ParseLf(text);
    EXPECT_EQ(SerializeLf(q), text);
    EXPECT_EQ(SerializeLf(ParseLf(SerializeLf(q))), SerializeLf(q));
  }
}

// Random ASTs for the round-trip and equivalence properties.
class RandomQuery {
 public:
  explicit RandomQuery(std::uint64_t seed) : rng_(seed) {}

  Literal Lit() {
    switch (rng_.Below(6)) {
      case 0: return Literal::Number(static_cast<double>(rng_.Below(1000)) / 4.0);
      case 1: return Literal::String(Word() + " \"q\" \\" + Word());
      case 2: return Literal::Location(Word());
      case 3: return Literal::Here();
      case 4: return Literal::Boolean(rng_.Chance(0.5));
      default: return Literal::Date("2020-01-0" + std::to_string(1 + rng_.Below(9)));
    }
  }
  std::string Word() { return std::string(1, static_cast<char>('a' + rng_.Below(5))); }
  std::string Path() { return rng_.Chance(0.3) ? Word() + "." + Word() : Word(); }
  Pred P(int depth) {
    if (depth == 0 || rng_.Chance(0.5)) {
      static const CompareOp ops[] = {CompareOp::kEq, CompareOp::kSoftEq, CompareOp::kGe,
                                      CompareOp::kLe, CompareOp::kGt, CompareOp::kLt,
                                      CompareOp::kContains};
      return Pred::MakeAtom({Path(), ops[rng_.Below(7)], Lit()});
    }
    std::vector<Pred> kids;
    const int n = 2 + static_cast<int>(rng_.Below(2));
    for (int i = 0; i < n; ++i) kids.push_back(P(depth - 1));
    return Pred::MakeAnd(kids);
  }
  Query Q(int depth, bool allow_project = true) {
    if (depth == 0) return Query::Table("T" + Word());
    switch (rng_.Below(6)) {
      case 0: return Query::Filter(Q(depth - 1), P(2));
      case 1:
        if (allow_project) return Query::Project(Q(depth - 1, false), {Path(), Path()});
        return Query::Table("U");
      case 2:
        return Query::Sort(Q(depth - 1), Path(), rng_.Chance(0.5) ? SortDirection::kAsc : SortDirection::kDesc);
      case 3: return Query::Index(Q(depth - 1), 1 + static_cast<int>(rng_.Below(3)));
      case 4:
        return rng_.Chance(0.5) ? Query::Aggregate(AggregateOp::kCount, std::nullopt, Q(depth - 1))
                                : Query::Aggregate(AggregateOp::kMax, Path(), Q(depth - 1));
      default: return Query::Table("T" + Word());
    }
  }

 private:
  Rng rng_;
};

// Independent walk over the AST.
int WalkAtoms(const Query &q) {
  std::function<int(const Pred &)> pred = [&](const Pred &p) {
    if (p.is_atom()) return 1;
    int n = 0;
    for (const Pred &c : p.children()) n += pred(c);
    return n;
  };
  switch (q.kind()) {
    case QueryKind::kTable: return 0;
    case QueryKind::kFilter: return pred(q.pred()) + WalkAtoms(q.inner());
    default: return WalkAtoms(q.inner());
  }
}

TEST(LogicFormTest, RandomRoundTripAndIdempotence) {
  RandomQuery gen(20261014);
  for (int i = 0; i < 500; ++i) {
    const Query q = gen.Q(3);
    const std::string text = SerializeLf(q);
    const Query back = ParseLf(text);
    EXPECT_EQ(SerializeLf(back), text);
    EXPECT_TRUE(LfEqual(back, Canonicalize(q)));
    EXPECT_EQ(SerializeLf(Canonicalize(Canonicalize(q))), SerializeLf(Canonicalize(q)));
    EXPECT_EQ(CountAtoms(q), WalkAtoms(q));
  }
}

TEST(LogicFormTest, EqualityIsAnEquivalence) {
  RandomQuery gen(99);
  std::vector<Query> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(gen.Q(1));
  // Add reordered copies so equal pairs exist.
  for (int i = 0; i < 5; ++i) pool.push_back(ParseLf(SerializeLf(pool[static_cast<std::size_t>(i)])));
  for (const Query &a : pool) {
    EXPECT_TRUE(LfEqual(a, a));
    for (const Query &b : pool) {
      EXPECT_EQ(LfEqual(a, b), LfEqual(b, a));
      if (!LfEqual(a, b)) continue;
      for (const Query &c : pool) {
        if (!LfEqual(b, c)) continue;
        EXPECT_TRUE(LfEqual(a, c));
      }
    }
  }
}

TEST(LogicFormTest, ConjunctsSortedLexicographically) {
  const Query q = ParseLf("(T, z == 1), m == 3 && a == 2");
  EXPECT_EQ(SerializeLf(q), "T, a == 2 && m == 3 && z == 1");
}

}  // namespace
}  // namespace qasynth
