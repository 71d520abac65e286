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

#include <gtest/gtest.h>

#include <set>

#include "qasynth/canonicalizer.h"
#include "qasynth/chart_parser.h"
#include "qasynth/compiled_grammar.h"
#include "qasynth/synthesizer.h"
#include "test_util.h"

namespace qasynth {
namespace {

using qasynth::testing::Fixture;

struct PeopleGrammar {
  Schema schema = Fixture("people");
  std::vector<Annotation> annotations = DeriveCanonical(schema).All();
  Grammar grammar = Grammar::Compile(schema, annotations, TemplateLibrary::Starter());
};

SynthesisResult SynthesizePeople(std::size_t target, int max_atoms, std::uint64_t seed = 1) {
  const Schema s = Fixture("people");
  SynthesisOptions o;
  o.target_size = target;
  o.max_atoms = max_atoms;
  o.seed = seed;
  return Synthesize(s, DeriveCanonical(s).All(), TemplateLibrary::Starter(), o);
}

// Hand-built filter clauses over the people fixture with canonical phrases.
std::vector<std::pair<std::string, std::string>> PeopleClauses() {
  std::vector<std::pair<std::string, std::string>> out;  // (attribute, words)
  for (const char *rel : {"that", "which", "who"}) {
    for (const char *cop : {"is", "are"})
      for (const char *v : {"stanford", "mit", "harvard"})
        out.push_back({"alumniOf", std::string(rel) + " " + cop + " alumni of " + v});
    for (const char *v : {"google", "microsoft"})
      out.push_back({"worksFor", std::string(rel) + " works for " + v});
  }
  return out;
}

std::set<std::string> BareUtterances(const Dataset &d) {
  std::set<std::string> out;
  for (const Example &e : d)
    if (e.utterance == "people" || e.utterance.rfind("people ", 0) == 0) out.insert(e.utterance);
  return out;
}

TEST(GrammarTest, CompileReportsUnannotatedAttributes) {
  const Schema s = Fixture("people");
  std::vector<Annotation> only_alumni;
  for (const Annotation &a : DeriveCanonical(s).All())
    if (a.attribute != "worksFor") only_alumni.push_back(a);
  const Grammar g = Grammar::Compile(s, only_alumni, TemplateLibrary::Starter());
  ASSERT_EQ(g.unannotated().size(), 1u);
  EXPECT_EQ(g.unannotated()[0].attribute, "worksFor");
  SynthesisOptions o;
  try {
    Synthesize(g, o);
    FAIL();
  } catch (const ValidationError &e) {
    ASSERT_EQ(e.diagnostics().size(), 1u);
    EXPECT_EQ(e.diagnostics()[0].path, "People.worksFor");
  }
}

TEST(GrammarTest, StrataPerRootRuleAndTable) {
  PeopleGrammar pg;
  std::set<std::string> rules;
  for (const Stratum &s : pg.grammar.strata()) {
    EXPECT_EQ(s.table, "People");
    rules.insert(s.rule_id);
  }
  EXPECT_TRUE(rules.count("bare"));
  EXPECT_TRUE(rules.count("count"));
}

TEST(GrammarTest, ParsesCanonicalSentences) {
  PeopleGrammar pg;
  ChartParser parser(pg.grammar);
  EXPECT_TRUE(parser.Accepts("people who are alumni of stanford",
                             ParseLf("People, alumniOf =~ \"Stanford\"")));
  EXPECT_TRUE(parser.Accepts("show me people who works for google",
                             ParseLf("People, worksFor =~ \"Google\"")));
  EXPECT_TRUE(parser.Accepts("how many people are there", ParseLf("aggregate count of (People)")));
  EXPECT_TRUE(parser.Accepts("show me the people that works for microsoft who are alumni of mit",
                             ParseLf("People, alumniOf =~ \"MIT\" && worksFor =~ \"Microsoft\"")));
  EXPECT_TRUE(parser.Parse("people who are alumni of yale").empty());
  EXPECT_TRUE(parser.Parse("").empty());
  EXPECT_TRUE(parser.Parse("colorless green ideas").empty());
}

TEST(GrammarTest, OpenClassesParse) {
  const Schema s = Fixture("restaurants");
  const Grammar g = Grammar::Compile(s, DeriveCanonical(s).All(), TemplateLibrary::Starter());
  ChartParser parser(g);
  EXPECT_TRUE(parser.Accepts("restaurants with 4 michelin star",
                             ParseLf("Restaurant, starRating == 4")));
  EXPECT_TRUE(parser.Accepts("restaurants with at least NUMBER_0 reviews",
                             ParseLf("Restaurant, aggregateRating.reviewCount >= NUMBER_0")));
}

TEST(GrammarTest, SynthesizesTheCanonicalSentence) {
  const SynthesisResult r = SynthesizePeople(100000, 1);
  bool found = false;
  for (const Example &e : r.examples)
    if (e.utterance == "people who are alumni of stanford") {
      found = true;
      EXPECT_TRUE(LfEqual(e.lf, ParseLf("People, alumniOf =~ \"Stanford\"")));
      EXPECT_EQ(e.round, 0);
    }
  EXPECT_TRUE(found);
}

TEST(GrammarTest, SingleAtomSpaceMatchesHandEnumeration) {
  std::set<std::string> expected = {"people"};
  for (const auto &[attr, clause] : PeopleClauses()) expected.insert("people " + clause);
  EXPECT_EQ(expected.size(), 25u);
  EXPECT_EQ(BareUtterances(SynthesizePeople(100000, 1).examples), expected);
}

TEST(GrammarTest, TwoAtomSpaceMatchesHandEnumeration) {
  std::set<std::string> expected = {"people"};
  const auto clauses = PeopleClauses();
  for (const auto &[a1, c1] : clauses) {
    expected.insert("people " + c1);
    for (const auto &[a2, c2] : clauses)
      if (a1 != a2) expected.insert("people " + c1 + " " + c2);
  }
  const SynthesisResult r = SynthesizePeople(100000, 2);
  EXPECT_EQ(BareUtterances(r.examples), expected);
  bool two = false;
  for (const Example &e : r.examples) {
    EXPECT_LE(e.atoms(), 2);
    two |= e.atoms() == 2;
  }
  EXPECT_TRUE(two);
}

TEST(GrammarTest, DistinctLogicalFormsMatchHandEnumeration) {
  std::set<std::string> filters = {""};
  for (const char *a : {"\"Stanford\"", "\"MIT\"", "\"Harvard\""}) {
    filters.insert(std::string("alumniOf =~ ") + a);
    for (const char *w : {"\"Google\"", "\"Microsoft\""})
      filters.insert(std::string("alumniOf =~ ") + a + " && worksFor =~ " + w);
  }
  for (const char *w : {"\"Google\"", "\"Microsoft\""}) filters.insert(std::string("worksFor =~ ") + w);
  std::set<std::string> expected;
  for (const std::string &f : filters) {
    const std::string set = f.empty() ? "People" : "People, " + f;
    expected.insert(set);
    expected.insert("aggregate count of (" + set + ")");
  }
  std::set<std::string> got;
  for (const Example &e : SynthesizePeople(100000, 2).examples) got.insert(SerializeLf(e.lf));
  EXPECT_EQ(got, expected);
}

TEST(GrammarTest, TargetOneYieldsOne) {
  const SynthesisResult r = SynthesizePeople(1, 3);
  EXPECT_EQ(r.examples.size(), 1u);
  EXPECT_FALSE(r.exhausted);
}

TEST(GrammarTest, ExhaustionWarns) {
  const SynthesisResult r = SynthesizePeople(100000, 1);
  EXPECT_TRUE(r.exhausted);
  EXPECT_LT(r.examples.size(), 100000u);
  bool warned = false;
  for (const Diagnostic &d : r.diagnostics)
    warned |= d.severity == Severity::kWarning && d.message.find("smaller than target") != std::string::npos;
  EXPECT_TRUE(warned);
}

TEST(GrammarTest, DeterministicForSeed) {
  const Schema s = Fixture("restaurants");
  const auto ann = DeriveCanonical(s).All();
  SynthesisOptions o;
  o.target_size = 300;
  o.check_parses = false;
  const auto a = Synthesize(s, ann, TemplateLibrary::Starter(), o).examples;
  const auto b = Synthesize(s, ann, TemplateLibrary::Starter(), o).examples;
  EXPECT_EQ(WriteDatasetText(a), WriteDatasetText(b));
  o.seed = 2;
  EXPECT_NE(WriteDatasetText(a), WriteDatasetText(Synthesize(s, ann, TemplateLibrary::Starter(), o).examples));
}

TEST(GrammarTest, SoundOnRestaurants) {
  const Schema s = Fixture("restaurants");
  SynthesisOptions o;
  o.target_size = 400;
  const SynthesisResult r = Synthesize(s, DeriveCanonical(s).All(), TemplateLibrary::Starter(), o);
  EXPECT_EQ(r.examples.size(), 400u);
  EXPECT_FALSE(HasErrors(r.diagnostics));
  std::set<std::string> ids;
  for (const Example &e : r.examples) {
    EXPECT_TRUE(ValidateQuery(e.lf, &s).empty()) << SerializeLf(e.lf);
    EXPECT_TRUE(ids.insert(e.id).second);
  }
}

TEST(GrammarTest, BadOptionsThrow) {
  const Schema s = Fixture("people");
  SynthesisOptions o;
  o.max_atoms = 0;
  EXPECT_THROW(Synthesize(s, DeriveCanonical(s).All(), TemplateLibrary::Starter(), o), ValidationError);
  o.max_atoms = 2;
  o.target_size = 0;
  EXPECT_THROW(Synthesize(s, DeriveCanonical(s).All(), TemplateLibrary::Starter(), o), ValidationError);
}

TEST(GrammarTest, CounterAgreesWithEnumeration) {
  PeopleGrammar pg;
  DerivationCounter counter(pg.grammar, 2, pg.grammar.max_depth());
  for (const Stratum &st : pg.grammar.strata())
    for (int p : st.productions)
      for (int k = 0; k <= 2; ++k)
        EXPECT_EQ(counter.CountProduction(p, k, pg.grammar.max_depth()),
                  static_cast<double>(
                      EnumerateProduction(pg.grammar, counter, p, k, pg.grammar.max_depth()).size()));
}

}  // namespace
}  // namespace qasynth
