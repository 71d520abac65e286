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

#include "qasynth/template_library.h"

#include <gtest/gtest.h>

#include <set>

#include "json.hpp"
#include "qasynth/errors.h"

namespace qasynth {
namespace {

std::string Render(const std::vector<PatternItem> &seq) {
  std::string out;
  for (const PatternItem &item : seq) {
    if (!out.empty()) out += ' ';
    if (!item.is_slot) {
      out += item.word;
      continue;
    }
    switch (item.slot) {
      case SlotKind::kTable: out += "$table"; break;
      case SlotKind::kSet: out += "$set"; break;
      case SlotKind::kValue: out += "$value"; break;
      case SlotKind::kAttr: out += "$attr"; break;
      case SlotKind::kAnnotation: out += "<" + std::string(PosName(item.pos)) + ">"; break;
    }
  }
  return out;
}

std::set<std::string> Expansions(std::string_view pattern) {
  std::set<std::string> out;
  for (const auto &seq : ExpandPattern(ParsePattern(pattern))) out.insert(Render(seq));
  return out;
}

std::string WithoutRule(const std::string &id) {
  auto doc = nlohmann::json::parse(TemplateLibrary::StarterText());
  auto &rules = doc["rules"];
  for (auto it = rules.begin(); it != rules.end(); ++it)
    if ((*it)["id"] == id) {
      rules.erase(it);
      break;
    }
  return doc.dump();
}

bool HasMessage(const std::vector<Diagnostic> &ds, const std::string &needle,
                const std::string &path = "") {
  for (const Diagnostic &d : ds)
    if (d.severity == Severity::kError && d.message.find(needle) != std::string::npos &&
        (path.empty() || d.path == path))
      return true;
  return false;
}

TEST(TemplateLibraryTest, StarterIsValid) {
  EXPECT_TRUE(ValidateLibrary(TemplateLibrary::Starter()).empty());
  EXPECT_NO_THROW(LoadLibrary(TemplateLibrary::StarterText()));
}

TEST(TemplateLibraryTest, StarterCoversEveryCategory) {
  std::set<PosCategory> covered;
  for (const TemplateRule &r : TemplateLibrary::Starter().rules)
    if (r.semantics == Semantics::kFilter) covered.insert(*r.annotation_slot());
  EXPECT_EQ(covered.size(), kAllPosCategories.size());
}

TEST(TemplateLibraryTest, MissingAdjectiveRuleIsAnError) {
  const auto ds = ValidateLibrary(TemplateLibrary::Parse(WithoutRule("adjective")));
  EXPECT_TRUE(HasMessage(ds, "adjective"));
  EXPECT_THROW(LoadLibrary(WithoutRule("adjective")), ValidationError);
}

TEST(TemplateLibraryTest, MissingTableOrRootRule) {
  EXPECT_TRUE(HasMessage(ValidateLibrary(TemplateLibrary::Parse(WithoutRule("table"))),
                         "no table rule"));
  auto doc = nlohmann::json::parse(TemplateLibrary::StarterText());
  auto &rules = doc["rules"];
  for (auto it = rules.begin(); it != rules.end();)
    it = (*it)["category"] == "root" ? rules.erase(it) : it + 1;
  EXPECT_TRUE(HasMessage(ValidateLibrary(TemplateLibrary::Parse(doc.dump())), "no root rule"));
}

TEST(TemplateLibraryTest, UndefinedSlotNamesTheRule) {
  auto doc = nlohmann::json::parse(TemplateLibrary::StarterText());
  doc["rules"].push_back(
      {{"id", "bogus"}, {"category", "set"}, {"pattern", "$set near $foo"}, {"semantics", "filter"}});
  const auto ds = ValidateLibrary(TemplateLibrary::Parse(doc.dump()));
  EXPECT_TRUE(HasMessage(ds, "undefined slot '$foo'", "rule 'bogus'"));
}

TEST(TemplateLibraryTest, SlotShapeErrors) {
  auto doc = nlohmann::json::parse(TemplateLibrary::StarterText());
  doc["rules"].push_back({{"id", "two_sets"}, {"category", "root"}, {"pattern", "$set and $set"},
                          {"semantics", "select"}});
  doc["rules"].push_back({{"id", "cmp"}, {"category", "value"}, {"pattern", "over $value"},
                          {"semantics", "value_ge"}});
  doc["rules"].push_back({{"id", "dup"}, {"category", "set"}, {"pattern", "$table"},
                          {"semantics", "table"}});
  doc["rules"].push_back({{"id", "dup"}, {"category", "set"}, {"pattern", "$table"},
                          {"semantics", "table"}});
  const auto ds = ValidateLibrary(TemplateLibrary::Parse(doc.dump()));
  EXPECT_TRUE(HasMessage(ds, "exactly one $set", "rule 'two_sets'"));
  EXPECT_TRUE(HasMessage(ds, "number, date or time", "rule 'cmp'"));
  EXPECT_TRUE(HasMessage(ds, "duplicate rule id", "rule 'dup'"));
}

TEST(TemplateLibraryTest, BadMaxDepth) {
  auto doc = nlohmann::json::parse(TemplateLibrary::StarterText());
  doc["max_depth"] = 1;
  EXPECT_TRUE(HasMessage(ValidateLibrary(TemplateLibrary::Parse(doc.dump())), "max_depth"));
}

TEST(TemplateLibraryTest, PatternExpansion) {
  EXPECT_EQ(Expansions("(show me|find) ?(the|all) $set"),
            (std::set<std::string>{"show me $set", "show me the $set", "show me all $set",
                                   "find $set", "find the $set", "find all $set"}));
  EXPECT_EQ(ExpandPattern(ParsePattern("(a|b) (c|d) ?(e)")).size(), 8u);
  EXPECT_EQ(Expansions("$set with $np"), (std::set<std::string>{"$set with <has_a_noun>"}));
  EXPECT_EQ(Expansions("$adj $set"), (std::set<std::string>{"<adjective> $set"}));
  EXPECT_EQ(Expansions("$set $pvp $isnp $vp $prep"),
            (std::set<std::string>{"$set <passive_verb> <is_a_noun> <active_verb> <prepositional>"}));
}

TEST(TemplateLibraryTest, ExpansionOrderIsFixed) {
  const auto a = ExpandPattern(ParsePattern("(x|y) ?(z) $set"));
  const auto b = ExpandPattern(ParsePattern("(x|y) ?(z) $set"));
  EXPECT_EQ(a, b);
}

TEST(TemplateLibraryTest, MalformedPatternsReportOffset) {
  for (const char *bad : {"(a|b", "a )", "", "?(", "(|)"}) {
    EXPECT_THROW(ParsePattern(bad), ValidationError) << bad;
  }
  try {
    ParsePattern("show (me");
    FAIL();
  } catch (const ValidationError &e) {
    EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos);
  }
}

TEST(TemplateLibraryTest, MalformedDocuments) {
  EXPECT_THROW(TemplateLibrary::Parse("[]"), ValidationError);
  EXPECT_THROW(TemplateLibrary::Parse(R"({"rules":[{"id":"x"}]})"), ValidationError);
  EXPECT_THROW(TemplateLibrary::Parse(
                   R"({"rules":[{"id":"x","category":"set","pattern":"$table","semantics":"nope"}]})"),
               ValidationError);
}

TEST(TemplateLibraryTest, Find) {
  EXPECT_NE(TemplateLibrary::Starter().Find("command"), nullptr);
  EXPECT_EQ(TemplateLibrary::Starter().Find("nope"), nullptr);
}

TEST(TemplateLibraryTest, Pluralize) {
  EXPECT_EQ(Pluralize("restaurant"), "restaurants");
  EXPECT_EQ(Pluralize("people"), "people");
  EXPECT_EQ(Pluralize("person"), "people");
  EXPECT_EQ(Pluralize("city"), "cities");
  EXPECT_EQ(Pluralize("day"), "days");
  EXPECT_EQ(Pluralize("box"), "boxes");
  EXPECT_EQ(Pluralize("music store"), "music stores");
}

}  // namespace
}  // namespace qasynth
