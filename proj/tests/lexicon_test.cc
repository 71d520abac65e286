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

#include "qasynth/lexicon.h"

#include <gtest/gtest.h>

#include "qasynth/errors.h"

namespace qasynth {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token> &ts) {
  std::vector<std::string> out;
  for (const Token &t : ts) out.push_back(t.surface);
  return out;
}

std::vector<PosTag> Tags(const std::vector<std::string> &words) {
  std::vector<Token> ts;
  for (const std::string &w : words) ts.push_back({w, PosTag::kOther, false, -1});
  std::vector<PosTag> out;
  for (const Token &t : TagTokens(ts)) out.push_back(t.tag);
  return out;
}

TEST(LexiconTest, TokenizeFindsValueAnchors) {
  const auto ts = Tokenize("people with a Stanford degree", {"Stanford"});
  EXPECT_EQ(Surfaces(ts), (std::vector<std::string>{"people", "with", "a", "stanford", "degree"}));
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_EQ(ts[i].is_value_anchor, i == 3);
  EXPECT_EQ(ts[3].value_index, 0);
  EXPECT_TRUE(Tokenize("").empty());
}

TEST(LexiconTest, MultiwordValueBecomesOneAnchor) {
  const auto ts = Tokenize("restaurants in New York City tonight", {"new york", "New York City"});
  ASSERT_EQ(ts.size(), 4u);
  EXPECT_TRUE(ts[2].is_value_anchor);
  EXPECT_EQ(ts[2].surface, "new york city");
  EXPECT_EQ(ts[2].value_index, 1);
}

TEST(LexiconTest, EveryValueOccurrenceIsExactlyOneAnchor) {
  const std::vector<std::string> values = {"palo alto", "panda express", "alto"};
  const auto ts = Tokenize("panda express near Palo Alto, not alto.", values);
  int anchors = 0;
  for (const Token &t : ts) anchors += t.is_value_anchor;
  EXPECT_EQ(anchors, 3);
  EXPECT_EQ(Surfaces(ts), (std::vector<std::string>{"panda express", "near", "palo alto", ",",
                                                    "not", "alto", "."}));
}

TEST(LexiconTest, TokenizeKeepsPunctuationAndPlaceholders) {
  EXPECT_EQ(Surfaces(Tokenize("What's open after TIME_0? McDonald's 5-star 4.5 -3")),
            (std::vector<std::string>{"what's", "open", "after", "TIME_0", "?", "mcdonald's",
                                      "5-star", "4.5", "-3"}));
}

TEST(LexiconTest, TagsTableWords) {
  EXPECT_EQ(Tags({"educated", "at"}), (std::vector<PosTag>{PosTag::kPastPart, PosTag::kPrep}));
  EXPECT_EQ(Tags({"the"}), (std::vector<PosTag>{PosTag::kDet}));
  EXPECT_EQ(Tags({"graduated", "from"}), (std::vector<PosTag>{PosTag::kVerb, PosTag::kPrep}));
  EXPECT_EQ(Tags({"alumni", "of"}), (std::vector<PosTag>{PosTag::kNoun, PosTag::kPrep}));
  EXPECT_EQ(Tags({"who", "are"}), (std::vector<PosTag>{PosTag::kPron, PosTag::kVerb}));
  EXPECT_EQ(Tags({"chinese"}), (std::vector<PosTag>{PosTag::kAdj}));
}

TEST(LexiconTest, TaggingIsTotal) {
  const Lexicon &lex = Lexicon::Default();
  for (const std::string &w : lex.Words()) {
    const PosTag t = lex.TagWord(w);
    EXPECT_FALSE(PosTagName(t).empty()) << w;
    EXPECT_EQ(lex.TagWord(w), t);
  }
  EXPECT_EQ(lex.TagWord("zzyzx"), PosTag::kNoun);
  EXPECT_EQ(lex.TagWord("42"), PosTag::kOther);
}

TEST(LexiconTest, TagNamesRoundTrip) {
  for (PosTag t : {PosTag::kNoun, PosTag::kVerb, PosTag::kPastPart, PosTag::kAdj, PosTag::kPrep,
                   PosTag::kDet, PosTag::kPron, PosTag::kOther})
    EXPECT_EQ(PosTagFromName(PosTagName(t)), t);
  EXPECT_EQ(PosTagName(PosTag::kPastPart), "VERB-PASTPART");
}

TEST(LexiconTest, OverlappingClosedClassesAreRejected) {
  EXPECT_THROW(Lexicon::Parse(R"({"determiners":["the"],"prepositions":["the"]})"),
               ValidationError);
}

TEST(LexiconTest, SplitName) {
  EXPECT_EQ(SplitName("alumniOf"), (std::vector<std::string>{"alumni", "of"}));
  EXPECT_EQ(SplitName("author"), (std::vector<std::string>{"author"}));
  EXPECT_EQ(SplitName("aggregate_rating"), (std::vector<std::string>{"aggregate", "rating"}));
  EXPECT_EQ(SplitName("HTMLParser2"), (std::vector<std::string>{"html", "parser", "2"}));
}

TEST(LexiconTest, Stem) {
  EXPECT_EQ(Stem("creator"), Stem("creators"));
  EXPECT_EQ(Stem("directed"), "direct");
  EXPECT_EQ(Stem("director"), "direct");
  EXPECT_EQ(Stem("film"), "film");
  EXPECT_EQ(Stem("movies"), "movy");
  EXPECT_EQ(Stem("business"), "business");
}

TEST(LexiconTest, StemIsIdempotentOverLexicon) {
  for (const std::string &w : Lexicon::Default().Words()) EXPECT_EQ(Stem(Stem(w)), Stem(w)) << w;
  for (const char *w : {"creators", "directed", "reviews", "ratings", "publishers", "cities"})
    EXPECT_EQ(Stem(Stem(w)), Stem(w)) << w;
}

}  // namespace
}  // namespace qasynth
