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

#include "qasynth/placeholders.h"

#include <gtest/gtest.h>

#include <set>

#include "qasynth/errors.h"
#include "qasynth/lexicon.h"

namespace qasynth {
namespace {

TEST(PlaceholdersTest, SubstitutesSurrogate) {
  const Preprocessed p = PreprocessPlaceholders("open after TIME_0");
  EXPECT_EQ(p.text, "open after 2pm");
  ASSERT_EQ(p.binding.entries.size(), 1u);
  EXPECT_EQ(p.binding.entries[0].placeholder, "TIME_0");
  EXPECT_EQ(p.binding.entries[0].surrogate, "2pm");
  EXPECT_EQ(PostprocessPlaceholders("open later than 2pm", p.binding), "open later than TIME_0");
}

TEST(PlaceholdersTest, DistinctSurrogatesPerPlaceholder) {
  const Preprocessed p = PreprocessPlaceholders("open between TIME_0 and TIME_1 with NUMBER_0 stars");
  ASSERT_EQ(p.binding.entries.size(), 3u);
  std::set<std::string> surrogates;
  for (const auto &e : p.binding.entries) surrogates.insert(e.surrogate);
  EXPECT_EQ(surrogates.size(), 3u);
  EXPECT_EQ(PostprocessPlaceholders(p.text, p.binding),
            "open between TIME_0 and TIME_1 with NUMBER_0 stars");
}

TEST(PlaceholdersTest, RepeatedPlaceholderKeepsCount) {
  const Preprocessed p = PreprocessPlaceholders("NUMBER_0 or NUMBER_0");
  ASSERT_EQ(p.binding.entries.size(), 1u);
  EXPECT_EQ(p.binding.entries[0].occurrences, 2);
  const std::string s = p.binding.entries[0].surrogate;
  EXPECT_EQ(PostprocessPlaceholders(s + " or " + s, p.binding), "NUMBER_0 or NUMBER_0");
  EXPECT_FALSE(PostprocessPlaceholders(s, p.binding).has_value());
}

TEST(PlaceholdersTest, AvoidsSurrogatesAlreadyPresent) {
  const Preprocessed p = PreprocessPlaceholders("open at 2pm or after TIME_0");
  ASSERT_EQ(p.binding.entries.size(), 1u);
  EXPECT_NE(p.binding.entries[0].surrogate, "2pm");
  EXPECT_EQ(PostprocessPlaceholders(p.text, p.binding), "open at 2pm or after TIME_0");
}

TEST(PlaceholdersTest, RejectsLostOrDuplicatedSurrogate) {
  const Preprocessed p = PreprocessPlaceholders("open after TIME_0");
  EXPECT_FALSE(PostprocessPlaceholders("open late", p.binding).has_value());
  EXPECT_FALSE(PostprocessPlaceholders("open after 2pm or 2pm", p.binding).has_value());
  EXPECT_FALSE(PostprocessPlaceholders("open after TIME_0", p.binding).has_value());
}

TEST(PlaceholdersTest, NoPlaceholdersIsIdentity) {
  const Preprocessed p = PreprocessPlaceholders("Show me Chinese restaurants");
  EXPECT_TRUE(p.binding.empty());
  EXPECT_EQ(p.text, "show me chinese restaurants");
  EXPECT_EQ(PostprocessPlaceholders("chinese places", p.binding), "chinese places");
}

TEST(PlaceholdersTest, UnknownFamilyThrows) {
  EXPECT_THROW(PreprocessPlaceholders("near COLOR_0"), ValidationError);
  EXPECT_THROW(SurrogatePool("COLOR"), ValidationError);
}

TEST(PlaceholdersTest, PoolsAreDisjointAndNonEmpty) {
  std::set<std::string> all;
  std::size_t total = 0;
  for (const std::string &f : PlaceholderFamilies()) {
    const auto &pool = SurrogatePool(f);
    EXPECT_GE(pool.size(), 4u) << f;
    for (const std::string &s : pool) {
      all.insert(s);
      ++total;
      for (const Token &t : Tokenize(s)) EXPECT_FALSE(IsPlaceholder(t.surface));
    }
  }
  EXPECT_EQ(all.size(), total);
}

TEST(PlaceholdersTest, ExhaustedPoolThrows) {
  std::string u;
  for (std::size_t i = 0; i <= SurrogatePool("TIME").size(); ++i) u += " TIME_" + std::to_string(i);
  EXPECT_THROW(PreprocessPlaceholders(u), ValidationError);
}

TEST(PlaceholdersTest, IsPlaceholder) {
  EXPECT_TRUE(IsPlaceholder("TIME_0"));
  EXPECT_TRUE(IsPlaceholder("NUMBER_12"));
  EXPECT_FALSE(IsPlaceholder("time_0"));
  EXPECT_FALSE(IsPlaceholder("TIME_"));
  EXPECT_FALSE(IsPlaceholder("TIME"));
}

}  // namespace
}  // namespace qasynth
