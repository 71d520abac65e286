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

#include "qasynth/dataset.h"

#include <gtest/gtest.h>

#include <set>

#include "qasynth/errors.h"
#include "qasynth/text.h"
#include "test_util.h"

namespace qasynth {
namespace {

Example Ex(std::string id, std::string utterance, std::string lf, int round = 0) {
  Example e;
  e.id = std::move(id);
  e.utterance = std::move(utterance);
  e.lf = ParseLf(lf);
  e.round = round;
  return e;
}

// Straightforward recount: collect every n-gram as a vector of words.
double BruteDistinct(const std::vector<std::string> &corpus, int n) {
  std::set<std::vector<std::string>> distinct;
  std::size_t total = 0;
  for (const std::string &u : corpus) {
    std::vector<std::string> w;
    std::string cur;
    for (char c : u + " ") {
      if (c == ' ' || c == '\t') {
        if (!cur.empty()) w.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    for (int i = 0; i + n <= static_cast<int>(w.size()); ++i) {
      distinct.insert(std::vector<std::string>(w.begin() + i, w.begin() + i + n));
      ++total;
    }
  }
  return total ? static_cast<double>(distinct.size()) / total : 0.0;
}

TEST(DatasetTest, DistinctNExamples) {
  EXPECT_DOUBLE_EQ(DistinctN(std::vector<std::string>{"a b", "a c"}, 1), 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(DistinctN(std::vector<std::string>{"a b", "a c"}, 2), 1.0);
  EXPECT_DOUBLE_EQ(DistinctN(std::vector<std::string>{"a a"}, 1), 0.5);
  EXPECT_DOUBLE_EQ(DistinctN(std::vector<std::string>{"a a"}, 2), 1.0);
  EXPECT_DOUBLE_EQ(DistinctN(std::vector<std::string>{"a"}, 2), 0.0);
  EXPECT_THROW(DistinctN(std::vector<std::string>{}, 1), ValidationError);
  EXPECT_THROW(DistinctN(std::vector<std::string>{"a"}, 0), ValidationError);
}

TEST(DatasetTest, DistinctNMatchesBruteForce) {
  Rng rng(7);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "show", "me"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> corpus;
    const int docs = 1 + static_cast<int>(rng.Below(6));
    for (int d = 0; d < docs; ++d) {
      std::string u;
      const int len = static_cast<int>(rng.Below(7));
      for (int i = 0; i < len; ++i) u += (i ? " " : "") + vocab[rng.Below(vocab.size())];
      corpus.push_back(u);
    }
    for (int n = 1; n <= 3; ++n) EXPECT_DOUBLE_EQ(DistinctN(corpus, n), BruteDistinct(corpus, n));
  }
}

TEST(DatasetTest, Provenance) {
  EXPECT_EQ(ProvenanceName(0), "synthesized");
  EXPECT_EQ(ProvenanceName(3), "paraphrase-round-3");
  EXPECT_EQ(RoundFromProvenance("paraphrase-round-12"), 12);
  EXPECT_EQ(RoundFromProvenance("synthesized"), 0);
  for (const char *bad : {"paraphrase-round-", "paraphrase-round-0", "paraphrase-round-x", "other"})
    EXPECT_FALSE(RoundFromProvenance(bad).has_value()) << bad;
}

TEST(DatasetTest, TextRoundTripSortsById) {
  const Dataset d = {Ex("s2", "how many people are there", "aggregate count of (People)"),
                     Ex("s1", "people who are alumni of mit", "People, alumniOf =~ \"MIT\""),
                     Ex("s1-r1-01", "people who studied at mit", "People, alumniOf =~ \"MIT\"", 1)};
  const std::string text = WriteDatasetText(d);
  EXPECT_EQ(text,
            "s1\tpeople who are alumni of mit\tPeople, alumniOf =~ \"MIT\"\tsynthesized\t0\n"
            "s1-r1-01\tpeople who studied at mit\tPeople, alumniOf =~ \"MIT\"\tparaphrase-round-1\t1\n"
            "s2\thow many people are there\taggregate count of (People)\tsynthesized\t0\n");
  const Dataset back = ReadDatasetText(text);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[1].id, "s1-r1-01");
  EXPECT_EQ(back[1].round, 1);
  EXPECT_EQ(WriteDatasetText(back), text);
}

TEST(DatasetTest, WriteRejectsBadExamples) {
  EXPECT_THROW(WriteDatasetText({Ex("a", "x", "T"), Ex("a", "y", "T")}), ValidationError);
  EXPECT_THROW(WriteDatasetText({Ex("a", "x\ty", "T")}), ValidationError);
  EXPECT_THROW(WriteDatasetText({Ex("a", "x\ny", "T")}), ValidationError);
  EXPECT_THROW(WriteDatasetText({Ex("", "x", "T")}), ValidationError);
}

TEST(DatasetTest, ReadErrorsCarryLineNumber) {
  struct Case {
    const char *text;
    const char *needle;
  };
  for (const Case &c : {
           Case{"a\tx\tT\tsynthesized\t0\nb\tx\tT\n", "5 tab-separated"},
           Case{"a\tx\tT\tsynthesized\t0\na\ty\tT\tsynthesized\t0\n", "duplicate"},
           Case{"a\tx\tT\tsynthesized\t0\nb\tx\tT, ==\tsynthesized\t0\n", "logical form"},
           Case{"a\tx\tT\tsynthesized\t0\nb\tx\tT\tmined\t0\n", "provenance"},
           Case{"a\tx\tT\tsynthesized\t0\nb\tx\tT\tparaphrase-round-2\t1\n", "does not match"},
           Case{"a\tx\tT\tsynthesized\t0\nb\t \tT\tsynthesized\t0\n", "empty utterance"},
       }) {
    try {
      ReadDatasetText(c.text);
      ADD_FAILURE() << c.text;
    } catch (const ValidationError &e) {
      const std::string what = e.what();
      EXPECT_EQ(what.rfind("line 2:", 0), 0u) << what;
      EXPECT_NE(what.find(c.needle), std::string::npos) << what;
    }
  }
}

TEST(DatasetTest, ReadChecksSchema) {
  const Schema s = qasynth::testing::Fixture("people");
  EXPECT_NO_THROW(ReadDatasetText("a\tx\tPeople, alumniOf =~ \"MIT\"\tsynthesized\t0\n", &s));
  EXPECT_THROW(ReadDatasetText("a\tx\tPeople, employer =~ \"MIT\"\tsynthesized\t0\n", &s),
               ValidationError);
}

TEST(DatasetTest, Stats) {
  const Dataset d = {Ex("s1", "a b", "People, alumniOf =~ \"MIT\""), Ex("s2", "a c", "People"),
                     Ex("s1-r1-01", "a d", "People, alumniOf =~ \"MIT\"", 1)};
  const DatasetStats st = ComputeStats(d);
  EXPECT_EQ(st.size, 3u);
  EXPECT_EQ(st.per_provenance,
            (std::map<std::string, std::size_t>{{"synthesized", 2}, {"paraphrase-round-1", 1}}));
  EXPECT_EQ(st.atoms_histogram, (std::map<int, std::size_t>{{0, 1}, {1, 2}}));
  EXPECT_DOUBLE_EQ(st.distinct1, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(st.distinct2, 1.0);
  EXPECT_NE(st.ToJson().find("\"paraphrase-round-1\": 1"), std::string::npos);
  EXPECT_THROW(ComputeStats({}), ValidationError);
}

TEST(DatasetTest, FileRoundTrip) {
  const auto path = (qasynth::testing::ScratchDir("dataset") / "d.tsv").string();
  const Dataset d = {Ex("s1", "people", "People")};
  WriteDataset(path, d);
  EXPECT_EQ(WriteDatasetText(ReadDataset(path)), WriteDatasetText(d));
}

}  // namespace
}  // namespace qasynth
