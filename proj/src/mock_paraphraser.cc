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

#include "qasynth/mock_paraphraser.h"

#include <algorithm>
#include <set>

#include "embedded_data.h"
#include "json.hpp"
#include "qasynth/errors.h"
#include "qasynth/lexicon.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

std::optional<std::size_t> FindSeq(const std::vector<std::string> &hay,
                                   const std::vector<std::string> &needle,
                                   std::size_t from = 0) {
  if (needle.empty()) return std::nullopt;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i)
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<long>(i))) return i;
  return std::nullopt;
}

std::vector<std::string> Splice(const std::vector<std::string> &words, std::size_t at,
                                std::size_t len, const std::vector<std::string> &with) {
  std::vector<std::string> out(words.begin(), words.begin() + static_cast<long>(at));
  out.insert(out.end(), with.begin(), with.end());
  out.insert(out.end(), words.begin() + static_cast<long>(at + len), words.end());
  return out;
}

bool Contains(const std::vector<std::string> &list, const std::string &w) {
  return std::find(list.begin(), list.end(), w) != list.end();
}

int Rank(MockLabel l) {
  switch (l) {
    case MockLabel::kIdentity: return 0;
    case MockLabel::kPreserving: return 1;
    case MockLabel::kMutated: return 2;
  }
  return 0;
}

void Record(std::map<std::string, MockLabel> &m, const std::string &key, MockLabel l) {
  auto [it, inserted] = m.emplace(key, l);
  if (!inserted && Rank(l) > Rank(it->second)) it->second = l;
}

}  // namespace

const char *MockLabelName(MockLabel label) {
  switch (label) {
    case MockLabel::kIdentity: return "identity";
    case MockLabel::kPreserving: return "preserving";
    case MockLabel::kMutated: return "mutated";
  }
  return "identity";
}

MockPhraseTable MockPhraseTable::Parse(std::string_view json) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json);
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("mock phrase table: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("mock phrase table: expected an object");
  MockPhraseTable t;
  try {
    if (doc.contains("phrases")) {
      if (!doc.at("phrases").is_object())
        throw ValidationError("mock phrase table: 'phrases' must map phrases to lists");
      for (const auto &[from, tos] : doc.at("phrases").items()) {
        std::vector<std::string> alternatives;
        for (const auto &to : tos) alternatives.push_back(to.get<std::string>());
        for (const std::string &to : alternatives) t.phrases.push_back({Words(from), Words(to)});
      }
    }
    if (doc.contains("relative_pronouns"))
      t.relative_pronouns = doc.at("relative_pronouns").get<std::vector<std::string>>();
    if (doc.contains("copulas")) t.copulas = doc.at("copulas").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError(std::string("mock phrase table: ") + e.what());
  }
  return t;
}

const MockPhraseTable &MockPhraseTable::Default() {
  static const MockPhraseTable kTable = Parse(embedded::default_mock_table());
  return kTable;
}

MockParaphraser::MockParaphraser(MockOptions options, MockPhraseTable table)
    : options_(std::move(options)), table_(std::move(table)) {
  if (!(options_.adversarial_rate >= 0.0 && options_.adversarial_rate <= 1.0))
    throw ValidationError("adversarial rate must be in [0, 1]");
  std::set<std::vector<std::string>> unique;
  for (const std::string &v : options_.values) {
    auto w = Words(v);
    if (!w.empty()) unique.insert(std::move(w));
  }
  value_words_.assign(unique.begin(), unique.end());
}

std::vector<std::vector<std::string>> MockParaphraser::Variants(
    const std::vector<std::string> &words) const {
  std::vector<std::vector<std::string>> out;
  for (const auto &[from, to] : table_.phrases) {
    if (auto at = FindSeq(words, from)) out.push_back(Splice(words, *at, from.size(), to));
  }
  // "with X" -> "that have X", except before superlatives.
  for (std::size_t i = 1; i + 1 < words.size(); ++i) {
    if (words[i] == "with" && words[i + 1] != "the") {
      out.push_back(Splice(words, i, 1, {"that", "have"}));
      break;
    }
  }
  // "who are educated at" -> "educated at".
  const Lexicon &lex = Lexicon::Default();
  for (std::size_t i = 1; i + 2 < words.size(); ++i) {
    if (Contains(table_.relative_pronouns, words[i]) && Contains(table_.copulas, words[i + 1])) {
      PosTag next = lex.TagWord(words[i + 2]);
      if (next == PosTag::kPastPart || next == PosTag::kPrep) {
        out.push_back(Splice(words, i, 2, {}));
        break;
      }
    }
  }
  // Swap the last two clauses introduced by a relative pronoun or "with".
  std::vector<std::size_t> starts;
  for (std::size_t i = 1; i < words.size(); ++i)
    if (Contains(table_.relative_pronouns, words[i]) ||
        (words[i] == "with" && i + 1 < words.size() && words[i + 1] != "the"))
      starts.push_back(i);
  if (starts.size() >= 2) {
    const std::size_t a = starts[starts.size() - 2], b = starts.back();
    std::vector<std::string> v(words.begin(), words.begin() + static_cast<long>(a));
    v.insert(v.end(), words.begin() + static_cast<long>(b), words.end());
    v.insert(v.end(), words.begin() + static_cast<long>(a), words.begin() + static_cast<long>(b));
    out.push_back(std::move(v));
  }
  std::set<std::vector<std::string>> seen = {words};
  std::vector<std::vector<std::string>> unique;
  for (auto &v : out)
    if (seen.insert(v).second) unique.push_back(std::move(v));
  return unique;
}

std::optional<std::vector<std::string>> MockParaphraser::Mutate(std::vector<std::string> words,
                                                                std::uint64_t salt) const {
  Rng rng(salt);
  std::vector<std::size_t> numbers;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (ParseNumber(words[i])) numbers.push_back(i);
  if (!numbers.empty()) {
    const std::size_t i = numbers[rng.Below(numbers.size())];
    const double v = *ParseNumber(words[i]);
    words[i] = FormatNumber(v + 1 + static_cast<double>(rng.Below(9)));
    return words;
  }
  for (std::size_t k = 0; k < value_words_.size(); ++k) {
    auto at = FindSeq(words, value_words_[k]);
    if (!at || value_words_.size() < 2) continue;
    std::size_t other = rng.Below(value_words_.size() - 1);
    if (other >= k) ++other;
    return Splice(words, *at, value_words_[k].size(), value_words_[other]);
  }
  return std::nullopt;
}

std::vector<MockOutput> MockParaphraser::Generate(std::string_view sentence,
                                                  int num_return) const {
  std::vector<MockOutput> out;
  if (num_return < 1) return out;
  const std::vector<std::string> words = Words(sentence);
  if (words.empty()) return out;
  const std::string key = Join(words, " ");
  const std::uint64_t base = StableHash(key, StableHash(std::to_string(options_.seed)));

  std::vector<std::vector<std::string>> variants = Variants(words);
  Rng shuffle(base);
  for (std::size_t i = variants.size(); i > 1; --i)
    std::swap(variants[i - 1], variants[shuffle.Below(i)]);

  std::vector<std::pair<std::vector<std::string>, MockLabel>> picked;
  if (options_.emit_identity) picked.push_back({words, MockLabel::kIdentity});
  for (auto &v : variants) {
    if (static_cast<int>(picked.size()) >= num_return) break;
    picked.push_back({std::move(v), MockLabel::kPreserving});
  }
  for (std::size_t i = 0; i < picked.size(); ++i) {
    Rng coin(base + 0x9e3779b97f4a7c15ULL * (i + 1));
    if (options_.adversarial_rate > 0 && coin.Chance(options_.adversarial_rate)) {
      if (auto m = Mutate(picked[i].first, coin.Next())) {
        picked[i] = {std::move(*m), MockLabel::kMutated};
      }
    }
    out.push_back({Join(picked[i].first, " "), picked[i].second});
  }
  return out;
}

std::vector<std::vector<std::string>> MockParaphraser::Paraphrase(
    const std::vector<std::string> &sentences, const ParaphraseConfig &config) {
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences.size());
  std::vector<std::pair<std::string, std::vector<MockOutput>>> generated;
  for (const std::string &s : sentences) {
    auto outputs = Generate(s, config.num_return);
    std::vector<std::string> texts;
    for (const MockOutput &o : outputs) texts.push_back(o.text);
    out.push_back(std::move(texts));
    generated.push_back({JoinTokens(Tokenize(s)), std::move(outputs)});
  }
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto &[input, outputs] : generated) {
    for (const MockOutput &o : outputs) {
      auto [it, inserted] = log_.emplace(std::make_pair(input, o.text), o.label);
      if (!inserted && Rank(o.label) > Rank(it->second)) it->second = o.label;
      Record(by_output_, o.text, o.label);
    }
  }
  return out;
}

std::optional<MockLabel> MockParaphraser::LabelOf(const std::string &input,
                                                  const std::string &output) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = log_.find({input, output});
  if (it == log_.end()) return std::nullopt;
  return it->second;
}

std::optional<MockLabel> MockParaphraser::LabelOfOutput(const std::string &output) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = by_output_.find(output);
  if (it == by_output_.end()) return std::nullopt;
  return it->second;
}

ScriptedParaphraser::ScriptedParaphraser(std::map<std::string, std::vector<std::string>> table)
    : script_([table = std::move(table)](const std::string &s) {
        auto it = table.find(s);
        return it == table.end() ? std::vector<std::string>{} : it->second;
      }) {}

std::vector<std::vector<std::string>> ScriptedParaphraser::Paraphrase(
    const std::vector<std::string> &sentences, const ParaphraseConfig &) {
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences.size());
  for (const std::string &s : sentences) out.push_back(script_(s));
  return out;
}

std::vector<std::vector<std::string>> FailingParaphraser::Paraphrase(
    const std::vector<std::string> &, const ParaphraseConfig &) {
  throw BackendError(message_);
}

}  // namespace qasynth
