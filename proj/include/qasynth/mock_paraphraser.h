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

#ifndef QASYNTH_MOCK_PARAPHRASER_H_
#define QASYNTH_MOCK_PARAPHRASER_H_

// Deterministic paraphrasers for tests and offline runs.

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qasynth/paraphrase.h"

namespace qasynth {

enum class MockLabel { kIdentity, kPreserving, kMutated };

const char *MockLabelName(MockLabel label);

struct MockOutput {
  std::string text;
  MockLabel label = MockLabel::kIdentity;
};

// Rewrite rules: phrase substitutions plus a few structural transforms.
struct MockPhraseTable {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> phrases;
  std::vector<std::string> relative_pronouns;
  std::vector<std::string> copulas;

  // Throws ValidationError.
  static MockPhraseTable Parse(std::string_view json);
  static const MockPhraseTable &Default();
};

struct MockOptions {
  std::uint64_t seed = 1;
  // Probability that an output gets a value or number swapped.
  double adversarial_rate = 0.0;
  bool emit_identity = true;
  // Known values, used for value swaps, e.g. schema example values.
  std::vector<std::string> values;
};

// Output depends only on (options, sentence, num_return); calls from
// several threads are safe. Every emitted (input, output) pair is recorded
// with its label.
class MockParaphraser : public Paraphraser {
 public:
  explicit MockParaphraser(MockOptions options = {},
                           MockPhraseTable table = MockPhraseTable::Default());

  std::vector<MockOutput> Generate(std::string_view sentence, int num_return) const;

  std::vector<std::vector<std::string>> Paraphrase(const std::vector<std::string> &sentences,
                                                   const ParaphraseConfig &config) override;
  std::string name() const override { return "mock"; }

  // Label of `output` as emitted for `input` (both tokenized); when the
  // same text was emitted with several labels, kMutated wins.
  std::optional<MockLabel> LabelOf(const std::string &input, const std::string &output) const;
  // Label of `output` across all inputs, with the same precedence.
  std::optional<MockLabel> LabelOfOutput(const std::string &output) const;

 private:
  std::vector<std::vector<std::string>> Variants(const std::vector<std::string> &words) const;
  std::optional<std::vector<std::string>> Mutate(std::vector<std::string> words,
                                                 std::uint64_t salt) const;

  MockOptions options_;
  MockPhraseTable table_;
  std::vector<std::vector<std::string>> value_words_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, MockLabel> log_;
  std::map<std::string, MockLabel> by_output_;
};

// Returns scripted outputs: `script(sentence)` for every input.
class ScriptedParaphraser : public Paraphraser {
 public:
  using Script = std::function<std::vector<std::string>(const std::string &)>;
  explicit ScriptedParaphraser(Script script) : script_(std::move(script)) {}
  // Fixed table lookup; unknown inputs yield no outputs.
  explicit ScriptedParaphraser(std::map<std::string, std::vector<std::string>> table);

  std::vector<std::vector<std::string>> Paraphrase(const std::vector<std::string> &sentences,
                                                   const ParaphraseConfig &config) override;
  std::string name() const override { return "scripted"; }

 private:
  Script script_;
};

// Always throws BackendError; useful for failure-path tests.
class FailingParaphraser : public Paraphraser {
 public:
  explicit FailingParaphraser(std::string message = "backend unavailable")
      : message_(std::move(message)) {}
  std::vector<std::vector<std::string>> Paraphrase(const std::vector<std::string> &,
                                                   const ParaphraseConfig &) override;
  std::string name() const override { return "failing"; }

 private:
  std::string message_;
};

}  // namespace qasynth

#endif  // QASYNTH_MOCK_PARAPHRASER_H_
