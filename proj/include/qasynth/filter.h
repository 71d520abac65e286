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

#ifndef QASYNTH_FILTER_H_
#define QASYNTH_FILTER_H_

// Paraphrase-and-filter rounds over a dataset. A candidate survives when
// every literal of its logical form appears in it verbatim and, unless
// skipped, a parser maps it back to the same logical form.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qasynth/chart_parser.h"
#include "qasynth/dataset.h"
#include "qasynth/http_client.h"
#include "qasynth/logic_form.h"
#include "qasynth/paraphrase.h"

namespace qasynth {

// Every string literal occurs as a token sequence (case-insensitive) and
// every number as a digit string not embedded in a longer number.
bool StringMatchFilter(std::string_view utterance, const Query &lf);

// Round-trip check: parse each utterance and compare with its logical form.
class RoundTripChecker {
 public:
  virtual ~RoundTripChecker() = default;
  // Throws BackendError when a remote parser fails.
  virtual std::vector<bool> Check(const std::vector<std::string> &utterances,
                                  const std::vector<const Query *> &lfs) = 0;
  virtual std::string name() const = 0;
};

// The grammar's own chart parser. Accepts iff exactly one of the parses
// equals the expected logical form.
class OracleChecker : public RoundTripChecker {
 public:
  explicit OracleChecker(const Grammar &grammar, int jobs = 1)
      : parser_(grammar), jobs_(jobs < 1 ? 1 : jobs) {}
  std::vector<bool> Check(const std::vector<std::string> &utterances,
                          const std::vector<const Query *> &lfs) override;
  std::string name() const override { return "oracle"; }

 private:
  ChartParser parser_;
  int jobs_;
};

// A trained parser behind POST /parse. Empty or unparseable answers reject.
class WireChecker : public RoundTripChecker {
 public:
  explicit WireChecker(HttpEndpoint endpoint, std::size_t batch_size = 64)
      : parser_(std::move(endpoint)), batch_size_(batch_size < 1 ? 1 : batch_size) {}
  std::vector<bool> Check(const std::vector<std::string> &utterances,
                          const std::vector<const Query *> &lfs) override;
  std::string name() const override { return "wire"; }

 private:
  HttpParser parser_;
  std::size_t batch_size_;
};

// generated == rejected_string_match + rejected_parse + accepted.
struct RoundReport {
  int round = 0;
  std::size_t inputs = 0;     // examples paraphrased this round
  std::size_t generated = 0;  // candidates returned by the gateway
  std::size_t rejected_string_match = 0;
  std::size_t rejected_parse = 0;
  std::size_t accepted = 0;
  std::size_t added = 0;      // accepted and not already in the dataset
  std::size_t size_before = 0, size_after = 0;
  double distinct1_before = 0, distinct2_before = 0;
  double distinct1_after = 0, distinct2_after = 0;

  std::string ToJson() const;
};

struct LoopOptions {
  int rounds = 1;
  // Round k paraphrases only the examples added in round k-1.
  bool newest_only = true;
  bool skip_roundtrip = false;
};

struct LoopResult {
  Dataset dataset;
  std::vector<RoundReport> reports;
};

// Called after every completed round with the dataset at that point.
using RoundCallback = std::function<void(const RoundReport &, const Dataset &)>;

// New examples keep their parent's logical form and get ids
// "<parent>-r<round>-<nn>". The gateway's own round count should be 1.
// Backend failures propagate as BackendError after the callback has seen
// every completed round.
LoopResult RunRounds(Dataset dataset, ParaphraseGateway &gateway, RoundTripChecker *checker,
                     const LoopOptions &options, const RoundCallback &on_round = {});

}  // namespace qasynth

#endif  // QASYNTH_FILTER_H_
