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

#ifndef QASYNTH_PARAPHRASE_H_
#define QASYNTH_PARAPHRASE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "qasynth/errors.h"

namespace qasynth {

// Sampling configuration forwarded to the backend. With the greedy pass
// enabled, num_return equals temperatures.size() + 1.
struct ParaphraseConfig {
  int num_return = 5;
  double top_p = 0.9;
  std::vector<double> temperatures = {0.3, 0.5, 0.7, 1.0};
  bool greedy = true;       // adds a greedy pass (sent as temperature 0)
  int rounds = 1;           // each round consumes the previous round's output
  std::size_t batch_size = 32;
  int max_in_flight = 4;    // concurrent backend requests

  // Temperatures actually sent, greedy first when enabled.
  std::vector<double> EffectiveTemperatures() const;
  std::vector<Diagnostic> Validate() const;
};

// One backend call. Outputs are positionally aligned with `sentences`.
// Implementations must be safe to call from several threads at once.
class Paraphraser {
 public:
  virtual ~Paraphraser() = default;
  virtual std::vector<std::vector<std::string>> Paraphrase(
      const std::vector<std::string> &sentences, const ParaphraseConfig &config) = 0;
  virtual std::string name() const = 0;
};

// Returns every input unchanged.
class IdentityParaphraser : public Paraphraser {
 public:
  std::vector<std::vector<std::string>> Paraphrase(const std::vector<std::string> &sentences,
                                                   const ParaphraseConfig &config) override;
  std::string name() const override { return "identity"; }
};

struct ParaphraseCandidate {
  std::string text;
  int round = 1;

  bool operator==(const ParaphraseCandidate &) const = default;
};

struct GatewayResult {
  // candidates[i] belongs to input i.
  std::vector<std::vector<ParaphraseCandidate>> candidates;
  // One entry per failed backend batch; affected inputs get no candidates
  // for that round.
  std::vector<Diagnostic> failures;
  // Candidates dropped because a placeholder surrogate did not survive.
  std::size_t placeholder_rejects = 0;

  bool ok() const { return failures.empty(); }
};

// Placeholder handling, batching, bounded concurrency and multi-round
// chaining in front of a Paraphraser. Output order always matches input
// order regardless of completion order.
class ParaphraseGateway {
 public:
  // Throws ValidationError on an invalid config.
  ParaphraseGateway(Paraphraser &backend, ParaphraseConfig config);

  // Throws ValidationError on an unknown placeholder family in the input.
  // Backend failures are reported in the result, never thrown.
  GatewayResult ParaphraseBatch(const std::vector<std::string> &utterances);

  const ParaphraseConfig &config() const { return config_; }
  Paraphraser &backend() { return backend_; }

 private:
  Paraphraser &backend_;
  ParaphraseConfig config_;
};

}  // namespace qasynth

#endif  // QASYNTH_PARAPHRASE_H_
