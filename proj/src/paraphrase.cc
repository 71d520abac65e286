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

#include "qasynth/paraphrase.h"

#include <algorithm>
#include <future>
#include <set>
#include <utility>

#include "qasynth/lexicon.h"
#include "qasynth/placeholders.h"
#include "qasynth/text.h"

namespace qasynth {

std::vector<double> ParaphraseConfig::EffectiveTemperatures() const {
  std::vector<double> out;
  if (greedy) out.push_back(0.0);
  out.insert(out.end(), temperatures.begin(), temperatures.end());
  return out;
}

std::vector<Diagnostic> ParaphraseConfig::Validate() const {
  std::vector<Diagnostic> out;
  auto err = [&](const char *path, const char *msg) {
    out.push_back({Severity::kError, path, msg});
  };
  if (num_return < 1) err("num_return", "must be at least 1");
  if (!(top_p > 0.0 && top_p <= 1.0)) err("top_p", "must be in (0, 1]");
  if (temperatures.empty() && !greedy) err("temperatures", "no sampling pass configured");
  for (double t : temperatures)
    if (!(t > 0.0)) err("temperatures", "temperatures must be positive");
  if (greedy && num_return != static_cast<int>(temperatures.size()) + 1)
    err("num_return", "must equal the number of temperatures plus one greedy pass");
  if (rounds < 1) err("rounds", "must be at least 1");
  if (batch_size < 1) err("batch_size", "must be at least 1");
  if (max_in_flight < 1) err("max_in_flight", "must be at least 1");
  return out;
}

std::vector<std::vector<std::string>> IdentityParaphraser::Paraphrase(
    const std::vector<std::string> &sentences, const ParaphraseConfig &) {
  std::vector<std::vector<std::string>> out;
  out.reserve(sentences.size());
  for (const std::string &s : sentences) out.push_back({s});
  return out;
}

ParaphraseGateway::ParaphraseGateway(Paraphraser &backend, ParaphraseConfig config)
    : backend_(backend), config_(std::move(config)) {
  auto diags = config_.Validate();
  if (HasErrors(diags)) throw ValidationError("invalid paraphrase config", std::move(diags));
}

namespace {

struct Pending {
  std::size_t input;
  std::string text;  // surrogate form sent to the backend
};

struct BatchOutcome {
  std::vector<std::vector<std::string>> outputs;
  std::string error;
};

}  // namespace

GatewayResult ParaphraseGateway::ParaphraseBatch(const std::vector<std::string> &utterances) {
  GatewayResult result;
  result.candidates.resize(utterances.size());
  std::vector<PlaceholderBinding> bindings;
  std::vector<Pending> frontier;
  std::vector<std::set<std::string>> seen(utterances.size());
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    Preprocessed p = PreprocessPlaceholders(utterances[i]);
    bindings.push_back(std::move(p.binding));
    frontier.push_back({i, std::move(p.text)});
  }

  for (int round = 1; round <= config_.rounds && !frontier.empty(); ++round) {
    std::vector<std::pair<std::size_t, std::size_t>> batches;
    for (std::size_t b = 0; b < frontier.size(); b += config_.batch_size)
      batches.emplace_back(b, std::min(frontier.size(), b + config_.batch_size));

    std::vector<BatchOutcome> outcomes(batches.size());
    auto run = [&](std::size_t k) {
      const auto [lo, hi] = batches[k];
      std::vector<std::string> sentences;
      for (std::size_t j = lo; j < hi; ++j) sentences.push_back(frontier[j].text);
      BatchOutcome o;
      try {
        o.outputs = backend_.Paraphrase(sentences, config_);
        if (o.outputs.size() != sentences.size())
          o.error = "backend returned " + std::to_string(o.outputs.size()) + " lists for " +
                    std::to_string(sentences.size()) + " sentences";
      } catch (const BackendError &e) {
        o.error = e.what();
      }
      return o;
    };
    // Bounded fan-out: at most max_in_flight batches run concurrently.
    const std::size_t width = static_cast<std::size_t>(config_.max_in_flight);
    for (std::size_t start = 0; start < batches.size(); start += width) {
      const std::size_t stop = std::min(batches.size(), start + width);
      if (stop - start == 1) {
        outcomes[start] = run(start);
        continue;
      }
      std::vector<std::future<BatchOutcome>> futures;
      for (std::size_t k = start; k < stop; ++k)
        futures.push_back(std::async(std::launch::async, run, k));
      for (std::size_t k = start; k < stop; ++k) outcomes[k] = futures[k - start].get();
    }

    std::vector<Pending> next;
    std::vector<int> added(utterances.size(), 0);
    for (std::size_t k = 0; k < batches.size(); ++k) {
      const auto [lo, hi] = batches[k];
      if (!outcomes[k].error.empty()) {
        result.failures.push_back({Severity::kError,
                                   "round " + std::to_string(round) + " batch " +
                                       std::to_string(k),
                                   outcomes[k].error});
        continue;
      }
      for (std::size_t j = lo; j < hi; ++j) {
        const std::size_t input = frontier[j].input;
        for (const std::string &raw : outcomes[k].outputs[j - lo]) {
          if (added[input] >= config_.num_return) break;
          const std::string surrogate_form = JoinTokens(Tokenize(raw));
          if (surrogate_form.empty()) continue;
          auto restored = PostprocessPlaceholders(surrogate_form, bindings[input]);
          if (!restored) {
            ++result.placeholder_rejects;
            continue;
          }
          if (!seen[input].insert(*restored).second) continue;
          result.candidates[input].push_back({*restored, round});
          next.push_back({input, surrogate_form});
          ++added[input];
        }
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace qasynth
