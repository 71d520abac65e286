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

#include "qasynth/filter.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <future>
#include <set>
#include <utility>

#include "json.hpp"
#include "qasynth/lexicon.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

bool ContainsSeq(const std::vector<std::string> &hay, const std::vector<std::string> &needle) {
  if (needle.empty()) return true;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// `digits` occurs in `text` not as part of a longer number.
bool ContainsNumber(const std::string &text, const std::string &digits) {
  for (std::size_t at = text.find(digits); at != std::string::npos;
       at = text.find(digits, at + 1)) {
    const std::size_t end = at + digits.size();
    const bool left_ok =
        at == 0 || (!IsDigit(text[at - 1]) && !(text[at - 1] == '.' && at >= 2 && IsDigit(text[at - 2])));
    const bool right_ok =
        end == text.size() ||
        (!IsDigit(text[end]) && !(text[end] == '.' && end + 1 < text.size() && IsDigit(text[end + 1])));
    const bool sign_ok = digits[0] == '-' || at == 0 || text[at - 1] != '-' ||
                         (at >= 2 && std::isalnum(static_cast<unsigned char>(text[at - 2])));
    if (left_ok && right_ok && sign_ok) return true;
  }
  return false;
}

std::string Key(const std::string &utterance, const Query &lf) {
  return utterance + '\x1f' + SerializeLf(lf);
}

}  // namespace

bool StringMatchFilter(std::string_view utterance, const Query &lf) {
  const std::vector<std::string> words = Words(utterance);
  const LiteralSet literals = ExtractLiterals(lf);
  for (const std::string &s : literals.strings)
    if (!ContainsSeq(words, Words(s))) return false;
  const std::string lower = ToLower(utterance);
  for (double n : literals.numbers)
    if (!ContainsNumber(lower, FormatNumber(n))) return false;
  return true;
}

std::vector<bool> OracleChecker::Check(const std::vector<std::string> &utterances,
                                       const std::vector<const Query *> &lfs) {
  std::vector<bool> out(utterances.size(), false);
  auto work = [&](std::size_t lo, std::size_t hi) {
    std::vector<char> part;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::string want = SerializeLf(*lfs[i]);
      int equal = 0;
      for (const Query &q : parser_.Parse(utterances[i]))
        if (SerializeLf(q) == want) ++equal;
      part.push_back(equal == 1);
    }
    return part;
  };
  const std::size_t n = utterances.size();
  const std::size_t jobs = std::min<std::size_t>(static_cast<std::size_t>(jobs_), n);
  if (jobs <= 1) {
    auto part = work(0, n);
    for (std::size_t i = 0; i < n; ++i) out[i] = part[i];
    return out;
  }
  std::vector<std::future<std::vector<char>>> futures;
  const std::size_t chunk = (n + jobs - 1) / jobs;
  for (std::size_t lo = 0; lo < n; lo += chunk)
    futures.push_back(std::async(std::launch::async, work, lo, std::min(n, lo + chunk)));
  std::size_t i = 0;
  for (auto &f : futures)
    for (char c : f.get()) out[i++] = c;
  return out;
}

std::vector<bool> WireChecker::Check(const std::vector<std::string> &utterances,
                                     const std::vector<const Query *> &lfs) {
  std::vector<bool> out;
  out.reserve(utterances.size());
  for (std::size_t lo = 0; lo < utterances.size(); lo += batch_size_) {
    const std::size_t hi = std::min(utterances.size(), lo + batch_size_);
    std::vector<std::string> batch(utterances.begin() + static_cast<long>(lo),
                                   utterances.begin() + static_cast<long>(hi));
    const std::vector<std::string> parsed = parser_.Parse(batch);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::string &text = parsed[i - lo];
      bool ok = false;
      if (!text.empty()) {
        try {
          ok = SerializeLf(ParseLf(text)) == SerializeLf(*lfs[i]);
        } catch (const ValidationError &) {
          ok = false;
        }
      }
      out.push_back(ok);
    }
  }
  return out;
}

std::string RoundReport::ToJson() const {
  nlohmann::ordered_json j;
  j["round"] = round;
  j["inputs"] = inputs;
  j["generated"] = generated;
  j["rejected_string_match"] = rejected_string_match;
  j["rejected_parse"] = rejected_parse;
  j["accepted"] = accepted;
  j["added"] = added;
  j["size_before"] = size_before;
  j["size_after"] = size_after;
  j["distinct1_before"] = distinct1_before;
  j["distinct2_before"] = distinct2_before;
  j["distinct1_after"] = distinct1_after;
  j["distinct2_after"] = distinct2_after;
  return j.dump();
}

LoopResult RunRounds(Dataset dataset, ParaphraseGateway &gateway, RoundTripChecker *checker,
                     const LoopOptions &options, const RoundCallback &on_round) {
  if (options.rounds < 0) throw ValidationError("rounds must not be negative");
  if (!options.skip_roundtrip && checker == nullptr)
    throw ValidationError("a round-trip checker is required unless round-trip is skipped");
  LoopResult result;
  std::set<std::string> keys;
  std::set<std::string> ids;
  for (const Example &e : dataset) {
    keys.insert(Key(e.utterance, e.lf));
    ids.insert(e.id);
  }
  std::vector<std::size_t> newest(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) newest[i] = i;

  for (int round = 1; round <= options.rounds; ++round) {
    RoundReport report;
    report.round = round;
    report.size_before = dataset.size();
    if (!dataset.empty()) {
      report.distinct1_before = DistinctN(dataset, 1);
      report.distinct2_before = DistinctN(dataset, 2);
    }
    std::vector<std::size_t> inputs;
    if (options.newest_only) {
      inputs = newest;
    } else {
      for (std::size_t i = 0; i < dataset.size(); ++i) inputs.push_back(i);
    }
    report.inputs = inputs.size();

    std::vector<std::string> texts;
    for (std::size_t i : inputs) texts.push_back(dataset[i].utterance);
    GatewayResult gw = gateway.ParaphraseBatch(texts);
    if (!gw.ok())
      throw BackendError("paraphrase round " + std::to_string(round) + " failed: " +
                         gw.failures.front().message);

    // (input position, candidate index, text) that pass the string filter.
    struct Pending {
      std::size_t input;
      std::size_t index;
      std::string text;
    };
    std::vector<Pending> pending;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const Example &parent = dataset[inputs[k]];
      for (std::size_t c = 0; c < gw.candidates[k].size(); ++c) {
        ++report.generated;
        const std::string &text = gw.candidates[k][c].text;
        if (!StringMatchFilter(text, parent.lf)) {
          ++report.rejected_string_match;
          continue;
        }
        pending.push_back({k, c, text});
      }
    }
    std::vector<bool> accepted(pending.size(), true);
    if (!options.skip_roundtrip && !pending.empty()) {
      std::vector<std::string> utts;
      std::vector<const Query *> lfs;
      for (const Pending &p : pending) {
        utts.push_back(p.text);
        lfs.push_back(&dataset[inputs[p.input]].lf);
      }
      accepted = checker->Check(utts, lfs);
    }

    std::vector<std::size_t> added;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (!accepted[i]) {
        ++report.rejected_parse;
        continue;
      }
      ++report.accepted;
      const Example &parent = dataset[inputs[pending[i].input]];
      const std::string key = Key(pending[i].text, parent.lf);
      if (!keys.insert(key).second) continue;
      char suffix[32];
      std::snprintf(suffix, sizeof suffix, "-r%d-%02zu", round, pending[i].index + 1);
      Example e;
      e.id = parent.id + suffix;
      e.utterance = pending[i].text;
      e.lf = parent.lf;
      e.round = round;
      if (!ids.insert(e.id).second) continue;
      dataset.push_back(std::move(e));
      added.push_back(dataset.size() - 1);
    }
    report.added = added.size();
    report.size_after = dataset.size();
    if (!dataset.empty()) {
      report.distinct1_after = DistinctN(dataset, 1);
      report.distinct2_after = DistinctN(dataset, 2);
    }
    newest = std::move(added);
    result.reports.push_back(report);
    if (on_round) on_round(report, dataset);
  }
  std::sort(dataset.begin(), dataset.end(),
            [](const Example &a, const Example &b) { return a.id < b.id; });
  result.dataset = std::move(dataset);
  return result;
}

}  // namespace qasynth
