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

#include <algorithm>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "qasynth/errors.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

constexpr std::string_view kSynthesized = "synthesized";
constexpr std::string_view kRoundPrefix = "paraphrase-round-";

}  // namespace

std::string ProvenanceName(int round) {
  return round == 0 ? std::string(kSynthesized) : std::string(kRoundPrefix) + std::to_string(round);
}

std::optional<int> RoundFromProvenance(std::string_view p) {
  if (p == kSynthesized) return 0;
  if (p.substr(0, kRoundPrefix.size()) != kRoundPrefix) return std::nullopt;
  std::string_view digits = p.substr(kRoundPrefix.size());
  if (digits.empty() || digits.size() > 6 || digits[0] == '0' ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  return std::stoi(std::string(digits));
}

std::string Example::provenance() const { return ProvenanceName(round); }

std::string WriteDatasetText(const Dataset &dataset) {
  std::vector<const Example *> sorted;
  for (const Example &e : dataset) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const Example *a, const Example *b) { return a->id < b->id; });
  std::string out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Example &e = *sorted[i];
    if (i > 0 && sorted[i - 1]->id == e.id)
      throw ValidationError("duplicate example id '" + e.id + "'");
    auto clean = [](std::string_view s) { return s.find_first_of("\t\n\r") == std::string_view::npos; };
    if (e.id.empty() || !clean(e.id)) throw ValidationError("invalid example id '" + e.id + "'");
    if (e.utterance.empty() || !clean(e.utterance))
      throw ValidationError("example " + e.id + ": utterance is empty or contains a tab or newline");
    if (e.round < 0) throw ValidationError("example " + e.id + ": negative round");
    out += e.id;
    out += '\t';
    out += e.utterance;
    out += '\t';
    out += SerializeLf(e.lf);
    out += '\t';
    out += e.provenance();
    out += '\t';
    out += std::to_string(e.round);
    out += '\n';
  }
  return out;
}

Dataset ReadDatasetText(std::string_view text, const Schema *schema) {
  Dataset out;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    auto fail = [&](const std::string &m) -> void {
      throw ValidationError(where + ": " + m, {{Severity::kError, where, m}});
    };
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != 5) fail("expected 5 tab-separated fields, got " + std::to_string(fields.size()));
    Example e;
    e.id = fields[0];
    e.utterance = fields[1];
    if (e.id.empty()) fail("empty id");
    if (!ids.insert(e.id).second) fail("duplicate id '" + e.id + "'");
    if (Trim(e.utterance).empty()) fail("empty utterance");
    try {
      e.lf = ParseLf(fields[2], schema);
    } catch (const ValidationError &err) {
      fail(std::string("unparseable logical form: ") + err.what());
    }
    auto round = RoundFromProvenance(fields[3]);
    if (!round) fail("unknown provenance '" + fields[3] + "'");
    auto parsed = ParseNumber(fields[4]);
    if (!parsed || *parsed != static_cast<int>(*parsed) || static_cast<int>(*parsed) != *round)
      fail("round '" + fields[4] + "' does not match provenance '" + fields[3] + "'");
    e.round = *round;
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Example &a, const Example &b) { return a.id < b.id; });
  return out;
}

void WriteDataset(const std::string &path, const Dataset &dataset) {
  WriteFile(path, WriteDatasetText(dataset));
}

Dataset ReadDataset(const std::string &path, const Schema *schema) {
  return ReadDatasetText(ReadFile(path), schema);
}

double DistinctN(const std::vector<std::string> &utterances, int n) {
  if (utterances.empty()) throw ValidationError("distinct-n of an empty corpus");
  if (n < 1) throw ValidationError("distinct-n needs n >= 1");
  std::unordered_set<std::string> distinct;
  std::size_t total = 0;
  for (const std::string &u : utterances) {
    std::vector<std::string> words = SplitWhitespace(u);
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + un <= words.size(); ++i) {
      std::string gram = words[i];
      for (std::size_t k = 1; k < un; ++k) {
        gram += '\x1f';
        gram += words[i + k];
      }
      distinct.insert(std::move(gram));
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(distinct.size()) / static_cast<double>(total);
}

double DistinctN(const Dataset &dataset, int n) {
  std::vector<std::string> utterances;
  utterances.reserve(dataset.size());
  for (const Example &e : dataset) utterances.push_back(e.utterance);
  return DistinctN(utterances, n);
}

DatasetStats ComputeStats(const Dataset &dataset) {
  if (dataset.empty()) throw ValidationError("stats of an empty dataset");
  DatasetStats s;
  s.size = dataset.size();
  for (const Example &e : dataset) {
    ++s.per_provenance[e.provenance()];
    ++s.atoms_histogram[e.atoms()];
  }
  s.distinct1 = DistinctN(dataset, 1);
  s.distinct2 = DistinctN(dataset, 2);
  return s;
}

std::string DatasetStats::ToJson() const {
  nlohmann::ordered_json j;
  j["size"] = size;
  j["per_provenance"] = nlohmann::ordered_json::object();
  for (const auto &[k, v] : per_provenance) j["per_provenance"][k] = v;
  j["distinct_1"] = distinct1;
  j["distinct_2"] = distinct2;
  j["atoms_histogram"] = nlohmann::ordered_json::object();
  for (const auto &[k, v] : atoms_histogram) j["atoms_histogram"][std::to_string(k)] = v;
  return j.dump(2);
}

}  // namespace qasynth
