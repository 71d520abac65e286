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

#ifndef QASYNTH_DATASET_H_
#define QASYNTH_DATASET_H_

// (utterance, logical form) examples, the tab-separated dataset file, and
// corpus statistics. One record per line, no header:
//   id \t utterance \t canonical LF \t provenance \t round
// Provenance is "synthesized" (round 0) or "paraphrase-round-<k>" (k >= 1).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qasynth/logic_form.h"
#include "qasynth/schema.h"

namespace qasynth {

struct Example {
  std::string id;
  std::string utterance;  // tokenized, space-joined
  Query lf = Query::Table("");
  int round = 0;

  std::string provenance() const;
  int atoms() const { return CountAtoms(lf); }
};

using Dataset = std::vector<Example>;

std::string ProvenanceName(int round);
std::optional<int> RoundFromProvenance(std::string_view provenance);

// Serializes sorted by id. Throws ValidationError for duplicate ids or
// utterances containing tabs or newlines.
std::string WriteDatasetText(const Dataset &dataset);
// Errors carry the 1-based line number.
Dataset ReadDatasetText(std::string_view text, const Schema *schema = nullptr);
void WriteDataset(const std::string &path, const Dataset &dataset);
Dataset ReadDataset(const std::string &path, const Schema *schema = nullptr);

// |distinct n-grams| / |n-grams| over all utterances (whitespace tokens).
// Throws ValidationError on an empty corpus or n < 1; returns 0 when no
// utterance is long enough.
double DistinctN(const std::vector<std::string> &utterances, int n);
double DistinctN(const Dataset &dataset, int n);

struct DatasetStats {
  std::size_t size = 0;
  std::map<std::string, std::size_t> per_provenance;
  double distinct1 = 0;
  double distinct2 = 0;
  std::map<int, std::size_t> atoms_histogram;

  std::string ToJson() const;
};

// Throws ValidationError on an empty dataset.
DatasetStats ComputeStats(const Dataset &dataset);

}  // namespace qasynth

#endif  // QASYNTH_DATASET_H_
