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

#ifndef QASYNTH_PLACEHOLDERS_H_
#define QASYNTH_PLACEHOLDERS_H_

// Placeholder tokens (TIME_0, NUMBER_1, DATE_2) are swapped for natural
// surrogates before paraphrasing ("open after TIME_0" -> "open after 2pm")
// and restored afterwards. Both directions work on tokenized text, so
// inversion is exact for tokenized, lowercase input.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qasynth {

struct PlaceholderBinding {
  struct Entry {
    std::string placeholder;  // "TIME_0"
    std::string surrogate;    // "2pm" (tokenized, may span several tokens)
    int occurrences = 1;      // how often the placeholder appeared
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
};

struct Preprocessed {
  std::string text;
  PlaceholderBinding binding;
};

// Families with surrogate pools.
const std::vector<std::string> &PlaceholderFamilies();
// Throws ValidationError for an unknown family.
const std::vector<std::string> &SurrogatePool(std::string_view family);

// Throws ValidationError naming an unknown placeholder family or an
// exhausted pool.
Preprocessed PreprocessPlaceholders(std::string_view utterance);

// nullopt when a surrogate is missing or appears a different number of
// times than its placeholder did.
std::optional<std::string> PostprocessPlaceholders(std::string_view candidate,
                                                   const PlaceholderBinding &binding);

}  // namespace qasynth

#endif  // QASYNTH_PLACEHOLDERS_H_
