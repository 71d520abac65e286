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

#include "qasynth/placeholders.h"

#include <algorithm>
#include <map>

#include "qasynth/errors.h"
#include "qasynth/lexicon.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

const std::map<std::string, std::vector<std::string>, std::less<>> &Pools() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kPools = {
      {"TIME", {"2pm", "3pm", "4pm", "5pm", "6pm", "7pm", "8pm", "9pm", "9am", "10am", "11am", "noon"}},
      {"NUMBER", {"37", "43", "59", "61", "73", "89", "97", "113", "127", "139", "151", "163"}},
      {"DATE", {"june 3", "may 17", "march 9", "august 21", "october 30", "january 14",
                "april 26", "july 8", "september 19", "november 2", "december 11", "february 5"}},
  };
  return kPools;
}

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

// Non-overlapping occurrences of `needle` in `hay`, left to right.
std::vector<std::size_t> Find(const std::vector<std::string> &hay,
                              const std::vector<std::string> &needle) {
  std::vector<std::size_t> out;
  if (needle.empty()) return out;
  for (std::size_t i = 0; i + needle.size() <= hay.size();) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<long>(i))) {
      out.push_back(i);
      i += needle.size();
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string> &PlaceholderFamilies() {
  static const std::vector<std::string> kFamilies = [] {
    std::vector<std::string> out;
    for (const auto &[k, v] : Pools()) out.push_back(k);
    return out;
  }();
  return kFamilies;
}

const std::vector<std::string> &SurrogatePool(std::string_view family) {
  auto it = Pools().find(family);
  if (it == Pools().end())
    throw ValidationError("unknown placeholder family '" + std::string(family) + "'");
  return it->second;
}

Preprocessed PreprocessPlaceholders(std::string_view utterance) {
  std::vector<std::string> words = Words(utterance);
  Preprocessed out;
  std::map<std::string, std::size_t> index;  // placeholder -> entry
  for (const std::string &w : words) {
    if (!IsPlaceholder(w)) continue;
    auto it = index.find(w);
    if (it != index.end()) {
      ++out.binding.entries[it->second].occurrences;
      continue;
    }
    const std::string family = w.substr(0, w.rfind('_'));
    const auto &pool = SurrogatePool(family);
    std::string chosen;
    for (const std::string &candidate : pool) {
      const auto cw = Words(candidate);
      bool used = std::any_of(out.binding.entries.begin(), out.binding.entries.end(),
                              [&](const auto &e) { return e.surrogate == candidate; });
      if (!used && Find(words, cw).empty()) {
        chosen = candidate;
        break;
      }
    }
    if (chosen.empty())
      throw ValidationError("surrogate pool for " + family + " exhausted in '" +
                            std::string(utterance) + "'");
    index[w] = out.binding.entries.size();
    out.binding.entries.push_back({w, chosen, 1});
  }
  std::vector<std::string> replaced;
  for (const std::string &w : words) {
    auto it = index.find(w);
    if (it == index.end()) {
      replaced.push_back(w);
    } else {
      for (std::string &s : Words(out.binding.entries[it->second].surrogate)) replaced.push_back(s);
    }
  }
  out.text = Join(replaced, " ");
  return out;
}

std::optional<std::string> PostprocessPlaceholders(std::string_view candidate,
                                                   const PlaceholderBinding &binding) {
  std::vector<std::string> words = Words(candidate);
  // Position -> (length, placeholder) for every surrogate occurrence.
  std::map<std::size_t, std::pair<std::size_t, const std::string *>> spans;
  for (const auto &e : binding.entries) {
    const auto sw = Words(e.surrogate);
    const auto hits = Find(words, sw);
    if (static_cast<int>(hits.size()) != e.occurrences) return std::nullopt;
    for (std::size_t h : hits) spans[h] = {sw.size(), &e.placeholder};
  }
  // A candidate already containing raw placeholder tokens cannot be trusted.
  for (const std::string &w : words)
    if (IsPlaceholder(w)) return std::nullopt;
  std::vector<std::string> out;
  std::size_t covered_until = 0;
  for (std::size_t i = 0; i < words.size();) {
    auto it = spans.find(i);
    if (it != spans.end() && i >= covered_until) {
      out.push_back(*it->second.second);
      i += it->second.first;
      covered_until = i;
    } else {
      out.push_back(words[i]);
      ++i;
    }
  }
  return Join(out, " ");
}

}  // namespace qasynth
