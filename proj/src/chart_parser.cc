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

#include "qasynth/chart_parser.h"

#include <unordered_map>
#include <unordered_set>

#include "qasynth/lexicon.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

constexpr std::size_t kUnbounded = Grammar::kUnbounded;

std::size_t AddLen(std::size_t a, std::size_t b) {
  return a == kUnbounded || b == kUnbounded ? kUnbounded : a + b;
}

struct Cell {
  bool done = false;
  std::vector<SemValue> values;
};

class Chart {
 public:
  Chart(const Grammar &g, const std::vector<std::vector<std::size_t>> &smin,
        const std::vector<std::vector<std::size_t>> &smax,
        const std::vector<std::string> &tokens)
      : g_(g), smin_(smin), smax_(smax), toks_(tokens), n_(tokens.size()) {}

  const std::vector<SemValue> &Get(int sym, std::size_t i, std::size_t j) {
    const std::size_t key = (static_cast<std::size_t>(sym) * (n_ + 1) + i) * (n_ + 1) + j;
    auto [it, inserted] = cells_.try_emplace(key);
    Cell &cell = it->second;
    if (!inserted) return cell.done ? cell.values : kEmpty;  // kEmpty breaks unit cycles
    Fill(sym, i, j, cell.values);
    cell.done = true;
    return cell.values;
  }

 private:
  void Fill(int sym, std::size_t i, std::size_t j, std::vector<SemValue> &out) {
    const GrammarSymbol &s = g_.symbols()[static_cast<std::size_t>(sym)];
    const std::size_t len = j - i;
    if (len < s.min_len || (s.max_len != kUnbounded && len > s.max_len)) return;
    std::unordered_set<std::string> seen;
    auto add = [&](SemValue v) {
      if (seen.insert(v.key).second) out.push_back(std::move(v));
    };
    if (len == 1) {
      const std::string &tok = toks_[i];
      if (!s.placeholder_family.empty() && IsPlaceholder(tok) &&
          tok.compare(0, tok.rfind('_'), s.placeholder_family) == 0 &&
          tok.rfind('_') == s.placeholder_family.size())
        add(LiteralSem(Literal::Placeholder(tok)));
      if (s.any_number) {
        if (auto v = ParseNumber(tok)) add(LiteralSem(Literal::Number(*v)));
      }
    }
    for (int pid : s.productions) {
      const Production &p = g_.productions()[static_cast<std::size_t>(pid)];
      std::vector<const SemValue *> kids;
      Match(p, static_cast<std::size_t>(pid), 0, i, j, kids, add);
    }
  }

  template <typename F>
  void Match(const Production &p, std::size_t pid, std::size_t m, std::size_t i, std::size_t j,
             std::vector<const SemValue *> &kids, F &add) {
    if (m == p.rhs.size()) {
      if (i != j) return;
      if (auto v = g_.Apply(p, kids)) add(std::move(*v));
      return;
    }
    const std::size_t rest_min = smin_[pid][m + 1], rest_max = smax_[pid][m + 1];
    if (j - i < smin_[pid][m] || (smax_[pid][m] != kUnbounded && j - i > smax_[pid][m])) return;
    const GrammarElem &e = p.rhs[m];
    if (e.terminal) {
      if (i < j && toks_[i] == e.word) Match(p, pid, m + 1, i + 1, j, kids, add);
      return;
    }
    const GrammarSymbol &child = g_.symbols()[static_cast<std::size_t>(e.symbol)];
    const std::size_t lo = i + std::max<std::size_t>(1, child.min_len);
    std::size_t hi = j - rest_min;
    if (child.max_len != kUnbounded) hi = std::min(hi, i + child.max_len);
    for (std::size_t k = lo; k <= hi && k <= j; ++k) {
      if (rest_max != kUnbounded && j - k > rest_max) continue;
      const std::vector<SemValue> &vals = Get(e.symbol, i, k);
      for (std::size_t v = 0; v < vals.size(); ++v) {
        kids.push_back(&vals[v]);
        Match(p, pid, m + 1, k, j, kids, add);
        kids.pop_back();
      }
    }
  }

  const Grammar &g_;
  const std::vector<std::vector<std::size_t>> &smin_, &smax_;
  const std::vector<std::string> &toks_;
  std::size_t n_;
  std::unordered_map<std::size_t, Cell> cells_;
  static inline const std::vector<SemValue> kEmpty;
};

}  // namespace

ChartParser::ChartParser(const Grammar &grammar) : grammar_(grammar) {
  for (const Production &p : grammar.productions()) {
    std::vector<std::size_t> mins(p.rhs.size() + 1, 0), maxs(p.rhs.size() + 1, 0);
    for (std::size_t m = p.rhs.size(); m-- > 0;) {
      const GrammarElem &e = p.rhs[m];
      std::size_t lo = 1, hi = 1;
      if (!e.terminal) {
        const GrammarSymbol &s = grammar.symbols()[static_cast<std::size_t>(e.symbol)];
        lo = std::max<std::size_t>(1, s.min_len);
        hi = s.max_len;
      }
      mins[m] = AddLen(mins[m + 1], lo);
      maxs[m] = AddLen(maxs[m + 1], hi);
    }
    suffix_min_.push_back(std::move(mins));
    suffix_max_.push_back(std::move(maxs));
  }
}

std::vector<Query> ChartParser::Parse(const std::vector<std::string> &tokens) const {
  if (tokens.empty()) return {};
  Chart chart(grammar_, suffix_min_, suffix_max_, tokens);
  std::vector<Query> out;
  for (const SemValue &v : chart.Get(grammar_.root(), 0, tokens.size()))
    if (v.kind == SemValue::Kind::kQuery) out.push_back(*v.query);
  std::sort(out.begin(), out.end(), [](const Query &a, const Query &b) {
    return SerializeLf(a) < SerializeLf(b);
  });
  return out;
}

std::vector<Query> ChartParser::Parse(std::string_view utterance) const {
  std::vector<std::string> tokens;
  for (Token &t : Tokenize(utterance)) tokens.push_back(std::move(t.surface));
  return Parse(tokens);
}

bool ChartParser::Accepts(std::string_view utterance, const Query &lf) const {
  const std::string target = SerializeLf(lf);
  for (const Query &q : Parse(utterance))
    if (SerializeLf(q) == target) return true;
  return false;
}

}  // namespace qasynth
