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

#include "qasynth/synthesizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "qasynth/chart_parser.h"
#include "qasynth/text.h"

namespace qasynth {

DerivationCounter::DerivationCounter(const Grammar &grammar, int max_atoms, int max_height)
    : g_(grammar), max_atoms_(max_atoms), max_height_(max_height) {
  memo_.assign(grammar.symbols().size() * static_cast<std::size_t>(max_atoms + 1) *
                   static_cast<std::size_t>(max_height + 1),
               -1.0);
  for (const Production &p : grammar.productions()) {
    std::vector<int> kids;
    for (const GrammarElem &e : p.rhs)
      if (!e.terminal) kids.push_back(e.symbol);
    children_.push_back(std::move(kids));
  }
}

double DerivationCounter::Count(int symbol, int atoms, int height) {
  if (height <= 0 || atoms < 0 || atoms > max_atoms_ || height > max_height_) return 0;
  const std::size_t idx =
      (static_cast<std::size_t>(symbol) * static_cast<std::size_t>(max_atoms_ + 1) +
       static_cast<std::size_t>(atoms)) *
          static_cast<std::size_t>(max_height_ + 1) +
      static_cast<std::size_t>(height);
  if (memo_[idx] >= 0) return memo_[idx];
  double total = 0;
  for (int p : g_.symbols()[static_cast<std::size_t>(symbol)].productions)
    total += CountProduction(p, atoms, height);
  memo_[idx] = total;
  return total;
}

double DerivationCounter::CountProduction(int production, int atoms, int height) {
  const Production &p = g_.productions()[static_cast<std::size_t>(production)];
  const int rest = atoms - p.atoms;
  if (rest < 0 || height <= 0) return 0;
  return CountChildren(production, 0, rest, height - 1);
}

double DerivationCounter::CountChildren(int production, std::size_t from, int atoms, int height) {
  const auto &kids = children_[static_cast<std::size_t>(production)];
  if (from == kids.size()) return atoms == 0 ? 1 : 0;
  double total = 0;
  for (int x = 0; x <= atoms; ++x) {
    const double here = Count(kids[from], x, height);
    if (here == 0) continue;
    total += here * CountChildren(production, from + 1, atoms - x, height);
  }
  return total;
}

namespace {

std::vector<int> Children(const Production &p) {
  std::vector<int> kids;
  for (const GrammarElem &e : p.rhs)
    if (!e.terminal) kids.push_back(e.symbol);
  return kids;
}

std::optional<Derivation> Build(const Grammar &g, const Production &p,
                                const std::vector<Derivation> &kids) {
  Derivation d;
  std::vector<const SemValue *> values;
  std::size_t next = 0;
  for (const GrammarElem &e : p.rhs) {
    if (e.terminal) {
      d.tokens.push_back(e.word);
    } else {
      const Derivation &k = kids[next++];
      d.tokens.insert(d.tokens.end(), k.tokens.begin(), k.tokens.end());
      values.push_back(&k.value);
    }
  }
  auto v = g.Apply(p, values);
  if (!v) return std::nullopt;
  d.value = std::move(*v);
  return d;
}

std::size_t Pick(const std::vector<double> &weights, Rng &rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = rng.Unit() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding can leave u marginally above the last bucket.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0) return i;
  return 0;
}

class Sampler {
 public:
  Sampler(const Grammar &g, DerivationCounter &c) : g_(g), c_(c) {}

  std::optional<Derivation> Symbol(int sym, int atoms, int height, Rng &rng) {
    const auto &prods = g_.symbols()[static_cast<std::size_t>(sym)].productions;
    std::vector<double> w;
    for (int p : prods) w.push_back(c_.CountProduction(p, atoms, height));
    if (std::accumulate(w.begin(), w.end(), 0.0) == 0) return std::nullopt;
    return Production(prods[Pick(w, rng)], atoms, height, rng);
  }

  std::optional<Derivation> Production(int pid, int atoms, int height, Rng &rng) {
    const auto &p = g_.productions()[static_cast<std::size_t>(pid)];
    const std::vector<int> kids = Children(p);
    int rest = atoms - p.atoms;
    std::vector<Derivation> derived;
    for (std::size_t c = 0; c < kids.size(); ++c) {
      std::vector<double> w;
      for (int x = 0; x <= rest; ++x)
        w.push_back(c_.Count(kids[c], x, height - 1) *
                    c_.CountChildren(pid, c + 1, rest - x, height - 1));
      if (std::accumulate(w.begin(), w.end(), 0.0) == 0) return std::nullopt;
      const int x = static_cast<int>(Pick(w, rng));
      auto d = Symbol(kids[c], x, height - 1, rng);
      if (!d) return std::nullopt;
      derived.push_back(std::move(*d));
      rest -= x;
    }
    return Build(g_, p, derived);
  }

 private:
  const Grammar &g_;
  DerivationCounter &c_;
};

std::vector<Derivation> EnumerateSymbol(const Grammar &g, DerivationCounter &c, int sym,
                                        int atoms, int height) {
  std::vector<Derivation> out;
  for (int p : g.symbols()[static_cast<std::size_t>(sym)].productions) {
    auto part = EnumerateProduction(g, c, p, atoms, height);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

void EnumerateSplits(const Grammar &g, DerivationCounter &c, int pid,
                     const std::vector<int> &kids, std::size_t from, int rest, int height,
                     std::vector<std::vector<Derivation>> &choices, std::vector<Derivation> &out) {
  const Production &p = g.productions()[static_cast<std::size_t>(pid)];
  if (from == kids.size()) {
    if (rest != 0) return;
    // Cartesian product over the per-child lists.
    std::vector<std::size_t> idx(kids.size(), 0);
    if (std::any_of(choices.begin(), choices.end(), [](const auto &v) { return v.empty(); })) return;
    for (;;) {
      std::vector<Derivation> picked;
      for (std::size_t k = 0; k < kids.size(); ++k) picked.push_back(choices[k][idx[k]]);
      if (auto d = Build(g, p, picked)) out.push_back(std::move(*d));
      std::size_t k = kids.size();
      while (k > 0) {
        --k;
        if (++idx[k] < choices[k].size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (kids.empty()) return;
    }
  }
  for (int x = 0; x <= rest; ++x) {
    if (c.Count(kids[from], x, height - 1) == 0) continue;
    if (c.CountChildren(pid, from + 1, rest - x, height - 1) == 0) continue;
    choices.push_back(EnumerateSymbol(g, c, kids[from], x, height - 1));
    EnumerateSplits(g, c, pid, kids, from + 1, rest - x, height, choices, out);
    choices.pop_back();
  }
}

bool RepeatsAttribute(const Query &q) {
  if (q.kind() == QueryKind::kTable) return false;
  if (q.kind() == QueryKind::kFilter) {
    std::set<std::string> paths;
    for (const Atom &a : q.pred().Atoms())
      if (!paths.insert(a.path).second) return true;
  }
  return RepeatsAttribute(q.inner());
}

}  // namespace

std::vector<Derivation> EnumerateProduction(const Grammar &grammar, DerivationCounter &counter,
                                            int production, int atoms, int height) {
  std::vector<Derivation> out;
  const Production &p = grammar.productions()[static_cast<std::size_t>(production)];
  const int rest = atoms - p.atoms;
  if (rest < 0 || height <= 0) return out;
  std::vector<std::vector<Derivation>> choices;
  EnumerateSplits(grammar, counter, production, Children(p), 0, rest, height, choices, out);
  return out;
}

SynthesisResult Synthesize(const Grammar &grammar, const SynthesisOptions &options) {
  if (options.target_size < 1) throw ValidationError("target_size must be at least 1");
  if (options.max_atoms < 1) throw ValidationError("max_atoms must be at least 1");
  if (!grammar.unannotated().empty()) {
    std::vector<Diagnostic> problems;
    for (const AttributeRef &r : grammar.unannotated())
      problems.push_back({Severity::kError, r.ToString(), "attribute has no annotations"});
    throw ValidationError("cannot synthesize: " + std::to_string(problems.size()) +
                              " attribute(s) have no annotations",
                          problems);
  }
  SynthesisResult result;
  const int height = grammar.max_depth();
  DerivationCounter counter(grammar, options.max_atoms, height);
  Sampler sampler(grammar, counter);

  const auto &strata = grammar.strata();
  // A stratum cannot use more atoms than its table has attributes without
  // repeating one, and such derivations are discarded below.
  std::vector<int> atom_cap(strata.size(), options.max_atoms);
  for (std::size_t s = 0; s < strata.size(); ++s)
    if (const Table *t = grammar.schema().FindTable(strata[s].table))
      atom_cap[s] = std::min(options.max_atoms, static_cast<int>(t->attributes.size()));
  std::vector<double> sizes(strata.size(), 0);
  for (std::size_t s = 0; s < strata.size(); ++s)
    for (int p : strata[s].productions)
      for (int k = 0; k <= atom_cap[s]; ++k) sizes[s] += counter.CountProduction(p, k, height);
  result.derivation_space = std::accumulate(sizes.begin(), sizes.end(), 0.0);

  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < strata.size(); ++s)
    if (sizes[s] > 0) order.push_back(s);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });

  struct Pending {
    std::string utterance;
    std::string key;
    Query lf;
  };
  std::vector<Pending> collected;
  std::unordered_set<std::string> seen;
  auto offer = [&](const Derivation &d) {
    if (d.value.kind != SemValue::Kind::kQuery || RepeatsAttribute(*d.value.query)) return false;
    std::string utterance = Join(d.tokens, " ");
    if (!seen.insert(utterance + '\x1f' + d.value.key).second) return false;
    collected.push_back({std::move(utterance), d.value.key, *d.value.query});
    return true;
  };

  std::size_t remaining = options.target_size;
  std::size_t strata_left = order.size();
  bool all_enumerated = true;
  for (std::size_t s : order) {
    const std::size_t quota = (remaining + strata_left - 1) / strata_left;
    --strata_left;
    if (quota == 0) continue;
    std::size_t got = 0;
    if (sizes[s] <= static_cast<double>(quota)) {
      for (int p : strata[s].productions)
        for (int k = 0; k <= atom_cap[s]; ++k)
          for (const Derivation &d : EnumerateProduction(grammar, counter, p, k, height))
            if (got < quota && offer(d)) ++got;
    } else {
      all_enumerated = false;
      Rng rng(StableHash(strata[s].rule_id + '\x1f' + strata[s].table, options.seed));
      std::vector<std::pair<int, int>> cells;
      std::vector<double> weights;
      for (int p : strata[s].productions)
        for (int k = 0; k <= atom_cap[s]; ++k) {
          cells.emplace_back(p, k);
          weights.push_back(counter.CountProduction(p, k, height));
        }
      const std::size_t max_attempts = 50 * quota + 100;
      for (std::size_t attempt = 0; got < quota && attempt < max_attempts; ++attempt) {
        const auto [p, k] = cells[Pick(weights, rng)];
        if (auto d = sampler.Production(p, k, height, rng); d && offer(*d)) ++got;
      }
      if (got < quota)
        result.diagnostics.push_back(
            {Severity::kWarning, "stratum " + strata[s].rule_id + "/" + strata[s].table,
             "sampled " + std::to_string(got) + " distinct examples of quota " + std::to_string(quota)});
    }
    remaining -= std::min(remaining, got);
  }

  std::sort(collected.begin(), collected.end(), [](const Pending &a, const Pending &b) {
    return std::tie(a.utterance, a.key) < std::tie(b.utterance, b.key);
  });
  for (std::size_t i = 0; i < collected.size(); ++i) {
    Example e;
    std::string num = std::to_string(i + 1);
    e.id = "s" + std::string(num.size() < 6 ? 6 - num.size() : 0, '0') + num;
    e.utterance = std::move(collected[i].utterance);
    e.lf = std::move(collected[i].lf);
    result.examples.push_back(std::move(e));
  }
  if (result.examples.size() < options.target_size && all_enumerated) {
    result.exhausted = true;
    result.diagnostics.push_back(
        {Severity::kWarning, "synthesis",
         "derivation space (" + FormatNumber(result.derivation_space) + " derivations, " +
             std::to_string(result.examples.size()) + " distinct examples) is smaller than target " +
             std::to_string(options.target_size) + "; returning all of it"});
  }

  if (options.check_parses) {
    ChartParser parser(grammar);
    for (const Example &e : result.examples) {
      const std::vector<Query> parses = parser.Parse(e.utterance);
      const std::string key = SerializeLf(e.lf);
      const bool found = std::any_of(parses.begin(), parses.end(),
                                     [&](const Query &q) { return SerializeLf(q) == key; });
      if (!found)
        result.diagnostics.push_back(
            {Severity::kError, e.id, "utterance does not parse to its own logical form: " + e.utterance});
      if (parses.size() > 1) {
        ++result.ambiguous;
        result.diagnostics.push_back({Severity::kWarning, e.id,
                                      "ambiguous: " + std::to_string(parses.size()) +
                                          " parses for '" + e.utterance + "'"});
      }
    }
  }
  return result;
}

SynthesisResult Synthesize(const Schema &schema, const std::vector<Annotation> &annotations,
                           const TemplateLibrary &library, const SynthesisOptions &options) {
  return Synthesize(Grammar::Compile(schema, annotations, library), options);
}

}  // namespace qasynth
