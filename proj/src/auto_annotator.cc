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

#include "qasynth/auto_annotator.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <tuple>

#include "qasynth/canonicalizer.h"
#include "qasynth/compiled_grammar.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

bool IsFilterRule(const TemplateRule &r) {
  return r.category == RuleCategory::kSet && r.semantics == Semantics::kFilter &&
         r.annotation_slot().has_value();
}

// Command prefixes stripped from candidates before matching, longest first.
const std::vector<std::vector<std::string>> &CommandPrefixes() {
  static const std::vector<std::vector<std::string>> kPrefixes = [] {
    std::vector<std::vector<std::string>> out;
    for (const char *p : {"can you show me", "could you show me", "please show me",
                          "i am looking for", "i'm looking for", "please find", "show me",
                          "give me", "find me", "get me", "tell me", "search for",
                          "looking for", "i want", "i need", "what are", "which are", "show",
                          "list", "find", "search"})
      out.push_back(Words(p));
    std::stable_sort(out.begin(), out.end(),
                     [](const auto &a, const auto &b) { return a.size() > b.size(); });
    return out;
  }();
  return kPrefixes;
}

bool StartsWith(const std::vector<Token> &tokens, std::size_t at,
                const std::vector<std::string> &words) {
  if (at + words.size() > tokens.size()) return false;
  for (std::size_t i = 0; i < words.size(); ++i)
    if (tokens[at + i].is_value_anchor || tokens[at + i].surface != words[i]) return false;
  return true;
}

bool IsPunct(const Token &t) {
  return !t.is_value_anchor && t.surface.size() == 1 &&
         !std::isalnum(static_cast<unsigned char>(t.surface[0]));
}

// Word sequences that turn a plain value into a comparison ("more than").
std::vector<std::vector<std::string>> ComparativeCues(const TemplateLibrary &library) {
  std::set<std::vector<std::string>> cues;
  for (const TemplateRule &r : library.rules) {
    if (r.category != RuleCategory::kValue || r.semantics == Semantics::kValue) continue;
    for (const auto &seq : ExpandPattern(r.pattern)) {
      std::vector<std::string> before;
      for (const PatternItem &it : seq) {
        if (it.is_slot) break;
        before.push_back(it.word);
      }
      if (!before.empty()) cues.insert(before);
    }
  }
  return {cues.begin(), cues.end()};
}

struct Matcher {
  const std::vector<Token> &tokens;
  const std::vector<std::vector<std::string>> &table_spans;
  const std::vector<PatternItem> &items;
  std::size_t slot_begin = 0, slot_end = 0;

  bool Match(std::size_t item, std::size_t pos) {
    if (item == items.size()) return pos == tokens.size();
    const PatternItem &it = items[item];
    if (!it.is_slot) {
      if (!StartsWith(tokens, pos, {it.word})) return false;
      return Match(item + 1, pos + 1);
    }
    if (it.slot == SlotKind::kSet || it.slot == SlotKind::kTable) {
      for (const auto &span : table_spans)
        if (StartsWith(tokens, pos, span) && Match(item + 1, pos + span.size())) return true;
      return false;
    }
    if (it.slot != SlotKind::kAnnotation) return false;
    for (std::size_t end = pos + 1; end <= tokens.size(); ++end) {
      if (Match(item + 1, end)) {
        slot_begin = pos;
        slot_end = end;
        return true;
      }
    }
    return false;
  }
};

bool SatisfiesPos(PosCategory pos, const std::vector<Token> &span, const Lexicon &lexicon) {
  std::vector<const Token *> words;
  for (const Token &t : span)
    if (!t.is_value_anchor) words.push_back(&t);
  auto has_noun = [&] {
    return std::any_of(words.begin(), words.end(),
                       [](const Token *t) { return t->tag == PosTag::kNoun; });
  };
  switch (pos) {
    case PosCategory::kIsANoun:
    case PosCategory::kHasANoun:
      return has_noun();
    case PosCategory::kActiveVerb:
      return !span.front().is_value_anchor && span.front().tag == PosTag::kVerb &&
             !lexicon.IsCopula(span.front().surface) && span.front().surface != "has" &&
             span.front().surface != "have" && span.front().surface != "had";
    case PosCategory::kPassiveVerb:
      return !span.front().is_value_anchor && span.front().tag == PosTag::kPastPart;
    case PosCategory::kAdjective:
      return std::all_of(words.begin(), words.end(),
                         [](const Token *t) { return t->tag == PosTag::kAdj; });
    case PosCategory::kPrepositional:
      return !span.front().is_value_anchor && span.front().tag == PosTag::kPrep &&
             span.front().surface != "with" && span.front().surface != "than";
  }
  return false;
}

}  // namespace

std::vector<Probe> GenerateProbes(const Table &table, const Attribute &attribute,
                                  const Annotation &canonical, const TemplateLibrary &library,
                                  const AnnotatorOptions &options) {
  const std::string plural = Pluralize(DeriveTableCanonical(table).phrase);
  std::vector<Probe> probes;
  bool any_rule = false;
  const std::size_t n = std::min(options.max_values, attribute.example_values.size());
  for (const TemplateRule &r : library.rules) {
    if (!IsFilterRule(r) || *r.annotation_slot() != canonical.pos) continue;
    any_rule = true;
    for (const auto &seq : ExpandPattern(r.pattern)) {
      bool usable = true;
      for (const PatternItem &it : seq)
        if (it.is_slot && it.slot != SlotKind::kSet && it.slot != SlotKind::kTable &&
            it.slot != SlotKind::kAnnotation)
          usable = false;
      if (!usable) continue;
      for (std::size_t v = 0; v < n; ++v) {
        const Value &value = attribute.example_values[v];
        const std::string surface = ToLower(value.surface);
        std::vector<std::string> parts = {options.command};
        for (const PatternItem &it : seq) {
          if (!it.is_slot) {
            parts.push_back(it.word);
          } else if (it.slot == SlotKind::kAnnotation) {
            for (const std::string &w : canonical.Words())
              parts.push_back(w == kValueMarker ? surface : w);
          } else {
            parts.push_back(plural);
          }
        }
        Probe p;
        p.utterance = JoinTokens(Tokenize(Join(parts, " ")));
        p.attribute = {table.name, attribute.name};
        p.value = surface;
        p.rule_id = r.id;
        p.pos = canonical.pos;
        p.lf = Query::Filter(Query::Table(table.name),
                             Pred::MakeAtom({attribute.name, DefaultOp(attribute.type.kind),
                                             LiteralFromValue(value)}));
        probes.push_back(std::move(p));
      }
    }
  }
  if (!any_rule)
    throw ValidationError("no filter template takes a " + std::string(PosName(canonical.pos)) +
                          " phrase (needed by " + table.name + "." + attribute.name + ")");
  // Identical probes can arise from alternations that normalize the same.
  std::set<std::string> seen;
  std::vector<Probe> unique;
  for (Probe &p : probes)
    if (seen.insert(p.utterance).second) unique.push_back(std::move(p));
  return unique;
}

ParaphraseTree ExpandProbes(const std::vector<Probe> &probes, Paraphraser &backend,
                            const ParaphraseConfig &config, int rounds) {
  ParaphraseConfig single = config;
  single.rounds = 1;
  ParaphraseGateway gateway(backend, single);
  ParaphraseTree tree;
  std::vector<std::set<std::string>> seen(probes.size());
  std::vector<std::pair<std::size_t, std::string>> frontier;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    seen[i].insert(probes[i].utterance);
    frontier.push_back({i, probes[i].utterance});
  }
  for (int round = 1; round <= rounds && !frontier.empty(); ++round) {
    std::vector<std::string> texts;
    for (const auto &f : frontier) texts.push_back(f.second);
    GatewayResult r = gateway.ParaphraseBatch(texts);
    tree.failures.insert(tree.failures.end(), r.failures.begin(), r.failures.end());
    std::vector<std::pair<std::size_t, std::string>> next;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      const std::size_t probe = frontier[k].first;
      for (const ParaphraseCandidate &c : r.candidates[k]) {
        if (!seen[probe].insert(c.text).second) continue;
        tree.candidates.push_back({probe, c.text, round});
        next.push_back({probe, c.text});
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

std::vector<Extraction> ExtractFromCandidate(const std::string &candidate, const Probe &probe,
                                             const std::string &table_phrase,
                                             const TemplateLibrary &library,
                                             const Tagger &tagger,
                                             const AnnotatorOptions &options) {
  std::vector<Token> tokens = tagger.Tag(Tokenize(candidate, {probe.value}));
  const auto anchors = std::count_if(tokens.begin(), tokens.end(),
                                     [](const Token &t) { return t.is_value_anchor; });
  if (anchors != 1) return {};

  while (!tokens.empty() && IsPunct(tokens.back())) tokens.pop_back();
  std::size_t start = 0;
  if (StartsWith(tokens, start, {"please"})) ++start;
  for (const auto &prefix : CommandPrefixes()) {
    if (StartsWith(tokens, start, prefix)) {
      start += prefix.size();
      break;
    }
  }
  const Lexicon &lexicon = Lexicon::Default();
  if (StartsWith(tokens, start, {"all"})) ++start;
  if (start < tokens.size() && !tokens[start].is_value_anchor &&
      lexicon.IsDeterminer(tokens[start].surface))
    ++start;
  tokens.erase(tokens.begin(), tokens.begin() + static_cast<long>(start));
  if (tokens.empty()) return {};

  const std::vector<std::vector<std::string>> spans = {Words(Pluralize(table_phrase)),
                                                       Words(table_phrase)};
  const std::vector<std::vector<std::string>> cues = ComparativeCues(library);

  std::vector<Extraction> out;
  for (const TemplateRule &r : library.rules) {
    if (!IsFilterRule(r)) continue;
    const PosCategory pos = *r.annotation_slot();
    for (const auto &seq : ExpandPattern(r.pattern)) {
      Matcher m{tokens, spans, seq};
      if (!m.Match(0, 0)) continue;
      std::vector<Token> span(tokens.begin() + static_cast<long>(m.slot_begin),
                              tokens.begin() + static_cast<long>(m.slot_end));
      auto anchor = std::find_if(span.begin(), span.end(),
                                 [](const Token &t) { return t.is_value_anchor; });
      if (anchor == span.end()) continue;
      if (span.size() - 1 > options.max_phrase_words) continue;
      if (std::any_of(span.begin(), span.end(), [&](const Token &t) {
            return !t.is_value_anchor && (t.tag == PosTag::kPron || IsPunct(t));
          }))
        continue;
      if (!SatisfiesPos(pos, span, lexicon)) continue;
      const std::size_t at = static_cast<std::size_t>(anchor - span.begin());
      bool comparative = false;
      for (const auto &cue : cues) {
        if (cue.size() > at) continue;
        bool match = true;
        for (std::size_t i = 0; i < cue.size(); ++i)
          if (span[at - cue.size() + i].surface != cue[i]) match = false;
        comparative = comparative || match;
      }
      if (comparative) continue;
      std::vector<std::string> words;
      for (const Token &t : span)
        words.push_back(t.is_value_anchor ? std::string(kValueMarker) : t.surface);
      Extraction e{pos, Join(words, " "), r.id};
      if (std::none_of(out.begin(), out.end(), [&](const Extraction &o) {
            return o.pos == e.pos && o.phrase == e.phrase;
          }))
        out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<Annotation> ResolveConflicts(std::vector<Annotation> annotations,
                                         const Schema &schema,
                                         std::vector<ConflictReport> *reports) {
  auto type_of = [&](const Annotation &a) -> std::string {
    const Table *t = schema.FindTable(a.table);
    const Attribute *attr = t ? t->FindAttribute(a.attribute) : nullptr;
    return attr ? attr->type.ToString() : std::string();
  };
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < annotations.size(); ++i) {
    const Annotation &a = annotations[i];
    if (a.is_table()) continue;
    groups[{a.table, type_of(a), a.phrase}].push_back(i);
  }
  std::vector<bool> drop(annotations.size(), false);
  for (const auto &[key, members] : groups) {
    std::set<std::string> attrs;
    for (std::size_t i : members) attrs.insert(annotations[i].attribute);
    if (attrs.size() < 2) continue;

    ConflictReport report{std::get<0>(key), std::get<2>(key), {attrs.begin(), attrs.end()}, ""};
    std::set<std::string> keep;
    for (std::size_t i : members)
      if (annotations[i].source != AnnotationSource::kMined) keep.insert(annotations[i].attribute);
    if (keep.empty()) {
      std::set<std::string> phrase_stems;
      for (const std::string &w : Split(std::get<2>(key), ' '))
        if (w != kValueMarker) phrase_stems.insert(Stem(w));
      std::vector<std::string> matching;
      for (const std::string &attr : attrs) {
        const std::string last = attr.substr(attr.rfind('.') + 1);
        for (const std::string &w : SplitName(last)) {
          if (phrase_stems.count(Stem(ToLower(w)))) {
            matching.push_back(attr);
            break;
          }
        }
      }
      if (matching.size() == 1) keep.insert(matching.front());
    }
    for (std::size_t i : members)
      if (annotations[i].source == AnnotationSource::kMined && !keep.count(annotations[i].attribute))
        drop[i] = true;
    report.kept_on = Join({keep.begin(), keep.end()}, ",");
    if (reports) reports->push_back(std::move(report));
  }
  std::vector<Annotation> out;
  for (std::size_t i = 0; i < annotations.size(); ++i)
    if (!drop[i]) out.push_back(std::move(annotations[i]));
  return out;
}

bool AnnotateResult::backend_failed() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic &d) {
    return d.severity == Severity::kError;
  });
}

AnnotateResult Annotate(const Schema &schema, const TemplateLibrary &library,
                        Paraphraser *backend, const ParaphraseConfig &config,
                        const AnnotatorOptions &options, const Tagger &tagger) {
  AnnotateResult result;
  const CanonicalSet canonical = DeriveCanonical(schema);
  result.annotations = canonical.All();
  if (backend == nullptr) {
    SortAnnotations(result.annotations);
    return result;
  }

  std::vector<Probe> probes;
  std::map<std::string, std::string> table_phrase;
  std::size_t ai = 0;
  for (const Table &t : schema.tables) {
    table_phrase[t.name] = DeriveTableCanonical(t).phrase;
    for (const Attribute &a : t.attributes) {
      const Annotation &c = canonical.attributes[ai++];
      if (a.type.kind == TypeKind::kBoolean || a.example_values.empty()) {
        result.diagnostics.push_back({Severity::kNote, t.name + "." + a.name,
                                      "no example values; canonical annotation only"});
        continue;
      }
      for (Probe &p : GenerateProbes(t, a, c, library, options)) probes.push_back(std::move(p));
    }
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "p%05zu", i + 1);
    probes[i].id = id;
  }
  result.probes = probes.size();

  ParaphraseTree tree = ExpandProbes(probes, *backend, config, options.rounds);
  result.candidates = tree.candidates.size();
  result.diagnostics.insert(result.diagnostics.end(), tree.failures.begin(), tree.failures.end());

  // (table, attribute, pos, phrase) -> distinct candidate texts.
  std::map<std::tuple<std::string, std::string, PosCategory, std::string>, std::set<std::string>>
      support;
  std::size_t discarded = 0;
  for (const ProbeCandidate &c : tree.candidates) {
    const Probe &p = probes[c.probe];
    const auto extractions = ExtractFromCandidate(c.text, p, table_phrase[p.attribute.table],
                                                  library, tagger, options);
    if (extractions.empty()) ++discarded;
    for (const Extraction &e : extractions)
      support[{p.attribute.table, p.attribute.attribute, e.pos, e.phrase}].insert(c.text);
  }
  result.discarded = discarded;
  if (discarded > 0)
    result.diagnostics.push_back({Severity::kNote, "extraction",
                                  std::to_string(discarded) + " of " +
                                      std::to_string(tree.candidates.size()) +
                                      " candidates matched no template"});
  std::set<std::tuple<std::string, std::string, PosCategory, std::string>> existing;
  for (const Annotation &a : result.annotations) existing.insert({a.table, a.attribute, a.pos, a.phrase});
  for (const auto &[key, texts] : support) {
    if (static_cast<int>(texts.size()) < options.min_support || existing.count(key)) continue;
    Annotation a;
    std::tie(a.table, a.attribute, a.pos, a.phrase) = key;
    a.source = AnnotationSource::kMined;
    a.support_count = static_cast<int>(texts.size());
    if (HasErrors(ValidateAnnotation(a, &schema))) continue;
    result.annotations.push_back(std::move(a));
  }
  result.annotations = ResolveConflicts(std::move(result.annotations), schema, &result.conflicts);
  SortAnnotations(result.annotations);
  result.mined = static_cast<std::size_t>(
      std::count_if(result.annotations.begin(), result.annotations.end(),
                    [](const Annotation &a) { return a.source == AnnotationSource::kMined; }));
  return result;
}

}  // namespace qasynth
