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

// Property checks for the synthesis pipeline. Prints one PASS/FAIL line per
// criterion and exits non-zero when any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qasynth/auto_annotator.h"
#include "qasynth/canonicalizer.h"
#include "qasynth/chart_parser.h"
#include "qasynth/dataset.h"
#include "qasynth/filter.h"
#include "qasynth/mock_paraphraser.h"
#include "qasynth/placeholders.h"
#include "qasynth/synthesizer.h"
#include "qasynth/text.h"

namespace qasynth {
namespace {

namespace fs = std::filesystem;

std::string Data(const std::string &rel) { return std::string(QASYNTH_DATA_DIR) + "/" + rel; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Shared state: the restaurants schema, its mock-mined annotations and a
// 1,000-example synthesized set.
struct Corpus {
  Schema schema = LoadSchemaFile(Data("fixtures/restaurants.json"));
  std::vector<Annotation> annotations;
  std::optional<Grammar> grammar;
  SynthesisResult synthesized;

  static std::vector<std::string> Values(const Schema &s) {
    std::vector<std::string> out;
    for (const Table &t : s.tables)
      for (const Attribute &a : t.attributes)
        if (a.type.kind != TypeKind::kNumber && a.type.kind != TypeKind::kBoolean)
          for (const Value &v : a.example_values) out.push_back(v.surface);
    return out;
  }

  Corpus() {
    MockOptions mo;
    mo.values = Values(schema);
    MockParaphraser mock(mo);
    annotations = Annotate(schema, TemplateLibrary::Starter(), &mock).annotations;
    grammar = Grammar::Compile(schema, annotations, TemplateLibrary::Starter());
    SynthesisOptions o;
    o.target_size = 1000;
    o.check_parses = false;
    synthesized = Synthesize(*grammar, o);
  }
};

Corpus &Shared() {
  static Corpus c;
  return c;
}

Outcome RoundTripSoundness() {
  const auto start = std::chrono::steady_clock::now();
  Corpus &c = Shared();
  ChartParser parser(*c.grammar);
  std::size_t failures = 0;
  for (const Example &e : c.synthesized.examples)
    if (!parser.Accepts(e.utterance, e.lf)) ++failures;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << c.synthesized.examples.size() << " examples, " << failures << " parse failures, "
    << secs << "s";
  return {c.synthesized.examples.size() == 1000 && failures == 0 && secs < 120, d.str()};
}

Outcome AnnotationRecovery() {
  const std::vector<std::string> six = {
      "people who are alumni of Stanford", "people with a Stanford degree",
      "people who graduated from Stanford", "people educated at Stanford",
      "Stanford people", "people from Stanford"};
  ScriptedParaphraser scripted([&](const std::string &in) {
    return in.find("alumni of stanford") != std::string::npos ? six : std::vector<std::string>{};
  });
  ParaphraseConfig config;
  config.greedy = false;
  config.temperatures = {0.2, 0.3, 0.5, 0.7, 0.9, 1.0};
  config.num_return = 6;
  AnnotatorOptions o;
  o.rounds = 1;
  const AnnotateResult r =
      Annotate(Shared().schema, TemplateLibrary::Starter(), &scripted, config, o);
  std::set<std::pair<std::string, std::string>> got;
  for (const Annotation &a : r.annotations)
    if (a.attribute == "alumniOf") got.insert({std::string(PosName(a.pos)), a.phrase});
  const std::set<std::pair<std::string, std::string>> expected = {
      {"is_a_noun", "alumni of $value"},   {"has_a_noun", "a $value degree"},
      {"active_verb", "graduated from $value"}, {"passive_verb", "educated at $value"},
      {"adjective", "$value"},             {"prepositional", "from $value"}};
  std::ostringstream d;
  d << got.size() << " alumniOf annotations";
  for (const auto &g : got)
    if (!expected.count(g)) d << "; unexpected " << g.first << " '" << g.second << "'";
  for (const auto &e : expected)
    if (!got.count(e)) d << "; missing " << e.first << " '" << e.second << "'";
  return {got == expected, d.str()};
}

Outcome ConflictResolution() {
  const Schema s = LoadSchemaFile(Data("fixtures/movies.json"));
  std::vector<std::string> people;
  for (const Value &v : s.tables[0].FindAttribute("director")->example_values)
    people.push_back(ToLower(v.surface));
  // Both attributes are paraphrased the same way: a "creator" phrase and
  // a phrase sharing a stem with neither attribute.
  ScriptedParaphraser scripted([&](const std::string &in) {
    std::vector<std::string> out;
    if (in.find("director") == std::string::npos && in.find("creator") == std::string::npos)
      return out;
    for (const std::string &p : people)
      if (in.find(p) != std::string::npos) {
        out.push_back("movies created by " + p);
        out.push_back("movies made by " + p);
      }
    return out;
  });
  AnnotatorOptions o;
  o.rounds = 1;
  const AnnotateResult r = Annotate(s, TemplateLibrary::Starter(), &scripted, {}, o);
  std::set<std::string> mined;
  for (const Annotation &a : r.annotations)
    if (a.source == AnnotationSource::kMined) mined.insert(a.attribute + ": " + a.phrase);
  std::map<std::string, std::string> kept;
  for (const ConflictReport &c : r.conflicts) kept[c.phrase] = c.kept_on;
  const bool ok = mined == std::set<std::string>{"creator: created by $value"} &&
                  kept.size() == 2 && kept["created by $value"] == "creator" &&
                  kept.count("made by $value") && kept["made by $value"].empty();
  std::ostringstream d;
  d << "mined {";
  for (const std::string &m : mined) d << " '" << m << "'";
  d << " }; conflicts {";
  for (const auto &[p, k] : kept) d << " '" << p << "' -> " << (k.empty() ? "dropped" : k);
  d << " }";
  return {ok, d.str()};
}

Outcome FilterSoundness() {
  const auto start = std::chrono::steady_clock::now();
  Corpus &c = Shared();
  MockOptions mo;
  mo.adversarial_rate = 0.3;
  mo.seed = 11;
  mo.values = Corpus::Values(c.schema);
  MockParaphraser mock(mo);
  ParaphraseGateway gateway(mock, ParaphraseConfig{});
  OracleChecker oracle(*c.grammar, 4);

  // The loop itself.
  LoopOptions lo;
  const LoopResult loop = RunRounds(c.synthesized.examples, gateway, &oracle, lo);
  std::map<std::string, const Example *> by_id;
  for (const Example &e : loop.dataset) by_id[e.id] = &e;
  std::size_t mutated_added = 0, added = 0;
  for (const Example &e : loop.dataset) {
    if (e.round != 1) continue;
    ++added;
    const Example *parent = by_id.at(e.id.substr(0, e.id.rfind("-r1-")));
    const auto label = mock.LabelOf(parent->utterance, e.utterance);
    if (!label || *label == MockLabel::kMutated) ++mutated_added;
  }

  // Per-candidate view of the same filter, including identity candidates
  // that the loop deduplicates away.
  MockParaphraser mock2(mo);
  ParaphraseGateway gateway2(mock2, ParaphraseConfig{});
  std::vector<std::string> inputs;
  for (const Example &e : c.synthesized.examples) inputs.push_back(e.utterance);
  const GatewayResult gr = gateway2.ParaphraseBatch(inputs);
  std::vector<std::string> utts;
  std::vector<const Query *> lfs;
  std::vector<MockLabel> labels;
  std::size_t mutated_total = 0, mutated_accepted = 0, identity_total = 0, identity_kept = 0;
  std::size_t candidates = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    for (const ParaphraseCandidate &pc : gr.candidates[i]) {
      ++candidates;
      const MockLabel label = mock2.LabelOf(inputs[i], pc.text).value_or(MockLabel::kMutated);
      mutated_total += label == MockLabel::kMutated;
      identity_total += label == MockLabel::kIdentity;
      if (!StringMatchFilter(pc.text, c.synthesized.examples[i].lf)) continue;
      utts.push_back(pc.text);
      lfs.push_back(&c.synthesized.examples[i].lf);
      labels.push_back(label);
    }
  const std::vector<bool> ok = oracle.Check(utts, lfs);
  for (std::size_t k = 0; k < ok.size(); ++k) {
    if (!ok[k]) continue;
    mutated_accepted += labels[k] == MockLabel::kMutated;
    identity_kept += labels[k] == MockLabel::kIdentity;
  }
  const double survival = identity_total ? static_cast<double>(identity_kept) / identity_total : 0;
  const double mutation_rate = candidates ? static_cast<double>(mutated_total) / candidates : 0;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << candidates << " candidates (" << mutated_total << " mutated, "
    << static_cast<int>(mutation_rate * 1000 + 0.5) / 10.0 << "%), " << mutated_accepted
    << " mutated accepted, " << mutated_added << " of " << added
    << " added examples mutated, identity survival " << identity_kept << "/" << identity_total
    << ", " << secs << "s";
  return {mutated_total > 0 && mutated_accepted == 0 && mutated_added == 0 && survival >= 0.8 &&
              secs < 120,
          d.str()};
}

std::multiset<std::string> PlaceholderTokens(const std::string &text) {
  std::multiset<std::string> out;
  for (const std::string &w : SplitWhitespace(text))
    if (IsPlaceholder(w)) out.insert(w);
  return out;
}

Outcome PlaceholderInversion() {
  const std::vector<std::string> frames = {
      "show me restaurants open after {T}",
      "restaurants with at least {N} reviews that open before {T}",
      "what is the number of books with more than {N} pages",
      "restaurants with {N} michelin star that open after {T}",
      "give me people whose age is over {N} or under {N}",
      "which restaurants open between {T} and {T}",
      "find the {N} best restaurants near me",
      "restaurants with {N} stars and {N} reviews open at {T}"};
  MockOptions mo;
  mo.adversarial_rate = 0.3;
  mo.seed = 5;
  MockParaphraser mock(mo);
  Rng rng(2024);
  std::size_t restored = 0, rejected = 0, corrupt = 0;
  for (int i = 0; i < 200; ++i) {
    std::string s = frames[rng.Below(frames.size())];
    int t = 0, n = 0;
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (s.compare(k, 3, "{T}") == 0) {
        const int idx = rng.Chance(0.3) && t > 0 ? static_cast<int>(rng.Below(t)) : t++;
        out += "TIME_" + std::to_string(idx);
        k += 2;
      } else if (s.compare(k, 3, "{N}") == 0) {
        const int idx = rng.Chance(0.3) && n > 0 ? static_cast<int>(rng.Below(n)) : n++;
        out += "NUMBER_" + std::to_string(idx);
        k += 2;
      } else {
        out += s[k];
      }
    }
    const Preprocessed pre = PreprocessPlaceholders(out);
    const auto want = PlaceholderTokens(out);
    for (const MockOutput &m : mock.Generate(pre.text, 6)) {
      const auto back = PostprocessPlaceholders(m.text, pre.binding);
      if (!back) {
        ++rejected;
        continue;
      }
      bool leftover = false;
      for (const auto &e : pre.binding.entries)
        leftover |= (" " + *back + " ").find(" " + e.surrogate + " ") != std::string::npos;
      if (PlaceholderTokens(*back) != want || leftover) ++corrupt;
      else ++restored;
    }
  }
  std::ostringstream d;
  d << "200 sentences: " << restored << " restored, " << rejected << " rejected, " << corrupt
    << " silent corruptions";
  return {corrupt == 0 && restored > 0 && rejected > 0, d.str()};
}

// Independent n-gram count over whitespace-separated tokens.
std::pair<std::size_t, std::size_t> BruteNgrams(const Dataset &d, std::size_t n) {
  std::map<std::vector<std::string>, int> counts;
  std::size_t total = 0;
  for (const Example &e : d) {
    std::istringstream in(e.utterance);
    std::vector<std::string> words{std::istream_iterator<std::string>(in), {}};
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      counts[std::vector<std::string>(words.begin() + i, words.begin() + i + n)]++;
      ++total;
    }
  }
  return {counts.size(), total};
}

Outcome DistinctNCorrectness() {
  const Dataset &d = Shared().synthesized.examples;
  std::ostringstream out;
  bool ok = true;
  for (int n : {1, 2}) {
    const auto [distinct, total] = BruteNgrams(d, n);
    const double got = DistinctN(d, n);
    const DatasetStats st = ComputeStats(d);
    const double via_stats = n == 1 ? st.distinct1 : st.distinct2;
    const bool match = got == static_cast<double>(distinct) / static_cast<double>(total) &&
                       via_stats == got;
    ok &= match;
    out << "distinct-" << n << " " << distinct << "/" << total << (match ? " match" : " MISMATCH")
        << (n == 1 ? "; " : "");
  }
  return {ok, out.str()};
}

int RunCli(const std::vector<std::string> &args) {
  std::string cmd = std::string("'") + QASYNTH_CLI + "'";
  for (const std::string &a : args) cmd += " '" + a + "'";
  cmd += " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome Determinism() {
  const fs::path dir = fs::temp_directory_path() / "qasynth_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string schema = Data("fixtures/restaurants.json");
  const std::string ann = (dir / "ann.jsonl").string();
  if (RunCli({"annotate", "--schema", schema, "--mock", "--out", ann}) != 0)
    return {false, "annotate failed"};
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const std::string syn = (dir / ("syn" + std::to_string(run) + ".tsv")).string();
    const std::string para = (dir / ("para" + std::to_string(run) + ".tsv")).string();
    if (RunCli({"synthesize", "--schema", schema, "--annotations", ann, "--out", syn,
                "--target-size", "300", "--seed", "17"}) != 0)
      return {false, "synthesize failed"};
    if (RunCli({"paraphrase", "--schema", schema, "--annotations", ann, "--in", syn, "--out", para,
                "--mock", "--mock-seed", "17", "--adversarial-rate", "0.2", "--rounds", "2"}) != 0)
      return {false, "paraphrase failed"};
    outputs.push_back(ReadFile(syn) + '\x1e' + ReadFile(para) + '\x1e' +
                      ReadFile(para + ".reports.jsonl"));
  }
  const bool same = outputs[0] == outputs[1];
  return {same, same ? "synthesize + paraphrase outputs byte-identical across two runs"
                     : "outputs differ between runs"};
}

Outcome MonotoneGrowth() {
  Corpus &c = Shared();
  MockOptions mo;
  mo.values = Corpus::Values(c.schema);
  mo.adversarial_rate = 0.1;
  MockParaphraser mock(mo);
  ParaphraseGateway gateway(mock, ParaphraseConfig{});
  OracleChecker oracle(*c.grammar, 4);
  LoopOptions lo;
  lo.rounds = 3;
  Dataset seed(c.synthesized.examples.begin(), c.synthesized.examples.begin() + 200);
  std::vector<std::size_t> sizes = {seed.size()};
  std::set<std::string> known;
  for (const Example &e : seed) known.insert(e.id);
  std::size_t bad_tags = 0;
  const LoopResult r = RunRounds(seed, gateway, &oracle, lo, [&](const RoundReport &rep, const Dataset &d) {
    sizes.push_back(d.size());
    for (const Example &e : d) {
      if (known.count(e.id)) continue;
      known.insert(e.id);
      const std::string tag = "-r" + std::to_string(rep.round) + "-";
      if (e.round != rep.round || e.provenance() != ProvenanceName(rep.round) ||
          e.id.rfind(tag) == std::string::npos)
        ++bad_tags;
    }
  });
  bool monotone = true;
  for (std::size_t i = 1; i < sizes.size(); ++i) monotone &= sizes[i] >= sizes[i - 1];
  std::size_t bad_final = 0;
  for (const Example &e : r.dataset) {
    const std::size_t pos = e.id.rfind("-r");
    const int expected = pos == std::string::npos ? 0 : std::stoi(e.id.substr(pos + 2));
    if (e.round != expected) ++bad_final;
  }
  std::ostringstream d;
  d << "sizes";
  for (std::size_t s : sizes) d << " " << s;
  d << "; " << bad_tags + bad_final << " mis-tagged";
  return {monotone && sizes.back() > sizes.front() && bad_tags == 0 && bad_final == 0, d.str()};
}

}  // namespace
}  // namespace qasynth

int main() {
  using namespace qasynth;
  const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"round-trip soundness", RoundTripSoundness},
      {"annotation recovery", AnnotationRecovery},
      {"conflict resolution", ConflictResolution},
      {"filter soundness under injected noise", FilterSoundness},
      {"placeholder inversion", PlaceholderInversion},
      {"distinct-n correctness", DistinctNCorrectness},
      {"determinism", Determinism},
      {"monotone growth", MonotoneGrowth},
  };
  int failed = 0;
  for (const auto &[name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << name << ": " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
