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

// qasynth: command-line driver, one subcommand per pipeline stage.
//
// Exit codes: 0 success, 1 validation error, 2 backend failure.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qasynth/annotation.h"
#include "qasynth/auto_annotator.h"
#include "qasynth/chart_parser.h"
#include "qasynth/compiled_grammar.h"
#include "qasynth/dataset.h"
#include "qasynth/errors.h"
#include "qasynth/filter.h"
#include "qasynth/http_client.h"
#include "qasynth/mock_paraphraser.h"
#include "qasynth/profile.h"
#include "qasynth/schema.h"
#include "qasynth/synthesizer.h"
#include "qasynth/template_library.h"
#include "qasynth/text.h"

namespace qasynth {
namespace {

constexpr int kExitValidation = 1;
constexpr int kExitBackend = 2;

struct Common {
  std::string schema;
  std::string library;
  std::string annotations;
  int jobs = 0;
};

TemplateLibrary LoadLibraryOrStarter(const std::string &path) {
  return path.empty() ? TemplateLibrary::Starter() : LoadLibraryFile(path);
}

int Jobs(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void Report(const std::vector<Diagnostic> &diagnostics) {
  for (const Diagnostic &d : diagnostics) std::cerr << d.ToString() << "\n";
}

std::vector<std::string> SchemaValues(const Schema &schema) {
  std::vector<std::string> out;
  for (const Table &t : schema.tables)
    for (const Attribute &a : t.attributes)
      for (const Value &v : a.example_values)
        if (a.type.kind != TypeKind::kNumber && a.type.kind != TypeKind::kBoolean)
          out.push_back(v.surface);
  return out;
}

// Paraphraser selection shared by annotate and paraphrase.
struct ParaphraserFlags {
  bool mock = false;
  std::string gateway_url;
  double adversarial_rate = 0.0;
  std::uint64_t mock_seed = 1;
  std::string mock_table;
  std::vector<double> temperatures = ParaphraseConfig{}.temperatures;
  bool no_greedy = false;

  void Add(CLI::App *cmd) {
    cmd->add_flag("--mock", mock, "Use the deterministic offline paraphraser");
    cmd->add_option("--gateway-url", gateway_url, "Paraphrase service base URL")
        ->envname("QASYNTH_GATEWAY_URL");
    cmd->add_option("--adversarial-rate", adversarial_rate,
                    "Mock only: probability of a value/number mutation per candidate")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--mock-seed", mock_seed, "Mock only: seed");
    cmd->add_option("--mock-table", mock_table, "Mock only: phrase table JSON")
        ->check(CLI::ExistingFile);
    cmd->add_option("--temperatures", temperatures, "Sampling temperatures, one candidate each")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--no-greedy", no_greedy, "Drop the greedy candidate");
  }

  ParaphraseConfig Config(int jobs) const {
    ParaphraseConfig config;
    config.temperatures = temperatures;
    config.greedy = !no_greedy;
    config.num_return = static_cast<int>(temperatures.size()) + (no_greedy ? 0 : 1);
    config.max_in_flight = jobs;
    return config;
  }

  // nullptr when neither --mock nor a gateway URL was given.
  std::unique_ptr<Paraphraser> Make(const Schema &schema) const {
    if (mock) {
      MockOptions options;
      options.seed = mock_seed;
      options.adversarial_rate = adversarial_rate;
      options.values = SchemaValues(schema);
      MockPhraseTable table = mock_table.empty() ? MockPhraseTable::Default()
                                                 : MockPhraseTable::Parse(ReadFile(mock_table));
      return std::make_unique<MockParaphraser>(options, std::move(table));
    }
    if (!gateway_url.empty()) return std::make_unique<HttpParaphraser>(HttpEndpoint{gateway_url});
    return nullptr;
  }
};

std::string RoundPath(const std::string &out, int round) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? out.substr(0, dot) : out;
  const std::string ext = has_ext ? out.substr(dot) : ".tsv";
  return stem + ".round" + std::to_string(round) + ext;
}

int Run(int argc, char **argv) {
  CLI::App app{"qasynth: synthesize question-answering datasets from a database schema"};
  app.set_config("--config", "", "TOML/INI file setting any flag");
  app.require_subcommand(1);
  app.set_version_flag("--version", "qasynth 0.3.0");

  Common common;
  auto add_schema = [&](CLI::App *cmd, bool required) {
    auto *o = cmd->add_option("--schema", common.schema, "Schema JSON")->check(CLI::ExistingFile);
    if (required) o->required();
  };
  auto add_library = [&](CLI::App *cmd) {
    cmd->add_option("--library", common.library, "Template library JSON (default: starter)")
        ->check(CLI::ExistingFile);
  };
  auto add_jobs = [&](CLI::App *cmd) {
    cmd->add_option("--jobs", common.jobs, "Cap on worker threads (default: all cores)")
        ->check(CLI::NonNegativeNumber);
  };

  // annotate
  auto *annotate = app.add_subcommand("annotate", "Derive and mine attribute annotations");
  std::string annotate_out;
  bool no_mining = false;
  AnnotatorOptions annotator;
  ParaphraserFlags annotate_para;
  add_schema(annotate, true);
  add_library(annotate);
  add_jobs(annotate);
  annotate->add_option("--out", annotate_out, "Annotation dump (JSONL)")->required();
  annotate->add_flag("--no-mining", no_mining, "Canonical annotations only");
  annotate->add_option("--rounds", annotator.rounds, "Paraphrase tree depth")
      ->check(CLI::PositiveNumber);
  annotate->add_option("--max-values", annotator.max_values, "Example values per attribute");
  annotate->add_option("--min-support", annotator.min_support, "Candidates needed per phrase");
  annotate_para.Add(annotate);

  // synthesize
  auto *synth = app.add_subcommand("synthesize", "Sample utterance/logical-form pairs");
  std::string synth_out;
  SynthesisOptions synthesis;
  bool no_check = false;
  add_schema(synth, true);
  add_library(synth);
  synth->add_option("--annotations", common.annotations, "Annotation dump")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--out", synth_out, "Dataset (TSV)")->required();
  synth->add_option("--target-size", synthesis.target_size, "Examples to produce")
      ->check(CLI::PositiveNumber);
  synth->add_option("--max-atoms", synthesis.max_atoms, "Predicate atoms per example")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synthesis.seed, "Sampling seed");
  synth->add_flag("--no-check", no_check, "Skip the parse-back check of every example");

  // paraphrase
  auto *para = app.add_subcommand("paraphrase", "Paraphrase and filter a dataset in rounds");
  std::string para_in, para_out, reports_path, backend = "oracle", profile_name = "schema2qa";
  std::string parser_url;
  std::optional<int> rounds;
  bool all_rounds_input = false;
  ParaphraserFlags para_flags;
  add_schema(para, true);
  add_library(para);
  add_jobs(para);
  para->add_option("--annotations", common.annotations, "Annotation dump (oracle backend)")
      ->check(CLI::ExistingFile);
  para->add_option("--in", para_in, "Input dataset")->required()->check(CLI::ExistingFile);
  para->add_option("--out", para_out, "Output dataset")->required();
  para->add_option("--reports", reports_path, "Round reports (JSONL; default <out>.reports.jsonl)");
  para->add_option("--rounds", rounds, "Rounds (default from profile)")
      ->check(CLI::NonNegativeNumber);
  para->add_option("--backend", backend, "Round-trip checker: oracle, wire or none")
      ->check(CLI::IsMember({"oracle", "wire", "none"}));
  para->add_option("--parser-url", parser_url, "Parser service base URL (wire backend)")
      ->envname("QASYNTH_PARSER_URL");
  para->add_option("--profile", profile_name, "schema2qa (1 round) or overnight (3 rounds)")
      ->check(CLI::IsMember({"schema2qa", "overnight"}));
  para->add_flag("--all-rounds-input", all_rounds_input,
                 "Paraphrase the whole dataset each round, not only the newest examples");
  para_flags.Add(para);

  // stats
  auto *stats = app.add_subcommand("stats", "Print dataset statistics as JSON");
  std::string stats_in;
  stats->add_option("dataset", stats_in, "Dataset")->required()->check(CLI::ExistingFile);

  // validate
  auto *validate = app.add_subcommand("validate", "Check input files");
  std::string validate_dataset;
  add_schema(validate, false);
  add_library(validate);
  validate->add_option("--annotations", common.annotations, "Annotation dump")
      ->check(CLI::ExistingFile);
  validate->add_option("--dataset", validate_dataset, "Dataset")->check(CLI::ExistingFile);

  // parse
  auto *parse = app.add_subcommand("parse", "Chart-parse utterances with the compiled grammar");
  std::vector<std::string> utterances;
  add_schema(parse, true);
  add_library(parse);
  parse->add_option("--annotations", common.annotations, "Annotation dump")
      ->required()
      ->check(CLI::ExistingFile);
  parse->add_option("utterance", utterances, "Utterances (default: one per stdin line)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  if (*annotate) {
    const Schema schema = LoadSchemaFile(common.schema);
    const TemplateLibrary library = LoadLibraryOrStarter(common.library);
    std::unique_ptr<Paraphraser> backend_impl;
    if (!no_mining) {
      backend_impl = annotate_para.Make(schema);
      if (!backend_impl)
        throw ValidationError("mining needs --mock or --gateway-url (or pass --no-mining)");
    }
    const ParaphraseConfig config = annotate_para.Config(Jobs(common.jobs));
    AnnotateResult r = Annotate(schema, library, backend_impl.get(), config, annotator);
    WriteAnnotationsFile(annotate_out, r.annotations);
    Report(r.diagnostics);
    for (const ConflictReport &c : r.conflicts)
      std::cerr << "note: conflict on '" << c.phrase << "' (" << Join(c.attributes, ", ")
                << "): " << (c.kept_on.empty() ? "dropped" : "kept on " + c.kept_on) << "\n";
    std::cerr << "annotations: " << r.annotations.size() << " (" << r.mined << " mined from "
              << r.candidates << " candidates of " << r.probes << " probes)\n";
    return r.backend_failed() ? kExitBackend : 0;
  }

  if (*synth) {
    const Schema schema = LoadSchemaFile(common.schema);
    const TemplateLibrary library = LoadLibraryOrStarter(common.library);
    const auto annotations = ReadAnnotationsFile(common.annotations, &schema);
    synthesis.check_parses = !no_check;
    SynthesisResult r = Synthesize(schema, annotations, library, synthesis);
    Report(r.diagnostics);
    if (HasErrors(r.diagnostics)) return kExitValidation;
    WriteDataset(synth_out, r.examples);
    std::cerr << "examples: " << r.examples.size() << " of " << FormatNumber(r.derivation_space)
              << " derivations\n";
    return 0;
  }

  if (*para) {
    const Schema schema = LoadSchemaFile(common.schema);
    const TemplateLibrary library = LoadLibraryOrStarter(common.library);
    const PipelineProfile profile = *FindProfile(profile_name);
    Dataset dataset = ReadDataset(para_in, &schema);

    std::unique_ptr<Paraphraser> paraphraser = para_flags.Make(schema);
    if (!paraphraser) throw ValidationError("paraphrasing needs --mock or --gateway-url");
    ParaphraseConfig config = para_flags.Config(Jobs(common.jobs));
    ParaphraseGateway gateway(*paraphraser, config);

    LoopOptions loop = profile.loop;
    if (rounds) loop.rounds = *rounds;
    loop.newest_only = !all_rounds_input;
    loop.skip_roundtrip = backend == "none";

    std::optional<Grammar> grammar;
    std::unique_ptr<RoundTripChecker> checker;
    if (backend == "oracle") {
      if (common.annotations.empty())
        throw ValidationError("the oracle backend needs --annotations");
      grammar = Grammar::Compile(schema, ReadAnnotationsFile(common.annotations, &schema), library);
      checker = std::make_unique<OracleChecker>(*grammar, Jobs(common.jobs));
    } else if (backend == "wire") {
      if (parser_url.empty()) throw ValidationError("the wire backend needs --parser-url");
      checker = std::make_unique<WireChecker>(HttpEndpoint{parser_url});
    }

    if (reports_path.empty()) reports_path = para_out + ".reports.jsonl";
    std::string reports;
    auto on_round = [&](const RoundReport &report, const Dataset &current) {
      WriteDataset(RoundPath(para_out, report.round), current);
      reports += report.ToJson() + "\n";
      WriteFile(reports_path, reports);
      std::cerr << "round " << report.round << ": " << report.generated << " candidates, "
                << report.accepted << " accepted, " << report.added << " added, size "
                << report.size_after << "\n";
    };
    LoopResult r = RunRounds(std::move(dataset), gateway, checker.get(), loop, on_round);
    WriteFile(reports_path, reports);
    WriteDataset(para_out, r.dataset);
    return 0;
  }

  if (*stats) {
    std::cout << ComputeStats(ReadDataset(stats_in)).ToJson() << "\n";
    return 0;
  }

  if (*validate) {
    std::vector<Diagnostic> diagnostics;
    std::optional<Schema> schema;
    if (!common.schema.empty()) schema = LoadSchemaFile(common.schema);
    if (!common.library.empty()) {
      auto d = ValidateLibrary(TemplateLibrary::Parse(ReadFile(common.library)));
      diagnostics.insert(diagnostics.end(), d.begin(), d.end());
    }
    if (!common.annotations.empty())
      ReadAnnotationsFile(common.annotations, schema ? &*schema : nullptr);
    if (!validate_dataset.empty()) ReadDataset(validate_dataset, schema ? &*schema : nullptr);
    Report(diagnostics);
    if (HasErrors(diagnostics)) return kExitValidation;
    std::cerr << "ok\n";
    return 0;
  }

  if (*parse) {
    const Schema schema = LoadSchemaFile(common.schema);
    const TemplateLibrary library = LoadLibraryOrStarter(common.library);
    const Grammar grammar =
        Grammar::Compile(schema, ReadAnnotationsFile(common.annotations, &schema), library);
    const ChartParser parser(grammar);
    if (utterances.empty())
      for (std::string line; std::getline(std::cin, line);) utterances.push_back(line);
    for (const std::string &u : utterances) {
      const std::vector<Query> parses = parser.Parse(u);
      std::cout << (parses.empty() ? std::string() : SerializeLf(parses.front()));
      if (parses.size() > 1) std::cout << "\t(" << parses.size() << " parses)";
      std::cout << "\n";
    }
    return 0;
  }
  return 0;
}

}  // namespace
}  // namespace qasynth

int main(int argc, char **argv) {
  try {
    return qasynth::Run(argc, argv);
  } catch (const qasynth::ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto &d : e.diagnostics()) std::cerr << "  " << d.ToString() << "\n";
    return qasynth::kExitValidation;
  } catch (const qasynth::BackendError &e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return qasynth::kExitBackend;
  } catch (const qasynth::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return qasynth::kExitValidation;
  }
}
