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

// Python bindings. Structured documents cross the boundary as JSON/JSONL/TSV
// text; the qasynth package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qasynth/annotation.h"
#include "qasynth/auto_annotator.h"
#include "qasynth/canonicalizer.h"
#include "qasynth/chart_parser.h"
#include "qasynth/compiled_grammar.h"
#include "qasynth/dataset.h"
#include "qasynth/errors.h"
#include "qasynth/lexicon.h"
#include "qasynth/logic_form.h"
#include "qasynth/mock_paraphraser.h"
#include "qasynth/placeholders.h"
#include "qasynth/schema.h"
#include "qasynth/synthesizer.h"
#include "qasynth/template_library.h"

namespace py = pybind11;

namespace qasynth {
namespace {

TemplateLibrary Library(const std::optional<std::string> &library_json) {
  return library_json ? LoadLibrary(*library_json) : TemplateLibrary::Starter();
}

std::string AnnotateText(const std::string &schema_json, bool mine, int rounds,
                         std::uint64_t seed, const std::optional<std::string> &library_json) {
  const Schema schema = LoadSchema(schema_json);
  const TemplateLibrary library = Library(library_json);
  AnnotatorOptions options;
  options.rounds = rounds;
  MockOptions mock_options;
  mock_options.seed = seed;
  MockParaphraser mock(mock_options);
  AnnotateResult r;
  {
    py::gil_scoped_release release;
    r = Annotate(schema, library, mine ? &mock : nullptr, ParaphraseConfig{}, options);
  }
  return WriteAnnotations(r.annotations);
}

std::string SynthesizeText(const std::string &schema_json, const std::string &annotations,
                           std::size_t target_size, int max_atoms, std::uint64_t seed,
                           const std::optional<std::string> &library_json) {
  const Schema schema = LoadSchema(schema_json);
  const auto anns = ReadAnnotations(annotations, &schema);
  SynthesisOptions options;
  options.target_size = target_size;
  options.max_atoms = max_atoms;
  options.seed = seed;
  SynthesisResult r;
  {
    py::gil_scoped_release release;
    r = Synthesize(schema, anns, Library(library_json), options);
  }
  if (HasErrors(r.diagnostics)) throw ValidationError("synthesis failed", r.diagnostics);
  return WriteDatasetText(r.examples);
}

std::vector<std::vector<std::string>> ParseText(const std::string &schema_json,
                                                const std::string &annotations,
                                                const std::vector<std::string> &utterances,
                                                const std::optional<std::string> &library_json) {
  const Schema schema = LoadSchema(schema_json);
  const Grammar grammar =
      Grammar::Compile(schema, ReadAnnotations(annotations, &schema), Library(library_json));
  const ChartParser parser(grammar);
  std::vector<std::vector<std::string>> out;
  for (const std::string &u : utterances) {
    std::vector<std::string> lfs;
    for (const Query &q : parser.Parse(u)) lfs.push_back(SerializeLf(q));
    out.push_back(std::move(lfs));
  }
  return out;
}

std::vector<std::tuple<std::string, std::string>> MockParaphrase(const std::string &sentence,
                                                                 int num_return,
                                                                 std::uint64_t seed,
                                                                 double adversarial_rate,
                                                                 std::vector<std::string> values) {
  MockOptions options;
  options.seed = seed;
  options.adversarial_rate = adversarial_rate;
  options.values = std::move(values);
  std::vector<std::tuple<std::string, std::string>> out;
  for (const MockOutput &o : MockParaphraser(options).Generate(sentence, num_return))
    out.emplace_back(o.text, MockLabelName(o.label));
  return out;
}

std::tuple<std::string, std::vector<std::tuple<std::string, std::string, int>>> Preprocess(
    const std::string &utterance) {
  Preprocessed p = PreprocessPlaceholders(utterance);
  std::vector<std::tuple<std::string, std::string, int>> binding;
  for (const auto &e : p.binding.entries)
    binding.emplace_back(e.placeholder, e.surrogate, e.occurrences);
  return {p.text, binding};
}

std::optional<std::string> Postprocess(
    const std::string &candidate,
    const std::vector<std::tuple<std::string, std::string, int>> &binding) {
  PlaceholderBinding b;
  for (const auto &[placeholder, surrogate, occurrences] : binding)
    b.entries.push_back({placeholder, surrogate, occurrences});
  return PostprocessPlaceholders(candidate, b);
}

}  // namespace
}  // namespace qasynth

PYBIND11_MODULE(_core, m) {
  using namespace qasynth;
  m.doc() = "qasynth native core";

  static py::exception<ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
  static py::exception<BackendError> backend_error(m, "BackendError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError &e) {
      std::string message = e.what();
      for (const Diagnostic &d : e.diagnostics()) message += "\n  " + d.ToString();
      py::set_error(validation_error, message.c_str());
    } catch (const BackendError &e) {
      py::set_error(backend_error, e.what());
    }
  });

  m.def("validate_schema", [](const std::string &text) { return SerializeSchema(LoadSchema(text)); },
        py::arg("schema_json"), "Validate a schema document; returns it normalized.");
  m.def("starter_library", [] { return std::string(TemplateLibrary::StarterText()); });
  m.def("validate_library",
        [](const std::string &text) {
          std::vector<std::string> out;
          for (const Diagnostic &d : ValidateLibrary(TemplateLibrary::Parse(text)))
            out.push_back(d.ToString());
          return out;
        },
        py::arg("library_json"));
  m.def("annotate", &AnnotateText, py::arg("schema_json"), py::arg("mine") = true,
        py::arg("rounds") = 3, py::arg("seed") = 1, py::arg("library_json") = std::nullopt,
        "Canonical plus (optionally) mock-mined annotations as JSONL.");
  m.def("synthesize", &SynthesizeText, py::arg("schema_json"), py::arg("annotations_jsonl"),
        py::arg("target_size") = 1000, py::arg("max_atoms") = 3, py::arg("seed") = 1,
        py::arg("library_json") = std::nullopt, "Synthesized dataset as TSV.");
  m.def("parse", &ParseText, py::arg("schema_json"), py::arg("annotations_jsonl"),
        py::arg("utterances"), py::arg("library_json") = std::nullopt,
        "Every parse of each utterance, as canonical logical-form text.");
  m.def("canonical_lf", [](const std::string &text) { return SerializeLf(ParseLf(text)); },
        py::arg("text"));
  m.def("distinct_n",
        [](const std::vector<std::string> &utterances, int n) { return DistinctN(utterances, n); },
        py::arg("utterances"), py::arg("n"));
  m.def("dataset_stats",
        [](const std::string &tsv) { return ComputeStats(ReadDatasetText(tsv)).ToJson(); },
        py::arg("dataset_tsv"));
  m.def("tokenize",
        [](const std::string &text) {
          std::vector<std::tuple<std::string, std::string>> out;
          for (const Token &t : TagTokens(Tokenize(text)))
            out.emplace_back(t.surface, std::string(PosTagName(t.tag)));
          return out;
        },
        py::arg("text"));
  m.def("stem", [](const std::string &w) { return Stem(w); }, py::arg("word"));
  m.def("mock_paraphrase", &MockParaphrase, py::arg("sentence"), py::arg("num_return") = 5,
        py::arg("seed") = 1, py::arg("adversarial_rate") = 0.0,
        py::arg("values") = std::vector<std::string>{});
  m.def("preprocess_placeholders", &Preprocess, py::arg("utterance"));
  m.def("postprocess_placeholders", &Postprocess, py::arg("candidate"), py::arg("binding"));
}
