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

#include <algorithm>
#include <tuple>

#include <nlohmann/json.hpp>

#include "qasynth/annotation.h"
#include "qasynth/text.h"

namespace qasynth {

using nlohmann::ordered_json;

std::string_view SourceName(AnnotationSource s) {
  switch (s) {
    case AnnotationSource::kCanonical: return "canonical";
    case AnnotationSource::kMined: return "mined";
    case AnnotationSource::kManual: return "manual";
  }
  return "canonical";
}

std::optional<AnnotationSource> SourceFromName(std::string_view name) {
  for (AnnotationSource s : {AnnotationSource::kCanonical, AnnotationSource::kMined,
                             AnnotationSource::kManual})
    if (SourceName(s) == name) return s;
  return std::nullopt;
}

bool Annotation::has_placeholder() const {
  auto words = Words();
  return std::find(words.begin(), words.end(), kValueMarker) != words.end();
}

std::vector<std::string> Annotation::Words() const { return SplitWhitespace(phrase); }

std::string NormalizePhrase(std::string_view phrase) {
  std::vector<std::string> words = SplitWhitespace(phrase);
  for (std::string &w : words) w = ToLower(w);
  return Join(words, " ");
}

std::vector<Diagnostic> ValidateAnnotation(const Annotation &a, const Schema *schema,
                                           const std::string &where) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string m) { out.push_back({Severity::kError, where, std::move(m)}); };
  auto words = a.Words();
  if (words.empty()) error("phrase is empty");
  if (a.phrase != NormalizePhrase(a.phrase)) error("phrase must be lowercase and single-spaced");
  long markers = std::count(words.begin(), words.end(), kValueMarker);
  for (const std::string &w : words)
    if (w != kValueMarker && w.find('$') != std::string::npos)
      error("unknown marker '" + w + "' in phrase");
  if (a.support_count < 1) error("support_count must be at least 1");
  if (a.table.empty()) error("table is empty");
  const Table *table = schema ? schema->FindTable(a.table) : nullptr;
  if (schema && !table) error("unknown table '" + a.table + "'");
  if (a.is_table()) {
    if (markers != 0) error("table annotation must not contain $value");
    return out;
  }
  const Attribute *attr = table ? table->FindAttribute(a.attribute) : nullptr;
  if (table && !attr) error("unknown attribute '" + a.table + "." + a.attribute + "'");
  const bool boolean = attr && attr->type.kind == TypeKind::kBoolean;
  if (boolean && markers != 0) error("boolean attribute annotation must not contain $value");
  if (!boolean && (markers > 1 || (attr && markers == 0)))
    error("phrase must contain exactly one $value");
  return out;
}

void SortAnnotations(std::vector<Annotation> &annotations) {
  std::stable_sort(annotations.begin(), annotations.end(),
                   [](const Annotation &a, const Annotation &b) {
                     return std::tuple(a.table, a.attribute, static_cast<int>(a.pos), a.phrase) <
                            std::tuple(b.table, b.attribute, static_cast<int>(b.pos), b.phrase);
                   });
}

std::string WriteAnnotations(const std::vector<Annotation> &annotations) {
  std::string out;
  for (const Annotation &a : annotations) {
    ordered_json j;
    j["table"] = a.table;
    if (a.is_table()) j["attribute"] = nullptr;
    else j["attribute"] = a.attribute;
    j["pos"] = std::string(PosName(a.pos));
    j["phrase"] = a.phrase;
    j["source"] = std::string(SourceName(a.source));
    j["support_count"] = a.support_count;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<Annotation> ReadAnnotations(std::string_view text, const Schema *schema) {
  std::vector<Annotation> out;
  std::vector<Diagnostic> problems;
  std::size_t line_no = 0;
  for (const std::string &raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    auto error = [&](std::string m) { problems.push_back({Severity::kError, where, std::move(m)}); };
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error &) {
      error("malformed JSON record");
      continue;
    }
    if (!j.is_object()) {
      error("record must be an object");
      continue;
    }
    Annotation a;
    auto str = [&](const char *key, std::string &dst, bool required) {
      if (!j.contains(key) || j.at(key).is_null()) {
        if (required) error(std::string("missing '") + key + "'");
        return;
      }
      if (!j.at(key).is_string()) {
        error(std::string("'") + key + "' must be a string");
        return;
      }
      dst = j.at(key).get<std::string>();
    };
    std::string pos, source = "mined";
    str("table", a.table, true);
    str("attribute", a.attribute, false);
    str("pos", pos, true);
    str("phrase", a.phrase, true);
    str("source", source, false);
    if (auto p = PosFromName(pos)) a.pos = *p;
    else if (!pos.empty()) error("unknown pos '" + pos + "'");
    if (auto s = SourceFromName(source)) a.source = *s;
    else error("unknown source '" + source + "'");
    if (j.contains("support_count")) {
      if (!j.at("support_count").is_number_integer()) error("'support_count' must be an integer");
      else a.support_count = j.at("support_count").get<int>();
    }
    a.phrase = NormalizePhrase(a.phrase);
    auto diags = ValidateAnnotation(a, schema, where);
    problems.insert(problems.end(), diags.begin(), diags.end());
    out.push_back(std::move(a));
  }
  if (HasErrors(problems)) throw ValidationError("invalid annotation dump", problems);
  return out;
}

void WriteAnnotationsFile(const std::string &path, const std::vector<Annotation> &annotations) {
  WriteFile(path, WriteAnnotations(annotations));
}

std::vector<Annotation> ReadAnnotationsFile(const std::string &path, const Schema *schema) {
  return ReadAnnotations(ReadFile(path), schema);
}

}  // namespace qasynth
