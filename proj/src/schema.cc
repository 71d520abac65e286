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

#include "qasynth/schema.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qasynth/text.h"

namespace qasynth {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<PosCategory, std::string_view>, 6> kPosNames = {{
    {PosCategory::kIsANoun, "is_a_noun"},
    {PosCategory::kHasANoun, "has_a_noun"},
    {PosCategory::kActiveVerb, "active_verb"},
    {PosCategory::kPassiveVerb, "passive_verb"},
    {PosCategory::kAdjective, "adjective"},
    {PosCategory::kPrepositional, "prepositional"},
}};

constexpr std::array<std::pair<TypeKind, std::string_view>, 8> kTypeNames = {{
    {TypeKind::kString, "string"},
    {TypeKind::kNumber, "number"},
    {TypeKind::kEntity, "entity"},
    {TypeKind::kLocation, "location"},
    {TypeKind::kTime, "time"},
    {TypeKind::kDate, "date"},
    {TypeKind::kBoolean, "boolean"},
    {TypeKind::kEnum, "enum"},
}};

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

// HH:MM, 24-hour clock.
bool IsTime(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') return false;
  if (!AllDigits(s.substr(0, 2)) || !AllDigits(s.substr(3, 2))) return false;
  int h = (s[0] - '0') * 10 + (s[1] - '0');
  int m = (s[3] - '0') * 10 + (s[4] - '0');
  return h < 24 && m < 60;
}

// YYYY-MM-DD.
bool IsDate(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  if (!AllDigits(s.substr(0, 4)) || !AllDigits(s.substr(5, 2)) ||
      !AllDigits(s.substr(8, 2)))
    return false;
  int month = (s[5] - '0') * 10 + (s[6] - '0');
  int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::string Path(std::size_t table) {
  return "tables[" + std::to_string(table) + "]";
}
std::string Path(std::size_t table, std::size_t attr) {
  return Path(table) + ".attributes[" + std::to_string(attr) + "]";
}

// Renders a JSON scalar as the surface text MakeValue expects.
std::optional<std::string> ScalarSurface(const json &j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return FormatNumber(j.get<double>());
  return std::nullopt;
}

}  // namespace

std::string_view PosName(PosCategory pos) {
  for (const auto &[p, name] : kPosNames)
    if (p == pos) return name;
  return "is_a_noun";
}

std::optional<PosCategory> PosFromName(std::string_view name) {
  for (const auto &[p, n] : kPosNames)
    if (n == name) return p;
  return std::nullopt;
}

std::string_view TypeKindName(TypeKind kind) {
  for (const auto &[k, name] : kTypeNames)
    if (k == kind) return name;
  return "string";
}

std::string SemanticType::ToString() const {
  std::string out(TypeKindName(kind));
  if (kind == TypeKind::kEntity) out += ":" + ref_table;
  return out;
}

std::optional<SemanticType> SemanticType::Parse(std::string_view text) {
  SemanticType type;
  std::string_view head = text;
  std::string_view tail;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    tail = text.substr(colon + 1);
  }
  bool found = false;
  for (const auto &[k, name] : kTypeNames) {
    if (name == head) {
      type.kind = k;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  if (type.kind == TypeKind::kEntity) {
    if (tail.empty()) return std::nullopt;
    type.ref_table = std::string(tail);
  } else if (!tail.empty()) {
    return std::nullopt;
  }
  return type;
}

std::optional<Value> MakeValue(const SemanticType &type,
                               std::string_view text) {
  Value v;
  v.kind = type.kind;
  v.surface = std::string(Trim(text));
  if (v.surface.empty()) return std::nullopt;
  switch (type.kind) {
    case TypeKind::kNumber: {
      auto number = ParseNumber(v.surface);
      if (!number || !std::isfinite(*number)) return std::nullopt;
      v.raw = *number;
      v.surface = FormatNumber(*number);
      return v;
    }
    case TypeKind::kBoolean:
      if (v.surface == "true") v.raw = true;
      else if (v.surface == "false") v.raw = false;
      else return std::nullopt;
      return v;
    case TypeKind::kTime:
      if (!IsTime(v.surface)) return std::nullopt;
      break;
    case TypeKind::kDate:
      if (!IsDate(v.surface)) return std::nullopt;
      break;
    default:
      break;
  }
  v.raw = v.surface;
  return v;
}

const Attribute *Table::FindAttribute(std::string_view n) const {
  for (const Attribute &a : attributes)
    if (a.name == n) return &a;
  return nullptr;
}

const Table *Schema::FindTable(std::string_view n) const {
  for (const Table &t : tables)
    if (t.name == n) return &t;
  return nullptr;
}

const Attribute *Schema::FindAttribute(std::string_view table,
                                       std::string_view attribute) const {
  const Table *t = FindTable(table);
  return t ? t->FindAttribute(attribute) : nullptr;
}

Schema ParseSchemaDocument(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("schema document is not well-formed: ") +
                          e.what());
  }
  std::vector<Diagnostic> errors;
  auto fail = [&](std::string path, std::string message) {
    errors.push_back({Severity::kError, std::move(path), std::move(message)});
  };

  Schema schema;
  if (!doc.is_object() || !doc.contains("tables") || !doc["tables"].is_array()) {
    fail("tables", "missing top-level 'tables' list");
    throw ValidationError("invalid schema", errors);
  }
  const json &tables = doc["tables"];
  for (std::size_t ti = 0; ti < tables.size(); ++ti) {
    const json &jt = tables[ti];
    if (!jt.is_object() || !jt.contains("name") || !jt["name"].is_string()) {
      fail(Path(ti) + ".name", "table requires a string 'name'");
      continue;
    }
    Table table;
    table.name = jt["name"].get<std::string>();
    if (jt.contains("canonical")) {
      if (!jt["canonical"].is_string())
        fail(Path(ti) + ".canonical", "must be a string");
      else
        table.canonical_override = jt["canonical"].get<std::string>();
    }
    if (jt.contains("attributes") && !jt["attributes"].is_array())
      fail(Path(ti) + ".attributes", "must be a list");
    const json empty = json::array();
    const json &attrs = jt.contains("attributes") && jt["attributes"].is_array()
                            ? jt["attributes"]
                            : empty;
    for (std::size_t ai = 0; ai < attrs.size(); ++ai) {
      const json &ja = attrs[ai];
      const std::string path = Path(ti, ai);
      if (!ja.is_object() || !ja.contains("name") || !ja["name"].is_string()) {
        fail(path + ".name", "attribute requires a string 'name'");
        continue;
      }
      Attribute attr;
      attr.name = ja["name"].get<std::string>();
      std::string type_text =
          ja.contains("type") && ja["type"].is_string()
              ? ja["type"].get<std::string>()
              : std::string();
      auto type = SemanticType::Parse(type_text);
      if (!type) {
        fail(path + ".type", "unknown semantic type '" + type_text + "'");
        continue;
      }
      attr.type = *type;
      if (ja.contains("unit")) {
        if (!ja["unit"].is_string())
          fail(path + ".unit", "must be a string");
        else if (attr.type.kind != TypeKind::kNumber)
          fail(path + ".unit", "unit is only allowed on number attributes");
        else
          attr.type.unit = ja["unit"].get<std::string>();
      }
      if (ja.contains("canonical")) {
        if (!ja["canonical"].is_string())
          fail(path + ".canonical", "must be a string");
        else
          attr.canonical_override = ja["canonical"].get<std::string>();
      }
      if (ja.contains("values")) {
        if (!ja["values"].is_array()) {
          fail(path + ".values", "must be a list");
        } else {
          const json &values = ja["values"];
          for (std::size_t vi = 0; vi < values.size(); ++vi) {
            const std::string vpath = path + ".values[" + std::to_string(vi) + "]";
            auto surface = ScalarSurface(values[vi]);
            std::optional<Value> value =
                surface ? MakeValue(attr.type, *surface) : std::nullopt;
            if (!value) {
              fail(vpath, "value " + values[vi].dump() +
                              " does not conform to type " +
                              attr.type.ToString());
              continue;
            }
            attr.example_values.push_back(std::move(*value));
          }
        }
      }
      table.attributes.push_back(std::move(attr));
    }
    schema.tables.push_back(std::move(table));
  }
  if (!errors.empty()) throw ValidationError("invalid schema", errors);
  return schema;
}

std::vector<Diagnostic> ValidateSchema(const Schema &schema,
                                       const SchemaOptions &options) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string path, std::string message) {
    out.push_back({Severity::kError, std::move(path), std::move(message)});
  };
  if (schema.tables.empty()) error("tables", "schema must be non-empty");

  std::set<std::string> table_names;
  for (std::size_t ti = 0; ti < schema.tables.size(); ++ti) {
    const Table &table = schema.tables[ti];
    if (table.name.empty()) error(Path(ti) + ".name", "table name is empty");
    if (!table_names.insert(table.name).second)
      error(Path(ti) + ".name", "duplicate table name '" + table.name + "'");
    if (table.canonical_override && Trim(*table.canonical_override).empty())
      error(Path(ti) + ".canonical", "canonical override is empty");

    std::set<std::string> attr_names;
    for (std::size_t ai = 0; ai < table.attributes.size(); ++ai) {
      const Attribute &attr = table.attributes[ai];
      const std::string path = Path(ti, ai);
      if (attr.name.empty()) error(path + ".name", "attribute name is empty");
      if (!attr_names.insert(attr.name).second)
        error(path + ".name", "duplicate attribute name '" + attr.name +
                                  "' in table '" + table.name + "'");
      if (attr.canonical_override && Trim(*attr.canonical_override).empty())
        error(path + ".canonical", "canonical override is empty");
      if (attr.type.kind == TypeKind::kEntity && attr.type.ref_table.empty())
        error(path + ".type", "entity type requires a referenced table");
      if (!attr.type.unit.empty() && attr.type.kind != TypeKind::kNumber)
        error(path + ".unit", "unit is only allowed on number attributes");
      if (attr.example_values.empty() && attr.type.kind != TypeKind::kBoolean)
        error(path + ".values",
              "attribute '" + attr.name + "' needs at least one example value");
      std::set<std::string> seen;
      for (std::size_t vi = 0; vi < attr.example_values.size(); ++vi) {
        const Value &v = attr.example_values[vi];
        const std::string vpath = path + ".values[" + std::to_string(vi) + "]";
        auto expected = MakeValue(attr.type, v.surface);
        if (v.surface.empty())
          error(vpath, "value surface is empty");
        else if (v.kind != attr.type.kind || !expected || !(*expected == v))
          error(vpath, "value '" + v.surface + "' does not conform to type " +
                           attr.type.ToString());
        if (!seen.insert(ToLower(v.surface)).second)
          error(vpath, "duplicate example value '" + v.surface + "'");
      }
      if (attr.example_values.size() > options.max_example_values) {
        out.push_back({Severity::kWarning, path + ".values",
                       std::to_string(attr.example_values.size()) +
                           " example values exceed the cap of " +
                           std::to_string(options.max_example_values) +
                           "; truncated to the first " +
                           std::to_string(options.max_example_values)});
      }
    }
  }
  return out;
}

Schema LoadSchema(std::string_view text, const SchemaOptions &options,
                  std::vector<Diagnostic> *warnings) {
  Schema schema = ParseSchemaDocument(text);
  std::vector<Diagnostic> diagnostics = ValidateSchema(schema, options);
  if (HasErrors(diagnostics)) throw ValidationError("invalid schema", diagnostics);
  for (Table &table : schema.tables)
    for (Attribute &attr : table.attributes)
      if (attr.example_values.size() > options.max_example_values)
        attr.example_values.resize(options.max_example_values);
  if (warnings)
    warnings->insert(warnings->end(), diagnostics.begin(), diagnostics.end());
  return schema;
}

Schema LoadSchemaFile(const std::string &path, const SchemaOptions &options,
                      std::vector<Diagnostic> *warnings) {
  return LoadSchema(ReadFile(path), options, warnings);
}

std::string SerializeSchema(const Schema &schema) {
  json doc;
  doc["tables"] = json::array();
  for (const Table &table : schema.tables) {
    json jt;
    jt["name"] = table.name;
    if (table.canonical_override) jt["canonical"] = *table.canonical_override;
    jt["attributes"] = json::array();
    for (const Attribute &attr : table.attributes) {
      json ja;
      ja["name"] = attr.name;
      ja["type"] = attr.type.ToString();
      if (!attr.type.unit.empty()) ja["unit"] = attr.type.unit;
      ja["values"] = json::array();
      for (const Value &v : attr.example_values) {
        if (const double *d = std::get_if<double>(&v.raw))
          ja["values"].push_back(*d);
        else if (const bool *b = std::get_if<bool>(&v.raw))
          ja["values"].push_back(*b);
        else
          ja["values"].push_back(v.surface);
      }
      if (attr.canonical_override) ja["canonical"] = *attr.canonical_override;
      jt["attributes"].push_back(std::move(ja));
    }
    doc["tables"].push_back(std::move(jt));
  }
  return doc.dump(2) + "\n";
}

}  // namespace qasynth
