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

#ifndef QASYNTH_SCHEMA_H_
#define QASYNTH_SCHEMA_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qasynth/errors.h"

namespace qasynth {

// The six phrase categories an attribute annotation can take.
enum class PosCategory {
  kIsANoun,
  kHasANoun,
  kActiveVerb,
  kPassiveVerb,
  kAdjective,
  kPrepositional,
};

inline constexpr std::array<PosCategory, 6> kAllPosCategories = {
    PosCategory::kIsANoun,     PosCategory::kHasANoun,
    PosCategory::kActiveVerb,  PosCategory::kPassiveVerb,
    PosCategory::kAdjective,   PosCategory::kPrepositional,
};

// "is_a_noun", "has_a_noun", ... as used in files.
std::string_view PosName(PosCategory pos);
std::optional<PosCategory> PosFromName(std::string_view name);

enum class TypeKind {
  kString,
  kNumber,
  kEntity,
  kLocation,
  kTime,
  kDate,
  kBoolean,
  kEnum,
};

std::string_view TypeKindName(TypeKind kind);

struct SemanticType {
  TypeKind kind = TypeKind::kString;
  std::string unit;        // kNumber only; may be empty
  std::string ref_table;   // kEntity only

  bool IsOrderable() const {
    return kind == TypeKind::kNumber || kind == TypeKind::kDate ||
           kind == TypeKind::kTime;
  }
  bool IsNumeric() const { return kind == TypeKind::kNumber; }
  // Spelling used in schema files: "string", "number", "entity:Organization".
  std::string ToString() const;
  static std::optional<SemanticType> Parse(std::string_view text);

  bool operator==(const SemanticType &) const = default;
};

// An example database value. `raw` holds the typed payload: double for
// numbers, bool for booleans, the surface string otherwise.
struct Value {
  TypeKind kind = TypeKind::kString;
  std::string surface;
  std::variant<std::string, double, bool> raw;

  bool operator==(const Value &) const = default;
};

struct Attribute {
  std::string name;
  SemanticType type;
  std::vector<Value> example_values;
  std::optional<std::string> canonical_override;

  bool operator==(const Attribute &) const = default;
};

struct Table {
  std::string name;
  std::optional<std::string> canonical_override;
  std::vector<Attribute> attributes;

  const Attribute *FindAttribute(std::string_view name) const;
  bool operator==(const Table &) const = default;
};

struct Schema {
  std::vector<Table> tables;

  const Table *FindTable(std::string_view name) const;
  const Attribute *FindAttribute(std::string_view table,
                                 std::string_view attribute) const;
  bool operator==(const Schema &) const = default;
};

// Identifies an attribute within a schema.
struct AttributeRef {
  std::string table;
  std::string attribute;

  std::string ToString() const { return table + "." + attribute; }
  auto operator<=>(const AttributeRef &) const = default;
};

struct SchemaOptions {
  // Maximum number of example values kept per attribute.
  std::size_t max_example_values = 10;
};

// Parses a schema document without enforcing invariants (structure errors
// still throw). Used by LoadSchema and by tests that build invalid mutants.
Schema ParseSchemaDocument(std::string_view text);

// Every invariant violation as an error diagnostic; over-cap value lists as
// warnings. Empty iff the schema is valid and within the cap.
std::vector<Diagnostic> ValidateSchema(const Schema &schema,
                                       const SchemaOptions &options = {});

// Parses, validates and truncates example values to the configured cap.
// Throws ValidationError carrying every error diagnostic. Warnings (such as
// truncation notes) are appended to `warnings` when given.
Schema LoadSchema(std::string_view text, const SchemaOptions &options = {},
                  std::vector<Diagnostic> *warnings = nullptr);
Schema LoadSchemaFile(const std::string &path,
                      const SchemaOptions &options = {},
                      std::vector<Diagnostic> *warnings = nullptr);

// Serializes to the schema document format; LoadSchema(SerializeSchema(s))
// reproduces s for valid schemas.
std::string SerializeSchema(const Schema &schema);

// Builds a Value of the given type from its surface spelling. Returns
// nullopt when the text does not conform.
std::optional<Value> MakeValue(const SemanticType &type, std::string_view text);

}  // namespace qasynth

#endif  // QASYNTH_SCHEMA_H_
