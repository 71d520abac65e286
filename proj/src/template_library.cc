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

#include "qasynth/template_library.h"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "embedded_data.h"
#include "qasynth/text.h"

namespace qasynth {

namespace {

constexpr std::array<std::pair<Semantics, std::string_view>, 19> kSemanticsNames = {{
    {Semantics::kTable, "table"},       {Semantics::kFilter, "filter"},
    {Semantics::kSelect, "select"},     {Semantics::kProject, "project"},
    {Semantics::kSortAsc, "sort_asc"},  {Semantics::kSortDesc, "sort_desc"},
    {Semantics::kTop1Asc, "top1_asc"},  {Semantics::kTop1Desc, "top1_desc"},
    {Semantics::kCount, "count"},       {Semantics::kAvg, "avg"},
    {Semantics::kMax, "max"},           {Semantics::kMin, "min"},
    {Semantics::kSum, "sum"},           {Semantics::kValue, "value"},
    {Semantics::kValueGe, "value_ge"},  {Semantics::kValueLe, "value_le"},
    {Semantics::kValueGt, "value_gt"},  {Semantics::kValueLt, "value_lt"},
    {Semantics::kValueHere, "value_here"},
}};

const std::map<std::string, PosCategory, std::less<>> &AnnotationMarkers() {
  static const std::map<std::string, PosCategory, std::less<>> kMarkers = {
      {"$isnp", PosCategory::kIsANoun},       {"$np", PosCategory::kHasANoun},
      {"$vp", PosCategory::kActiveVerb},      {"$pvp", PosCategory::kPassiveVerb},
      {"$adj", PosCategory::kAdjective},      {"$prep", PosCategory::kPrepositional},
  };
  return kMarkers;
}

std::optional<SlotKind> PlainMarker(std::string_view w) {
  if (w == "$table") return SlotKind::kTable;
  if (w == "$set") return SlotKind::kSet;
  if (w == "$value") return SlotKind::kValue;
  if (w == "$attr") return SlotKind::kAttr;
  return std::nullopt;
}

struct PatternToken {
  std::string text;
  std::size_t offset;
};

std::vector<PatternToken> LexPattern(std::string_view s) {
  std::vector<PatternToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '?' && i + 1 < s.size() && s[i + 1] == '(') {
      out.push_back({"?(", i});
      i += 2;
    } else if (c == '(' || c == ')' || c == '|') {
      out.push_back({std::string(1, c), i});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
             s[j] != '(' && s[j] != ')' && s[j] != '|' &&
             !(s[j] == '?' && j + 1 < s.size() && s[j + 1] == '('))
        ++j;
      out.push_back({ToLower(s.substr(i, j - i)), i});
      i = j;
    }
  }
  return out;
}

class PatternParser {
 public:
  explicit PatternParser(std::string_view text) : text_(text), toks_(LexPattern(text)) {}

  std::vector<PatternNode> Parse() {
    auto seq = Sequence();
    if (pos_ < toks_.size()) Fail("unexpected '" + toks_[pos_].text + "'");
    if (seq.empty()) Fail("empty pattern");
    return seq;
  }

 private:
  [[noreturn]] void Fail(const std::string &message) const {
    std::size_t at = pos_ < toks_.size() ? toks_[pos_].offset : text_.size();
    throw ValidationError("pattern '" + std::string(text_) + "' offset " +
                          std::to_string(at) + ": " + message);
  }

  std::vector<PatternNode> Sequence() {
    std::vector<PatternNode> seq;
    while (pos_ < toks_.size() && toks_[pos_].text != ")" && toks_[pos_].text != "|") {
      const std::string &t = toks_[pos_].text;
      PatternNode node;
      if (t == "(" || t == "?(") {
        const bool optional = t == "?(";
        ++pos_;
        std::vector<std::vector<PatternNode>> branches;
        branches.push_back(Sequence());
        while (pos_ < toks_.size() && toks_[pos_].text == "|") {
          ++pos_;
          branches.push_back(Sequence());
        }
        if (pos_ >= toks_.size() || toks_[pos_].text != ")") Fail("missing ')'");
        ++pos_;
        for (const auto &b : branches)
          if (b.empty()) Fail("empty alternative");
        if (optional) {
          node.kind = PatternNode::Kind::kOptional;
          if (branches.size() == 1) {
            node.branches = std::move(branches);
          } else {
            PatternNode alt;
            alt.kind = PatternNode::Kind::kAlternation;
            alt.branches = std::move(branches);
            node.branches = {{std::move(alt)}};
          }
        } else if (branches.size() == 1) {
          for (PatternNode &n : branches[0]) seq.push_back(std::move(n));
          continue;
        } else {
          node.kind = PatternNode::Kind::kAlternation;
          node.branches = std::move(branches);
        }
      } else {
        ++pos_;
        if (auto slot = PlainMarker(t)) {
          node.kind = PatternNode::Kind::kSlot;
          node.slot = *slot;
        } else if (auto it = AnnotationMarkers().find(t); it != AnnotationMarkers().end()) {
          node.kind = PatternNode::Kind::kSlot;
          node.slot = SlotKind::kAnnotation;
          node.pos = it->second;
        } else {
          node.kind = PatternNode::Kind::kWord;
          node.word = t;  // unknown "$" markers are reported by ValidateLibrary
        }
      }
      seq.push_back(std::move(node));
    }
    return seq;
  }

  std::string_view text_;
  std::vector<PatternToken> toks_;
  std::size_t pos_ = 0;
};

void Expand(const std::vector<PatternNode> &nodes, std::size_t i, std::vector<PatternItem> &cur,
            std::vector<std::vector<PatternItem>> &out) {
  if (i == nodes.size()) {
    out.push_back(cur);
    return;
  }
  const PatternNode &n = nodes[i];
  switch (n.kind) {
    case PatternNode::Kind::kWord:
      cur.push_back({false, n.word});
      Expand(nodes, i + 1, cur, out);
      cur.pop_back();
      return;
    case PatternNode::Kind::kSlot:
      cur.push_back({true, "", n.slot, n.pos});
      Expand(nodes, i + 1, cur, out);
      cur.pop_back();
      return;
    case PatternNode::Kind::kAlternation:
    case PatternNode::Kind::kOptional: {
      std::vector<std::vector<PatternItem>> heads;
      for (const auto &b : n.branches) {
        std::vector<PatternItem> scratch;
        Expand(b, 0, scratch, heads);
      }
      if (n.kind == PatternNode::Kind::kOptional) heads.insert(heads.begin(), std::vector<PatternItem>{});
      for (const auto &h : heads) {
        const std::size_t mark = cur.size();
        cur.insert(cur.end(), h.begin(), h.end());
        Expand(nodes, i + 1, cur, out);
        cur.resize(mark);
      }
      return;
    }
  }
}

template <typename T, typename F>
std::vector<T> NameList(const nlohmann::json &j, const std::string &where, F from_name) {
  std::vector<T> out;
  if (!j.is_array()) throw ValidationError(where + " must be a list");
  for (const auto &e : j) {
    if (!e.is_string()) throw ValidationError(where + " must contain strings");
    auto v = from_name(e.template get<std::string>());
    if (!v) throw ValidationError(where + ": unknown name '" + e.template get<std::string>() + "'");
    out.push_back(*v);
  }
  return out;
}

std::optional<RuleCategory> CategoryFromName(std::string_view s) {
  if (s == "value") return RuleCategory::kValue;
  if (s == "set") return RuleCategory::kSet;
  if (s == "root") return RuleCategory::kRoot;
  return std::nullopt;
}

std::optional<TypeKind> KindFromName(std::string_view s) {
  for (TypeKind k : {TypeKind::kString, TypeKind::kNumber, TypeKind::kEntity, TypeKind::kLocation,
                     TypeKind::kTime, TypeKind::kDate, TypeKind::kBoolean, TypeKind::kEnum})
    if (TypeKindName(k) == s) return k;
  return std::nullopt;
}

bool IsValueSemantics(Semantics s) {
  return s == Semantics::kValue || s == Semantics::kValueGe || s == Semantics::kValueLe ||
         s == Semantics::kValueGt || s == Semantics::kValueLt || s == Semantics::kValueHere;
}

bool NeedsAttr(Semantics s) {
  switch (s) {
    case Semantics::kProject:
    case Semantics::kSortAsc:
    case Semantics::kSortDesc:
    case Semantics::kTop1Asc:
    case Semantics::kTop1Desc:
    case Semantics::kAvg:
    case Semantics::kMax:
    case Semantics::kMin:
    case Semantics::kSum:
      return true;
    default:
      return false;
  }
}

bool IsOrderableKind(TypeKind k) {
  return k == TypeKind::kNumber || k == TypeKind::kDate || k == TypeKind::kTime;
}

}  // namespace

std::string_view SemanticsName(Semantics s) {
  for (const auto &[v, name] : kSemanticsNames)
    if (v == s) return name;
  return "select";
}

std::optional<Semantics> SemanticsFromName(std::string_view name) {
  for (const auto &[v, n] : kSemanticsNames)
    if (n == name) return v;
  return std::nullopt;
}

std::optional<PosCategory> TemplateRule::annotation_slot() const {
  for (const auto &seq : ExpandPattern(pattern))
    for (const PatternItem &item : seq)
      if (item.is_slot && item.slot == SlotKind::kAnnotation) return item.pos;
  return std::nullopt;
}

bool TemplateRule::Admits(TypeKind kind) const {
  return types.empty() || std::find(types.begin(), types.end(), kind) != types.end();
}

bool TemplateRule::Admits(PosCategory category) const {
  return pos.empty() || std::find(pos.begin(), pos.end(), category) != pos.end();
}

std::vector<PatternNode> ParsePattern(std::string_view text) {
  return PatternParser(text).Parse();
}

std::vector<std::vector<PatternItem>> ExpandPattern(const std::vector<PatternNode> &pattern) {
  std::vector<std::vector<PatternItem>> out;
  std::vector<PatternItem> cur;
  Expand(pattern, 0, cur, out);
  return out;
}

const TemplateRule *TemplateLibrary::Find(std::string_view id) const {
  for (const TemplateRule &r : rules)
    if (r.id == id) return &r;
  return nullptr;
}

TemplateLibrary TemplateLibrary::Parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ValidationError(std::string("template library: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rules") || !doc.at("rules").is_array())
    throw ValidationError("template library: expected an object with a 'rules' list");
  TemplateLibrary lib;
  if (doc.contains("max_depth")) {
    if (!doc.at("max_depth").is_number_integer())
      throw ValidationError("template library: 'max_depth' must be an integer");
    lib.max_depth = doc.at("max_depth").get<int>();
  }
  const auto &rules = doc.at("rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string where = "rules[" + std::to_string(i) + "]";
    const auto &r = rules[i];
    auto field = [&](const char *key) -> std::string {
      if (!r.is_object() || !r.contains(key) || !r.at(key).is_string())
        throw ValidationError(where + ": missing string field '" + key + "'");
      return r.at(key).get<std::string>();
    };
    TemplateRule rule;
    rule.id = field("id");
    const std::string named = where + " (" + rule.id + ")";
    auto category = CategoryFromName(field("category"));
    if (!category) throw ValidationError(named + ": unknown category '" + field("category") + "'");
    rule.category = *category;
    auto semantics = SemanticsFromName(field("semantics"));
    if (!semantics)
      throw ValidationError(named + ": unknown semantics '" + field("semantics") + "'");
    rule.semantics = *semantics;
    rule.pattern_text = field("pattern");
    try {
      rule.pattern = ParsePattern(rule.pattern_text);
    } catch (const ValidationError &e) {
      throw ValidationError(named + ": " + e.what());
    }
    if (r.contains("types"))
      rule.types = NameList<TypeKind>(r.at("types"), named + ".types", KindFromName);
    if (r.contains("pos"))
      rule.pos = NameList<PosCategory>(r.at("pos"), named + ".pos",
                                       [](std::string_view s) { return PosFromName(s); });
    lib.rules.push_back(std::move(rule));
  }
  return lib;
}

std::string_view TemplateLibrary::StarterText() { return embedded::starter_library(); }

const TemplateLibrary &TemplateLibrary::Starter() {
  static const TemplateLibrary kStarter = LoadLibrary(embedded::starter_library());
  return kStarter;
}

TemplateLibrary LoadLibrary(std::string_view json_text) {
  TemplateLibrary lib = TemplateLibrary::Parse(json_text);
  auto diags = ValidateLibrary(lib);
  if (HasErrors(diags)) throw ValidationError("template library is invalid", diags);
  return lib;
}

TemplateLibrary LoadLibraryFile(const std::string &path) { return LoadLibrary(ReadFile(path)); }

std::vector<Diagnostic> ValidateLibrary(const TemplateLibrary &library) {
  std::vector<Diagnostic> out;
  auto add = [&](Severity sev, const std::string &where, std::string message) {
    out.push_back({sev, where, std::move(message)});
  };
  // Height of the shortest one-atom derivation: root, filtered set, annotation,
  // value expression, literal.
  constexpr int kMinFilterDepth = 5;
  if (library.max_depth < 2)
    add(Severity::kError, "max_depth", "max_depth must be at least 2");
  else if (library.max_depth < kMinFilterDepth)
    add(Severity::kError, "max_depth",
        "max_depth " + std::to_string(library.max_depth) +
            " leaves every filter rule unreachable (needs " + std::to_string(kMinFilterDepth) + ")");

  std::set<std::string> ids;
  std::set<PosCategory> covered;
  bool has_root = false, has_table = false, has_default_value = false;
  for (const TemplateRule &rule : library.rules) {
    const std::string where = "rule '" + rule.id + "'";
    auto error = [&](std::string m) { add(Severity::kError, where, std::move(m)); };
    if (rule.id.empty()) error("rule id is empty");
    if (!ids.insert(rule.id).second) error("duplicate rule id");

    for (const auto &seq : ExpandPattern(rule.pattern)) {
      int tables = 0, sets = 0, values = 0, attrs = 0, annotations = 0, words = 0;
      for (const PatternItem &item : seq) {
        if (!item.is_slot) {
          ++words;
          if (!item.word.empty() && item.word[0] == '$')
            error("references undefined slot '" + item.word + "'");
          continue;
        }
        switch (item.slot) {
          case SlotKind::kTable: ++tables; break;
          case SlotKind::kSet: ++sets; break;
          case SlotKind::kValue: ++values; break;
          case SlotKind::kAttr: ++attrs; break;
          case SlotKind::kAnnotation: ++annotations; break;
        }
      }
      const int slots = tables + sets + values + attrs + annotations;
      switch (rule.category) {
        case RuleCategory::kValue:
          if (!IsValueSemantics(rule.semantics))
            error("value rule needs a value semantics, not '" +
                  std::string(SemanticsName(rule.semantics)) + "'");
          else if (rule.semantics == Semantics::kValueHere ? slots != 0
                                                            : (values != 1 || slots != 1))
            error(rule.semantics == Semantics::kValueHere
                      ? "value_here rule takes no slots"
                      : "value rule needs exactly one $value and no other slot");
          if (rule.semantics == Semantics::kValueHere && words == 0)
            error("value_here rule needs at least one word");
          break;
        case RuleCategory::kSet:
          if (rule.semantics == Semantics::kTable) {
            if (tables != 1 || slots != 1) error("table rule needs exactly one $table and no other slot");
          } else if (rule.semantics == Semantics::kFilter) {
            if (sets != 1 || annotations != 1 || slots != 2)
              error("filter rule needs exactly one $set and one annotation slot");
          } else {
            error("set rule semantics must be 'table' or 'filter'");
          }
          break;
        case RuleCategory::kRoot:
          if (IsValueSemantics(rule.semantics) || rule.semantics == Semantics::kTable ||
              rule.semantics == Semantics::kFilter) {
            error("root rule cannot use semantics '" + std::string(SemanticsName(rule.semantics)) + "'");
          } else if (sets != 1 || tables + values + annotations != 0) {
            error("root rule needs exactly one $set and no $table, $value or annotation slot");
          } else if (NeedsAttr(rule.semantics) ? attrs != 1 : attrs != 0) {
            error(NeedsAttr(rule.semantics) ? "root rule needs exactly one $attr"
                                            : "root rule takes no $attr");
          }
          break;
      }
    }

    switch (rule.category) {
      case RuleCategory::kValue: {
        if (rule.semantics == Semantics::kValue && rule.types.empty() && rule.pos.empty())
          has_default_value = true;
        const bool comparative = rule.semantics == Semantics::kValueGe ||
                                 rule.semantics == Semantics::kValueLe ||
                                 rule.semantics == Semantics::kValueGt ||
                                 rule.semantics == Semantics::kValueLt;
        if (comparative &&
            (rule.types.empty() || !std::all_of(rule.types.begin(), rule.types.end(), IsOrderableKind)))
          error("comparison rule must be restricted to number, date or time types");
        if (rule.semantics == Semantics::kValueHere &&
            (rule.types != std::vector<TypeKind>{TypeKind::kLocation}))
          error("value_here rule must be restricted to the location type");
        if (std::find(rule.pos.begin(), rule.pos.end(), PosCategory::kAdjective) != rule.pos.end() &&
            rule.semantics != Semantics::kValue)
          add(Severity::kWarning, where, "adjective slots only use plain values; rule is unreachable there");
        break;
      }
      case RuleCategory::kSet:
        if (rule.semantics == Semantics::kTable) has_table = true;
        if (auto p = rule.annotation_slot(); p && rule.semantics == Semantics::kFilter)
          covered.insert(*p);
        break;
      case RuleCategory::kRoot:
        has_root = true;
        break;
    }
  }
  if (!has_root) add(Severity::kError, "rules", "library has no root rule");
  if (!has_table) add(Severity::kError, "rules", "library has no table rule; every set rule is unreachable");
  if (!has_default_value)
    add(Severity::kError, "rules", "library has no unrestricted 'value' rule; annotation slots are unreachable");
  for (PosCategory p : kAllPosCategories)
    if (!covered.count(p))
      add(Severity::kError, "rules", "no filter rule for category " + std::string(PosName(p)));
  return out;
}

std::string Pluralize(std::string_view phrase) {
  std::vector<std::string> words = SplitWhitespace(phrase);
  if (words.empty()) return {};
  static const std::map<std::string, std::string, std::less<>> kIrregular = {
      {"person", "people"}, {"people", "people"}, {"man", "men"},
      {"woman", "women"},   {"child", "children"}, {"alumnus", "alumni"},
      {"staff", "staff"},   {"series", "series"},  {"news", "news"},
      {"species", "species"}, {"mouse", "mice"},   {"foot", "feet"},
  };
  std::string &w = words.back();
  auto ends = [&](std::string_view s) {
    return w.size() >= s.size() && std::string_view(w).substr(w.size() - s.size()) == s;
  };
  auto vowel = [](char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; };
  if (auto it = kIrregular.find(w); it != kIrregular.end()) w = it->second;
  else if (w.size() > 1 && w.back() == 'y' && !vowel(w[w.size() - 2])) w = w.substr(0, w.size() - 1) + "ies";
  else if (ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh")) w += "es";
  else w += "s";
  return Join(words, " ");
}

}  // namespace qasynth
