//
// Copyright 2026 The AnonRepro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ANONREPRO_ORACLE_H_
#define ANONREPRO_ORACLE_H_

// Declarative bug oracles: a predicate over the concrete values of one or
// more input fields that is true exactly when the modeled fault triggers.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anonrepro/char_class.h"
#include "anonrepro/distribution.h"
#include "anonrepro/error.h"
#include "anonrepro/json_util.h"
#include "anonrepro/trace.h"
#include "anonrepro/trace_json.h"

namespace anonrepro {

// A field, or one component of a tuple field, written "date[2]".
struct FieldRef {
  std::string field;
  std::optional<size_t> component;
  size_t field_index = 0;  // resolved against the oracle's field list

  std::string ToString() const {
    return component ? field + "[" + std::to_string(*component) + "]" : field;
  }
};

enum class ExprOp {
  kTrue,
  kFalse,
  kEquals,
  kInRange,
  kContains,
  kMatchesClass,
  kEndsWith,
  kCharAt,
  kIsLeapDay,
  kDecimalSeparatorIs,
  kLengthGt,
  kAnd,
  kOr,
  kNot,
};

struct OracleExpr {
  ExprOp op = ExprOp::kTrue;
  std::vector<FieldRef> refs;  // leap day: day, month, year
  std::optional<DataValue> literal;
  double lo = 0;
  double hi = 0;
  std::string text;  // substring, suffix, separator or allowed chars
  CharClass char_class = CharClass::kPrintable;
  int64_t number = 0;  // char_at index or length_gt bound
  std::vector<OracleExpr> args;
};

struct OracleField {
  std::string name;
  DomainSpec domain;
};

struct BugOracle {
  std::string name;
  std::vector<OracleField> fields;
  OracleExpr predicate;

  size_t FieldIndex(std::string_view field) const {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].name == field) return i;
    }
    return fields.size();
  }
};

inline bool IsLeapYear(int64_t year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

namespace internal {

struct OpName {
  ExprOp op;
  std::string_view name;
};

inline constexpr OpName kOpNames[] = {
    {ExprOp::kTrue, "true"},
    {ExprOp::kFalse, "false"},
    {ExprOp::kEquals, "equals"},
    {ExprOp::kInRange, "in_range"},
    {ExprOp::kContains, "contains"},
    {ExprOp::kMatchesClass, "matches_class"},
    {ExprOp::kEndsWith, "ends_with"},
    {ExprOp::kCharAt, "char_at"},
    {ExprOp::kIsLeapDay, "is_leap_day"},
    {ExprOp::kDecimalSeparatorIs, "decimal_separator_is"},
    {ExprOp::kLengthGt, "length_gt"},
    {ExprOp::kAnd, "and"},
    {ExprOp::kOr, "or"},
    {ExprOp::kNot, "not"},
};

inline std::string_view OpToName(ExprOp op) {
  for (const auto& e : kOpNames) {
    if (e.op == op) return e.name;
  }
  return "";
}

inline std::optional<ExprOp> OpFromName(std::string_view name) {
  for (const auto& e : kOpNames) {
    if (e.name == name) return e.op;
  }
  return std::nullopt;
}

inline FieldRef ParseFieldRef(const std::string& s, const std::string& path) {
  FieldRef ref;
  const auto open = s.find('[');
  if (open == std::string::npos) {
    ref.field = s;
  } else {
    if (s.back() != ']' || open + 2 > s.size() - 1) {
      json_util::Fail(path, "malformed field reference '" + s + "'");
    }
    ref.field = s.substr(0, open);
    const std::string idx = s.substr(open + 1, s.size() - open - 2);
    for (char c : idx) {
      if (c < '0' || c > '9') {
        json_util::Fail(path, "malformed field reference '" + s + "'");
      }
    }
    ref.component = static_cast<size_t>(std::stoul(idx));
  }
  if (ref.field.empty()) json_util::Fail(path, "empty field reference");
  return ref;
}

// Domain of the scalar a reference selects, after resolving it.
inline const DomainSpec& ResolveRef(FieldRef& ref, const BugOracle& oracle) {
  ref.field_index = oracle.FieldIndex(ref.field);
  if (ref.field_index == oracle.fields.size()) {
    throw Error(ErrorCode::kValidation,
                "predicate references undeclared field '" + ref.field + "'");
  }
  const DomainSpec& domain = oracle.fields[ref.field_index].domain;
  if (domain.is_tuple()) {
    if (!ref.component ||
        *ref.component >= domain.tuple().components.size()) {
      throw Error(ErrorCode::kValidation,
                  "'" + ref.ToString() + "' must select a tuple component");
    }
    return domain.tuple().components[*ref.component];
  }
  if (ref.component) {
    throw Error(ErrorCode::kValidation,
                "'" + ref.ToString() + "' indexes a non-tuple field");
  }
  return domain;
}

inline const DataValue& Select(const DataValue& value, const FieldRef& ref) {
  return ref.component ? value.tuple().components[*ref.component] : value;
}

template <typename Accessor>
bool EvalExpr(const OracleExpr& e, const Accessor& at) {
  auto scalar = [&](size_t i) -> const DataValue& {
    const FieldRef& ref = e.refs[i];
    return Select(at(ref.field_index), ref);
  };
  switch (e.op) {
    case ExprOp::kTrue: return true;
    case ExprOp::kFalse: return false;
    case ExprOp::kEquals: {
      const DataValue& v = scalar(0);
      if (v.is_continuous()) {
        return v.continuous().value == e.literal->continuous().value;
      }
      return Literal(v) == Literal(*e.literal);
    }
    case ExprOp::kInRange: {
      const double x = scalar(0).continuous().value;
      return x >= e.lo && x <= e.hi;
    }
    case ExprOp::kContains:
      return Literal(scalar(0)).find(e.text) != std::string::npos;
    case ExprOp::kMatchesClass: {
      const std::string s = Literal(scalar(0));
      for (char c : s) {
        if (!InCharClass(e.char_class, c)) return false;
      }
      return true;
    }
    case ExprOp::kEndsWith: {
      const std::string s = Literal(scalar(0));
      return s.size() >= e.text.size() &&
             s.compare(s.size() - e.text.size(), e.text.size(), e.text) == 0;
    }
    case ExprOp::kCharAt: {
      const std::string s = Literal(scalar(0));
      const auto n = static_cast<int64_t>(s.size());
      const int64_t i = e.number < 0 ? n + e.number : e.number;
      if (i < 0 || i >= n) return false;
      return e.text.find(s[static_cast<size_t>(i)]) != std::string::npos;
    }
    case ExprOp::kIsLeapDay: {
      const double day = scalar(0).continuous().value;
      const double month = scalar(1).continuous().value;
      const double year = scalar(2).continuous().value;
      return day == 29 && month == 2 &&
             IsLeapYear(static_cast<int64_t>(year));
    }
    case ExprOp::kDecimalSeparatorIs: {
      const std::string s = Literal(scalar(0));
      const auto pos = s.find_first_of(".,");
      return pos != std::string::npos && s[pos] == e.text[0];
    }
    case ExprOp::kLengthGt:
      return static_cast<int64_t>(Literal(scalar(0)).size()) > e.number;
    case ExprOp::kAnd:
      for (const auto& a : e.args) {
        if (!EvalExpr(a, at)) return false;
      }
      return true;
    case ExprOp::kOr:
      for (const auto& a : e.args) {
        if (EvalExpr(a, at)) return true;
      }
      return false;
    case ExprOp::kNot:
      return !EvalExpr(e.args[0], at);
  }
  return false;
}

}  // namespace internal

// ---------------------------------------------------------------------------
// JSON

inline OracleExpr ExprFromJson(const Json& j, const std::string& path) {
  using namespace json_util;
  const std::string name = AsString(Require(j, "op", path), Key(path, "op"));
  const auto op = internal::OpFromName(name);
  if (!op) Fail(Key(path, "op"), "unknown operator '" + name + "'");
  OracleExpr e;
  e.op = *op;
  auto ref = [&](const char* key) {
    e.refs.push_back(internal::ParseFieldRef(
        AsString(Require(j, key, path), Key(path, key)), Key(path, key)));
  };
  auto nonempty_text = [&](const char* key) {
    e.text = AsString(Require(j, key, path), Key(path, key));
    if (e.text.empty()) Fail(Key(path, key), "must not be empty");
  };
  switch (e.op) {
    case ExprOp::kTrue:
    case ExprOp::kFalse:
      break;
    case ExprOp::kEquals:
      ref("field");
      // Kept raw until the field's domain is known; see CompileOracle.
      e.text = Require(j, "value", path).dump();
      break;
    case ExprOp::kInRange:
      ref("field");
      e.lo = AsNumber(Require(j, "lo", path), Key(path, "lo"));
      e.hi = AsNumber(Require(j, "hi", path), Key(path, "hi"));
      break;
    case ExprOp::kContains:
      ref("field");
      nonempty_text("substring");
      break;
    case ExprOp::kMatchesClass:
      ref("field");
      e.char_class = CharClassFromJson(Require(j, "class", path), Key(path, "class"));
      break;
    case ExprOp::kEndsWith:
      ref("field");
      nonempty_text("char");
      break;
    case ExprOp::kCharAt:
      ref("field");
      e.number = AsInt(Require(j, "index", path), Key(path, "index"));
      nonempty_text("chars");
      break;
    case ExprOp::kIsLeapDay:
      ref("day");
      ref("month");
      ref("year");
      break;
    case ExprOp::kDecimalSeparatorIs:
      ref("field");
      nonempty_text("char");
      if (e.text != "." && e.text != ",") Fail(Key(path, "char"), "expected '.' or ','");
      break;
    case ExprOp::kLengthGt:
      ref("field");
      e.number = AsInt(Require(j, "length", path), Key(path, "length"));
      break;
    case ExprOp::kAnd:
    case ExprOp::kOr: {
      const Json& args = Require(j, "args", path);
      if (!args.is_array() || args.empty()) {
        Fail(Key(path, "args"), "expected a non-empty array");
      }
      for (size_t i = 0; i < args.size(); ++i) {
        e.args.push_back(ExprFromJson(args[i], Index(Key(path, "args"), i)));
      }
      break;
    }
    case ExprOp::kNot:
      e.args.push_back(ExprFromJson(Require(j, "arg", path), Key(path, "arg")));
      break;
  }
  return e;
}

inline Json ExprToJson(const OracleExpr& e) {
  Json j = {{"op", std::string(internal::OpToName(e.op))}};
  switch (e.op) {
    case ExprOp::kTrue:
    case ExprOp::kFalse:
      break;
    case ExprOp::kEquals:
      j["field"] = e.refs[0].ToString();
      j["value"] = ValueToJson(*e.literal);
      break;
    case ExprOp::kInRange:
      j["field"] = e.refs[0].ToString();
      j["lo"] = json_util::JsonNumber(e.lo);
      j["hi"] = json_util::JsonNumber(e.hi);
      break;
    case ExprOp::kContains:
      j["field"] = e.refs[0].ToString();
      j["substring"] = e.text;
      break;
    case ExprOp::kMatchesClass:
      j["field"] = e.refs[0].ToString();
      j["class"] = std::string(CharClassPattern(e.char_class));
      break;
    case ExprOp::kEndsWith:
    case ExprOp::kDecimalSeparatorIs:
      j["field"] = e.refs[0].ToString();
      j["char"] = e.text;
      break;
    case ExprOp::kCharAt:
      j["field"] = e.refs[0].ToString();
      j["index"] = e.number;
      j["chars"] = e.text;
      break;
    case ExprOp::kIsLeapDay:
      j["day"] = e.refs[0].ToString();
      j["month"] = e.refs[1].ToString();
      j["year"] = e.refs[2].ToString();
      break;
    case ExprOp::kLengthGt:
      j["field"] = e.refs[0].ToString();
      j["length"] = e.number;
      break;
    case ExprOp::kAnd:
    case ExprOp::kOr: {
      Json args = Json::array();
      for (const auto& a : e.args) args.push_back(ExprToJson(a));
      j["args"] = std::move(args);
      break;
    }
    case ExprOp::kNot:
      j["arg"] = ExprToJson(e.args[0]);
      break;
  }
  return j;
}

// Resolves field references and type-checks primitives against domains.
inline void CompileExpr(OracleExpr& e, const BugOracle& oracle) {
  std::vector<const DomainSpec*> domains;
  for (FieldRef& ref : e.refs) {
    domains.push_back(&internal::ResolveRef(ref, oracle));
  }
  auto require_numeric = [&](size_t i) {
    if (!domains[i]->is_numeric()) {
      throw Error(ErrorCode::kValidation,
                  std::string(internal::OpToName(e.op)) + " needs numeric '" +
                      e.refs[i].ToString() + "'");
    }
  };
  switch (e.op) {
    case ExprOp::kEquals:
      if (!e.literal) {
        e.literal = ValueFromJson(Json::parse(e.text), *domains[0],
                                  "equals(" + e.refs[0].ToString() + ")");
        e.text.clear();
      }
      break;
    case ExprOp::kInRange:
      require_numeric(0);
      break;
    case ExprOp::kIsLeapDay:
      for (size_t i = 0; i < 3; ++i) require_numeric(i);
      break;
    default:
      break;
  }
  for (OracleExpr& a : e.args) CompileExpr(a, oracle);
}

inline BugOracle OracleFromJson(const Json& j, const std::string& path = "") {
  using namespace json_util;
  BugOracle oracle;
  oracle.name = AsString(Require(j, "name", path), Key(path, "name"));
  if (oracle.name.empty()) Fail(Key(path, "name"), "must not be empty");
  const Json& fields = Require(j, "fields", path);
  if (!fields.is_array()) Fail(Key(path, "fields"), "expected an array");
  for (size_t i = 0; i < fields.size(); ++i) {
    const std::string fp = Index(Key(path, "fields"), i);
    OracleField f;
    f.name = AsString(Require(fields[i], "name", fp), Key(fp, "name"));
    f.domain = DomainFromJson(Require(fields[i], "domain", fp), Key(fp, "domain"));
    try {
      ValidateDomain(f.domain);
    } catch (const Error& e) {
      throw Error(ErrorCode::kValidation, fp + ": " + e.detail());
    }
    if (oracle.FieldIndex(f.name) != oracle.fields.size()) {
      Fail(fp, "duplicate field '" + f.name + "'");
    }
    oracle.fields.push_back(std::move(f));
  }
  oracle.predicate =
      ExprFromJson(Require(j, "predicate", path), Key(path, "predicate"));
  CompileExpr(oracle.predicate, oracle);
  return oracle;
}

inline Json OracleToJson(const BugOracle& oracle) {
  Json fields = Json::array();
  for (const auto& f : oracle.fields) {
    fields.push_back({{"name", f.name}, {"domain", DomainToJson(f.domain)}});
  }
  return {{"name", oracle.name},
          {"fields", std::move(fields)},
          {"predicate", ExprToJson(oracle.predicate)}};
}

inline BugOracle ParseOracle(std::string_view text) {
  return OracleFromJson(json_util::ParseText(text, "oracle"));
}

// ---------------------------------------------------------------------------
// Evaluation

// `assignment` holds one value per oracle field, in declaration order.
inline bool Evaluate(const BugOracle& oracle,
                     std::span<const DataValue> assignment) {
  if (assignment.size() != oracle.fields.size()) {
    throw Error(ErrorCode::kEvaluation,
                "expected " + std::to_string(oracle.fields.size()) +
                    " field values, got " + std::to_string(assignment.size()));
  }
  for (size_t i = 0; i < assignment.size(); ++i) {
    if (!Conforms(assignment[i], oracle.fields[i].domain)) {
      throw Error(ErrorCode::kEvaluation,
                  "field '" + oracle.fields[i].name +
                      "' does not conform to its domain");
    }
  }
  return internal::EvalExpr(
      oracle.predicate,
      [&](size_t i) -> const DataValue& { return assignment[i]; });
}

inline std::vector<DataValue> AssignmentFromMap(
    const BugOracle& oracle, const std::map<std::string, DataValue>& values) {
  std::vector<DataValue> out;
  for (const auto& f : oracle.fields) {
    auto it = values.find(f.name);
    if (it == values.end()) {
      throw Error(ErrorCode::kEvaluation, "missing field '" + f.name + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

inline bool Evaluate(const BugOracle& oracle,
                     const std::map<std::string, DataValue>& values) {
  const auto assignment = AssignmentFromMap(oracle, values);
  return Evaluate(oracle, std::span<const DataValue>(assignment));
}

// Exact probability that the predicate holds when each field is drawn
// independently from its support: the sum of P(assignment) over satisfying
// assignments.
inline double ExhaustiveProbability(const BugOracle& oracle,
                                    const std::vector<Support>& supports,
                                    uint64_t limit = kMaxEnumeration) {
  if (supports.size() != oracle.fields.size()) {
    throw Error(ErrorCode::kEvaluation, "one support per oracle field needed");
  }
  uint64_t total = 1;
  for (const auto& s : supports) total = internal::CheckedMul(total, s.size(), limit);
  if (total == 0) return 0;
  std::vector<size_t> idx(supports.size(), 0);
  auto at = [&](size_t i) -> const DataValue& {
    return supports[i][idx[i]].value;
  };
  long double sum = 0;
  while (true) {
    if (internal::EvalExpr(oracle.predicate, at)) {
      long double p = 1;
      for (size_t i = 0; i < supports.size(); ++i) {
        p *= supports[i][idx[i]].probability;
      }
      sum += p;
    }
    size_t pos = supports.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < supports[pos].size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return static_cast<double>(sum);
}

}  // namespace anonrepro

#endif  // ANONREPRO_ORACLE_H_
