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

#ifndef ANONREPRO_TRACE_H_
#define ANONREPRO_TRACE_H_

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "anonrepro/char_class.h"
#include "anonrepro/error.h"

namespace anonrepro {

// ---------------------------------------------------------------------------
// Values

// A number entered into a field. `precision` is the count of fraction digits
// of the literal it was read from, so regenerated values print the same way.
struct Continuous {
  double value = 0;
  int precision = 0;
};

struct Categorical {
  std::string label;
};

struct Text {
  std::string text;
};

struct DataValue;

// Flat tuple of scalar values, e.g. a date as (day, month, year).
struct TupleValue {
  std::vector<DataValue> components;
};

struct DataValue {
  std::variant<Continuous, Categorical, Text, TupleValue> v;

  DataValue() = default;
  DataValue(Continuous c) : v(c) {}  // NOLINT
  DataValue(Categorical c) : v(std::move(c)) {}  // NOLINT
  DataValue(Text t) : v(std::move(t)) {}  // NOLINT
  DataValue(TupleValue t) : v(std::move(t)) {}  // NOLINT

  bool is_continuous() const { return std::holds_alternative<Continuous>(v); }
  bool is_categorical() const {
    return std::holds_alternative<Categorical>(v);
  }
  bool is_text() const { return std::holds_alternative<Text>(v); }
  bool is_tuple() const { return std::holds_alternative<TupleValue>(v); }

  const Continuous& continuous() const { return std::get<Continuous>(v); }
  const Categorical& categorical() const { return std::get<Categorical>(v); }
  const Text& text() const { return std::get<Text>(v); }
  const TupleValue& tuple() const { return std::get<TupleValue>(v); }
};

inline DataValue Number(double value, int precision = 0) {
  return Continuous{value, precision};
}
inline DataValue Label(std::string label) {
  return Categorical{std::move(label)};
}
inline DataValue String(std::string text) { return Text{std::move(text)}; }
inline DataValue Tuple(std::vector<DataValue> components) {
  return TupleValue{std::move(components)};
}

// Structural equality; continuous values must agree on value and precision.
inline bool operator==(const DataValue& a, const DataValue& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_continuous()) {
    return a.continuous().value == b.continuous().value &&
           a.continuous().precision == b.continuous().precision;
  }
  if (a.is_categorical()) return a.categorical().label == b.categorical().label;
  if (a.is_text()) return a.text().text == b.text().text;
  const auto& x = a.tuple().components;
  const auto& y = b.tuple().components;
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == y[i])) return false;
  }
  return true;
}
inline bool operator!=(const DataValue& a, const DataValue& b) {
  return !(a == b);
}

inline std::string FormatNumber(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  std::string s = buf;
  // Values that print as zero drop the sign: "-0.00" -> "0.00".
  if (s[0] == '-' && s.find_first_of("123456789") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

// Textual form of a scalar value, as it would be typed into a field.
inline std::string Literal(const DataValue& value) {
  if (value.is_continuous()) {
    return FormatNumber(value.continuous().value, value.continuous().precision);
  }
  if (value.is_categorical()) return value.categorical().label;
  if (value.is_text()) return value.text().text;
  std::string out;
  for (const DataValue& c : value.tuple().components) {
    if (!out.empty()) out.push_back(' ');
    out += Literal(c);
  }
  return out;
}

// True when `candidate` would be read as the same input as `original`.
// Continuous values compare after formatting at the original's precision.
inline bool SameInput(const DataValue& candidate, const DataValue& original) {
  if (candidate.v.index() != original.v.index()) return false;
  if (original.is_continuous()) {
    const int p = original.continuous().precision;
    return FormatNumber(candidate.continuous().value, p) ==
           FormatNumber(original.continuous().value, p);
  }
  if (original.is_tuple()) {
    const auto& x = candidate.tuple().components;
    const auto& y = original.tuple().components;
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (!SameInput(x[i], y[i])) return false;
    }
    return true;
  }
  return candidate == original;
}

// ---------------------------------------------------------------------------
// Domains

// Numeric interval [min, max] or [min, max). The lower bound is always
// inclusive.
struct NumericDomain {
  double min = 0;
  double max = 0;
  bool max_inclusive = true;
  bool integer = false;
  // Fraction digits of generated values; always 0 for integer domains.
  int precision = 0;

  static NumericDomain Integer(double min, double max,
                               bool max_inclusive = true) {
    return {min, max, max_inclusive, true, 0};
  }
  static NumericDomain Real(double min, double max, bool max_inclusive = true,
                            int precision = 2) {
    return {min, max, max_inclusive, false, precision};
  }

  // Largest admissible integer, for integer domains.
  double IntegerMax() const { return max_inclusive ? max : max - 1; }
};

struct HierarchyGroup {
  std::string label;
  std::vector<std::string> members;
};

struct CategoricalDomain {
  std::vector<std::string> categories;
  // Empty when no generalization hierarchy is declared.
  std::vector<HierarchyGroup> hierarchy;

  bool has_hierarchy() const { return !hierarchy.empty(); }
};

struct StringDomain {
  CharClass char_class = CharClass::kPrintable;
  int length_min = 1;
  int length_max = 25;
};

struct DomainSpec;

struct TupleDomain {
  std::vector<DomainSpec> components;
};

struct DomainSpec {
  std::variant<NumericDomain, CategoricalDomain, StringDomain, TupleDomain> v;

  DomainSpec() = default;
  DomainSpec(NumericDomain d) : v(d) {}  // NOLINT
  DomainSpec(CategoricalDomain d) : v(std::move(d)) {}  // NOLINT
  DomainSpec(StringDomain d) : v(d) {}  // NOLINT
  DomainSpec(TupleDomain d) : v(std::move(d)) {}  // NOLINT

  bool is_numeric() const { return std::holds_alternative<NumericDomain>(v); }
  bool is_categorical() const {
    return std::holds_alternative<CategoricalDomain>(v);
  }
  bool is_string() const { return std::holds_alternative<StringDomain>(v); }
  bool is_tuple() const { return std::holds_alternative<TupleDomain>(v); }

  const NumericDomain& numeric() const { return std::get<NumericDomain>(v); }
  const CategoricalDomain& categorical() const {
    return std::get<CategoricalDomain>(v);
  }
  const StringDomain& string() const { return std::get<StringDomain>(v); }
  const TupleDomain& tuple() const { return std::get<TupleDomain>(v); }
};

inline bool operator==(const HierarchyGroup& a, const HierarchyGroup& b) {
  return a.label == b.label && a.members == b.members;
}

inline bool operator==(const DomainSpec& a, const DomainSpec& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_numeric()) {
    const auto& x = a.numeric();
    const auto& y = b.numeric();
    return x.min == y.min && x.max == y.max &&
           x.max_inclusive == y.max_inclusive && x.integer == y.integer &&
           x.precision == y.precision;
  }
  if (a.is_categorical()) {
    return a.categorical().categories == b.categorical().categories &&
           a.categorical().hierarchy == b.categorical().hierarchy;
  }
  if (a.is_string()) {
    const auto& x = a.string();
    const auto& y = b.string();
    return x.char_class == y.char_class && x.length_min == y.length_min &&
           x.length_max == y.length_max;
  }
  const auto& x = a.tuple().components;
  const auto& y = b.tuple().components;
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == y[i])) return false;
  }
  return true;
}

namespace internal {

inline bool IsWhole(double x) { return std::isfinite(x) && std::floor(x) == x; }

inline bool Contains(const std::vector<std::string>& set,
                     const std::string& s) {
  for (const auto& e : set) {
    if (e == s) return true;
  }
  return false;
}

}  // namespace internal

// Throws kValidation when the domain violates its own invariants.
inline void ValidateDomain(const DomainSpec& domain, bool nested = false) {
  if (domain.is_numeric()) {
    const NumericDomain& d = domain.numeric();
    if (!std::isfinite(d.min) || !std::isfinite(d.max) || !(d.min < d.max)) {
      throw Error(ErrorCode::kValidation, "numeric domain requires min < max");
    }
    if (d.integer) {
      if (!internal::IsWhole(d.min) || !internal::IsWhole(d.max)) {
        throw Error(ErrorCode::kValidation,
                    "integer domain bounds must be integers");
      }
      if (d.precision != 0) {
        throw Error(ErrorCode::kValidation,
                    "integer domain precision must be 0");
      }
      if (!d.max_inclusive && d.max - d.min < 1) {
        throw Error(ErrorCode::kValidation, "integer domain is empty");
      }
    }
    if (d.precision < 0 || d.precision > 9) {
      throw Error(ErrorCode::kValidation, "precision must be in [0, 9]");
    }
  } else if (domain.is_categorical()) {
    const CategoricalDomain& d = domain.categorical();
    if (d.categories.empty()) {
      throw Error(ErrorCode::kValidation, "category set is empty");
    }
    for (size_t i = 0; i < d.categories.size(); ++i) {
      for (size_t j = i + 1; j < d.categories.size(); ++j) {
        if (d.categories[i] == d.categories[j]) {
          throw Error(ErrorCode::kValidation,
                      "duplicate category '" + d.categories[i] + "'");
        }
      }
    }
    if (d.has_hierarchy()) {
      std::vector<std::string> seen;
      for (const HierarchyGroup& g : d.hierarchy) {
        if (g.members.empty()) {
          throw Error(ErrorCode::kValidation,
                      "hierarchy group '" + g.label + "' is empty");
        }
        for (const std::string& m : g.members) {
          if (!internal::Contains(d.categories, m)) {
            throw Error(ErrorCode::kValidation,
                        "hierarchy member '" + m + "' is not a category");
          }
          if (internal::Contains(seen, m)) {
            throw Error(ErrorCode::kValidation,
                        "hierarchy groups overlap on '" + m + "'");
          }
          seen.push_back(m);
        }
      }
      if (seen.size() != d.categories.size()) {
        throw Error(ErrorCode::kValidation,
                    "hierarchy groups do not cover every category");
      }
    }
  } else if (domain.is_string()) {
    const StringDomain& d = domain.string();
    if (d.length_min < 1 || d.length_min > d.length_max) {
      throw Error(ErrorCode::kValidation,
                  "string domain requires 1 <= length_min <= length_max");
    }
  } else {
    if (nested) {
      throw Error(ErrorCode::kValidation, "tuple domains cannot be nested");
    }
    if (domain.tuple().components.empty()) {
      throw Error(ErrorCode::kValidation, "tuple domain has no components");
    }
    for (const DomainSpec& c : domain.tuple().components) {
      ValidateDomain(c, true);
    }
  }
}

// True iff the value lies in the domain. Total: mismatched kinds are simply
// non-conforming.
inline bool Conforms(const DataValue& value, const DomainSpec& domain) {
  if (domain.is_numeric()) {
    if (!value.is_continuous()) return false;
    const NumericDomain& d = domain.numeric();
    const double x = value.continuous().value;
    if (!std::isfinite(x)) return false;
    if (x < d.min) return false;
    if (d.max_inclusive ? x > d.max : x >= d.max) return false;
    if (d.integer && !internal::IsWhole(x)) return false;
    return true;
  }
  if (domain.is_categorical()) {
    return value.is_categorical() &&
           internal::Contains(domain.categorical().categories,
                              value.categorical().label);
  }
  if (domain.is_string()) {
    if (!value.is_text()) return false;
    const StringDomain& d = domain.string();
    const std::string& s = value.text().text;
    const auto n = static_cast<long>(s.size());
    if (n < d.length_min || n > d.length_max) return false;
    for (char ch : s) {
      if (!InCharClass(d.char_class, ch)) return false;
    }
    return true;
  }
  if (!value.is_tuple()) return false;
  const auto& comps = value.tuple().components;
  const auto& doms = domain.tuple().components;
  if (comps.size() != doms.size()) return false;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_tuple() || !Conforms(comps[i], doms[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Traces

struct FieldData {
  DataValue value;
  DomainSpec domain;
};

// One GUI event: an action on a widget, possibly carrying typed data.
struct Event {
  std::string action;
  std::string widget;
  std::optional<FieldData> data;
};

struct FailureTrace {
  std::vector<Event> events;
};

// Checks every event; errors name the offending event index.
inline void ValidateTrace(const FailureTrace& trace) {
  for (size_t i = 0; i < trace.events.size(); ++i) {
    const Event& e = trace.events[i];
    const std::string where = "event " + std::to_string(i);
    if (e.action.empty() || e.widget.empty()) {
      throw Error(ErrorCode::kValidation,
                  where + ": action and widget must be non-empty");
    }
    if (!e.data) continue;
    try {
      ValidateDomain(e.data->domain);
    } catch (const Error& err) {
      throw Error(ErrorCode::kValidation, where + ": " + err.detail());
    }
    if (!Conforms(e.data->value, e.data->domain)) {
      throw Error(ErrorCode::kValidation,
                  where + ": value '" + Literal(e.data->value) +
                      "' does not conform to its domain");
    }
  }
}

}  // namespace anonrepro

#endif  // ANONREPRO_TRACE_H_
