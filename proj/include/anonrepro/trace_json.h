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

#ifndef ANONREPRO_TRACE_JSON_H_
#define ANONREPRO_TRACE_JSON_H_

// JSON encoding of values, domains and failure traces.
//
//   {"events": [{"action": "type", "widget": "amount",
//                "data": {"value": "4.60",
//                         "domain": {"kind": "numeric", "min": 0, "max": 100,
//                                    "max_inclusive": false,
//                                    "integer": false, "precision": 2}}}]}
//
// Continuous values with fraction digits are written as string literals so
// their precision survives a round trip; whole values are JSON integers.

#include <charconv>
#include <string>
#include <string_view>

#include "anonrepro/json_util.h"
#include "anonrepro/trace.h"

namespace anonrepro {

inline Json DomainToJson(const DomainSpec& domain) {
  Json j = Json::object();
  if (domain.is_numeric()) {
    const NumericDomain& d = domain.numeric();
    j["kind"] = "numeric";
    j["min"] = json_util::JsonNumber(d.min);
    j["max"] = json_util::JsonNumber(d.max);
    j["max_inclusive"] = d.max_inclusive;
    j["integer"] = d.integer;
    if (!d.integer) j["precision"] = d.precision;
  } else if (domain.is_categorical()) {
    const CategoricalDomain& d = domain.categorical();
    j["kind"] = "categorical";
    j["categories"] = d.categories;
    if (d.has_hierarchy()) {
      Json groups = Json::array();
      for (const HierarchyGroup& g : d.hierarchy) {
        groups.push_back({{"group", g.label}, {"members", g.members}});
      }
      j["hierarchy"] = std::move(groups);
    }
  } else if (domain.is_string()) {
    const StringDomain& d = domain.string();
    j["kind"] = "string";
    j["char_class"] = std::string(CharClassPattern(d.char_class));
    j["length_min"] = d.length_min;
    j["length_max"] = d.length_max;
  } else {
    j["kind"] = "tuple";
    Json comps = Json::array();
    for (const DomainSpec& c : domain.tuple().components) {
      comps.push_back(DomainToJson(c));
    }
    j["components"] = std::move(comps);
  }
  return j;
}

inline CharClass CharClassFromJson(const Json& j, const std::string& path) {
  const std::string pattern = json_util::AsString(j, path);
  auto c = ParseCharClass(pattern);
  if (!c) json_util::Fail(path, "unknown character class '" + pattern + "'");
  return *c;
}

inline DomainSpec DomainFromJson(const Json& j, const std::string& path) {
  using namespace json_util;
  const std::string kind = AsString(Require(j, "kind", path), Key(path, "kind"));
  if (kind == "numeric") {
    NumericDomain d;
    d.min = AsNumber(Require(j, "min", path), Key(path, "min"));
    d.max = AsNumber(Require(j, "max", path), Key(path, "max"));
    if (const Json* x = Optional(j, "max_inclusive")) {
      d.max_inclusive = AsBool(*x, Key(path, "max_inclusive"));
    }
    if (const Json* x = Optional(j, "integer")) {
      d.integer = AsBool(*x, Key(path, "integer"));
    }
    d.precision = d.integer ? 0 : 2;
    if (const Json* x = Optional(j, "precision")) {
      d.precision = static_cast<int>(AsInt(*x, Key(path, "precision")));
    }
    return d;
  }
  if (kind == "categorical") {
    CategoricalDomain d;
    const Json& cats = Require(j, "categories", path);
    if (!cats.is_array()) Fail(Key(path, "categories"), "expected an array");
    for (size_t i = 0; i < cats.size(); ++i) {
      d.categories.push_back(AsString(cats[i], Index(Key(path, "categories"), i)));
    }
    if (const Json* h = Optional(j, "hierarchy")) {
      const std::string hp = Key(path, "hierarchy");
      if (!h->is_array()) Fail(hp, "expected an array");
      for (size_t i = 0; i < h->size(); ++i) {
        const std::string gp = Index(hp, i);
        HierarchyGroup g;
        g.label = AsString(Require((*h)[i], "group", gp), Key(gp, "group"));
        const Json& members = Require((*h)[i], "members", gp);
        if (!members.is_array()) Fail(Key(gp, "members"), "expected an array");
        for (size_t k = 0; k < members.size(); ++k) {
          g.members.push_back(
              AsString(members[k], Index(Key(gp, "members"), k)));
        }
        d.hierarchy.push_back(std::move(g));
      }
    }
    return d;
  }
  if (kind == "string") {
    StringDomain d;
    d.char_class =
        CharClassFromJson(Require(j, "char_class", path), Key(path, "char_class"));
    d.length_min = static_cast<int>(
        AsInt(Require(j, "length_min", path), Key(path, "length_min")));
    d.length_max = static_cast<int>(
        AsInt(Require(j, "length_max", path), Key(path, "length_max")));
    return d;
  }
  if (kind == "tuple") {
    TupleDomain d;
    const Json& comps = Require(j, "components", path);
    if (!comps.is_array()) Fail(Key(path, "components"), "expected an array");
    for (size_t i = 0; i < comps.size(); ++i) {
      d.components.push_back(
          DomainFromJson(comps[i], Index(Key(path, "components"), i)));
    }
    return d;
  }
  Fail(Key(path, "kind"), "unknown domain kind '" + kind + "'");
}

namespace internal {

// Parses "-12.340" style literals; returns the fraction digit count.
inline bool ParseDecimalLiteral(std::string_view s, double* value,
                                int* precision) {
  size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const size_t int_start = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == int_start) return false;
  int digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    const size_t frac_start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    digits = static_cast<int>(i - frac_start);
    if (digits == 0) return false;
  }
  if (i != s.size()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), *value);
  if (res.ec != std::errc() || !std::isfinite(*value)) return false;
  *precision = digits;
  return true;
}

}  // namespace internal

inline Json ValueToJson(const DataValue& value) {
  if (value.is_continuous()) {
    const Continuous& c = value.continuous();
    if (c.precision == 0) return json_util::JsonNumber(std::round(c.value));
    return FormatNumber(c.value, c.precision);
  }
  if (value.is_categorical()) return value.categorical().label;
  if (value.is_text()) return value.text().text;
  Json arr = Json::array();
  for (const DataValue& c : value.tuple().components) {
    arr.push_back(ValueToJson(c));
  }
  return arr;
}

// The domain decides how the JSON is read: numeric domains accept numbers or
// decimal string literals.
inline DataValue ValueFromJson(const Json& j, const DomainSpec& domain,
                               const std::string& path) {
  using namespace json_util;
  if (domain.is_numeric()) {
    if (j.is_string()) {
      double x = 0;
      int precision = 0;
      if (!internal::ParseDecimalLiteral(j.get<std::string>(), &x,
                                         &precision)) {
        Fail(path, "malformed number literal '" + j.get<std::string>() + "'");
      }
      return Number(x, precision);
    }
    if (j.is_number_integer()) {
      return Number(static_cast<double>(j.get<int64_t>()), 0);
    }
    const double x = AsNumber(j, path);
    // Shortest round-trip spelling decides the precision of a bare float.
    double parsed = 0;
    int precision = 0;
    if (!internal::ParseDecimalLiteral(Json(x).dump(), &parsed, &precision)) {
      precision = domain.numeric().precision;
    }
    return Number(x, precision);
  }
  if (domain.is_categorical()) return Label(AsString(j, path));
  if (domain.is_string()) return String(AsString(j, path));
  if (!j.is_array()) Fail(path, "expected an array for a tuple value");
  const auto& doms = domain.tuple().components;
  if (j.size() != doms.size()) {
    Fail(path, "tuple has " + std::to_string(j.size()) +
                   " components, domain expects " +
                   std::to_string(doms.size()));
  }
  std::vector<DataValue> comps;
  for (size_t i = 0; i < j.size(); ++i) {
    comps.push_back(ValueFromJson(j[i], doms[i], Index(path, i)));
  }
  return Tuple(std::move(comps));
}

inline Json TraceToJson(const FailureTrace& trace) {
  Json events = Json::array();
  for (const Event& e : trace.events) {
    Json je = {{"action", e.action}, {"widget", e.widget}};
    if (e.data) {
      je["data"] = {{"value", ValueToJson(e.data->value)},
                    {"domain", DomainToJson(e.data->domain)}};
    }
    events.push_back(std::move(je));
  }
  return Json{{"events", std::move(events)}};
}

inline std::string SerializeTrace(const FailureTrace& trace) {
  return json_util::Dump(TraceToJson(trace));
}

// Structural parse only; see ParseTrace for validation.
inline FailureTrace TraceFromJson(const Json& j) {
  using namespace json_util;
  FailureTrace trace;
  const Json& events = Require(j, "events", "");
  if (!events.is_array()) Fail("events", "expected an array");
  for (size_t i = 0; i < events.size(); ++i) {
    const std::string p = Index("events", i);
    const Json& je = events[i];
    Event e;
    e.action = AsString(Require(je, "action", p), Key(p, "action"));
    e.widget = AsString(Require(je, "widget", p), Key(p, "widget"));
    if (const Json* data = Optional(je, "data")) {
      const std::string dp = Key(p, "data");
      DomainSpec domain =
          DomainFromJson(Require(*data, "domain", dp), Key(dp, "domain"));
      DataValue value =
          ValueFromJson(Require(*data, "value", dp), domain, Key(dp, "value"));
      e.data = FieldData{std::move(value), std::move(domain)};
    }
    trace.events.push_back(std::move(e));
  }
  return trace;
}

inline FailureTrace ParseTrace(std::string_view text) {
  FailureTrace trace = TraceFromJson(json_util::ParseText(text, "trace"));
  ValidateTrace(trace);
  return trace;
}

}  // namespace anonrepro

#endif  // ANONREPRO_TRACE_JSON_H_
