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

#ifndef ANONREPRO_RECORD_JSON_H_
#define ANONREPRO_RECORD_JSON_H_

// JSON encoding of anonymized records, anonymized traces and technique
// configurations.

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "anonrepro/anonymizers.h"
#include "anonrepro/json_util.h"
#include "anonrepro/trace_json.h"

namespace anonrepro {

inline Json RecordToJson(const AnonymizedRecord& rec) {
  Json j = Json::object();
  if (const auto* s = rec.get_if<Suppressed>()) {
    j["kind"] = "suppressed";
    j["domain"] = DomainToJson(s->domain);
    if (s->length_hint) j["length_hint"] = *s->length_hint;
  } else if (const auto* s = rec.get_if<SpecialChars>()) {
    j["kind"] = "special_chars";
    j["domain"] = DomainToJson(s->domain);
    j["specials"] = s->specials;
    if (s->length_hint) j["length_hint"] = *s->length_hint;
  } else if (const auto* g = rec.get_if<IntervalGroup>()) {
    j["kind"] = "interval";
    j["domain"] = DomainToJson(g->domain);
    j["lo"] = json_util::JsonNumber(g->lo);
    j["hi"] = json_util::JsonNumber(g->hi);
    j["hi_inclusive"] = g->hi_inclusive;
  } else if (const auto* g = rec.get_if<CategoryGroup>()) {
    j["kind"] = "category_group";
    j["domain"] = DomainToJson(g->domain);
    j["group"] = g->group_label;
  } else if (const auto* c = rec.get_if<Concrete>()) {
    j["kind"] = "concrete";
    j["domain"] = DomainToJson(c->domain);
    j["value"] = ValueToJson(c->value);
  } else {
    j["kind"] = "tuple";
    Json comps = Json::array();
    for (const auto& c : std::get<TupleRecord>(rec.v).components) {
      comps.push_back(RecordToJson(c));
    }
    j["components"] = std::move(comps);
  }
  return j;
}

inline AnonymizedRecord RecordFromJson(const Json& j, const std::string& path) {
  using namespace json_util;
  const std::string kind = AsString(Require(j, "kind", path), Key(path, "kind"));
  if (kind == "tuple") {
    TupleRecord t;
    const Json& comps = Require(j, "components", path);
    if (!comps.is_array()) Fail(Key(path, "components"), "expected an array");
    for (size_t i = 0; i < comps.size(); ++i) {
      t.components.push_back(
          RecordFromJson(comps[i], Index(Key(path, "components"), i)));
    }
    return t;
  }
  DomainSpec domain =
      DomainFromJson(Require(j, "domain", path), Key(path, "domain"));
  auto hint = [&]() -> std::optional<int> {
    if (const Json* h = Optional(j, "length_hint")) {
      return static_cast<int>(AsInt(*h, Key(path, "length_hint")));
    }
    return std::nullopt;
  };
  if (kind == "suppressed") return Suppressed{std::move(domain), hint()};
  if (kind == "special_chars") {
    return SpecialChars{
        std::move(domain),
        AsString(Require(j, "specials", path), Key(path, "specials")), hint()};
  }
  if (kind == "interval") {
    IntervalGroup g;
    g.domain = std::move(domain);
    g.lo = AsNumber(Require(j, "lo", path), Key(path, "lo"));
    g.hi = AsNumber(Require(j, "hi", path), Key(path, "hi"));
    g.hi_inclusive =
        AsBool(Require(j, "hi_inclusive", path), Key(path, "hi_inclusive"));
    return g;
  }
  if (kind == "category_group") {
    return CategoryGroup{std::move(domain),
                         AsString(Require(j, "group", path), Key(path, "group"))};
  }
  if (kind == "concrete") {
    DataValue v =
        ValueFromJson(Require(j, "value", path), domain, Key(path, "value"));
    return Concrete{std::move(domain), std::move(v)};
  }
  Fail(Key(path, "kind"), "unknown record kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Anonymized traces: same event list, with each data field replaced by its
// record.

struct AnonymizedEvent {
  std::string action;
  std::string widget;
  std::optional<AnonymizedRecord> record;
};

struct AnonymizedTrace {
  std::vector<AnonymizedEvent> events;
};

inline std::string SerializeAnonymizedTrace(const AnonymizedTrace& trace) {
  Json events = Json::array();
  for (const AnonymizedEvent& e : trace.events) {
    Json je = {{"action", e.action}, {"widget", e.widget}};
    if (e.record) je["record"] = RecordToJson(*e.record);
    events.push_back(std::move(je));
  }
  return json_util::Dump(Json{{"events", std::move(events)}});
}

inline AnonymizedTrace ParseAnonymizedTrace(std::string_view text) {
  using namespace json_util;
  const Json j = ParseText(text, "anonymized trace");
  AnonymizedTrace trace;
  const Json& events = Require(j, "events", "");
  if (!events.is_array()) Fail("events", "expected an array");
  for (size_t i = 0; i < events.size(); ++i) {
    const std::string p = Index("events", i);
    AnonymizedEvent e;
    e.action = AsString(Require(events[i], "action", p), Key(p, "action"));
    e.widget = AsString(Require(events[i], "widget", p), Key(p, "widget"));
    if (e.action.empty() || e.widget.empty()) {
      throw Error(ErrorCode::kValidation,
                  "event " + std::to_string(i) +
                      ": action and widget must be non-empty");
    }
    if (const Json* r = Optional(events[i], "record")) {
      e.record = RecordFromJson(*r, Key(p, "record"));
      try {
        ValidateRecord(*e.record);
      } catch (const Error& err) {
        throw Error(ErrorCode::kValidation,
                    "event " + std::to_string(i) + ": " + err.detail());
      }
    }
    trace.events.push_back(std::move(e));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Technique configurations
//
//   {"technique": "global_recoding", "level": "Me", "partitions": 3}
//   {"technique": "noise_addition", "level": "Hi"}            (noise 0.3)
//   {"technique": "local_suppression", "length_policy": "preserve",
//    "char_class": "[A-Za-z0-9 ]"}
//
// Explicit parameters win over those implied by the level. Partition levels
// use the small scale (2/3/4) unless "scale": "big" (50/100/500).

inline std::string_view LengthPolicyName(LengthPolicy p) {
  return p == LengthPolicy::kPreserveOriginal ? "preserve" : "random";
}

inline ConfiguredTechnique TechniqueFromJson(const Json& j,
                                             const std::string& path) {
  using namespace json_util;
  const std::string name =
      AsString(Require(j, "technique", path), Key(path, "technique"));
  const auto technique = ParseTechnique(name);
  if (!technique) Fail(Key(path, "technique"), "unknown technique '" + name + "'");
  Level level = Level::kNone;
  if (const Json* l = Optional(j, "level")) {
    const std::string s = AsString(*l, Key(path, "level"));
    const auto parsed = ParseLevel(s);
    if (!parsed) Fail(Key(path, "level"), "expected Lo, Me or Hi");
    level = *parsed;
  }
  PartitionScale scale = PartitionScale::kSmall;
  if (const Json* s = Optional(j, "scale")) {
    const std::string v = AsString(*s, Key(path, "scale"));
    if (v == "big") {
      scale = PartitionScale::kBig;
    } else if (v != "small") {
      Fail(Key(path, "scale"), "expected small or big");
    }
  }
  auto partitions = [&]() {
    if (const Json* p = Optional(j, "partitions")) {
      return static_cast<int>(AsInt(*p, Key(path, "partitions")));
    }
    if (level == Level::kNone) Fail(path, "needs 'partitions' or 'level'");
    return PartitionsForLevel(level, scale);
  };
  auto length_policy = [&]() {
    if (const Json* p = Optional(j, "length_policy")) {
      const std::string v = AsString(*p, Key(path, "length_policy"));
      if (v == "preserve") return LengthPolicy::kPreserveOriginal;
      if (v == "random") return LengthPolicy::kRandomInRange;
      Fail(Key(path, "length_policy"), "expected preserve or random");
    }
    if (level == Level::kNone) return LengthPolicy::kRandomInRange;
    return LengthPolicyForLevel(level);
  };
  auto char_class = [&]() -> std::optional<CharClass> {
    if (const Json* c = Optional(j, "char_class")) {
      return CharClassFromJson(*c, Key(path, "char_class"));
    }
    return std::nullopt;
  };
  ConfiguredTechnique out;
  out.level = level;
  switch (*technique) {
    case Technique::kLocalSuppression:
      out.config = LocalSuppressionCfg{length_policy(), char_class()};
      break;
    case Technique::kScdLocalSuppression:
      out.config = ScdLocalSuppressionCfg{length_policy(), char_class()};
      break;
    case Technique::kGlobalRecoding:
      out.config = GlobalRecodingCfg{partitions()};
      break;
    case Technique::kRounding:
      out.config = RoundingCfg{partitions()};
      break;
    case Technique::kNoiseAddition: {
      double noise = 0;
      if (const Json* n = Optional(j, "noise")) {
        noise = AsNumber(*n, Key(path, "noise"));
      } else if (level != Level::kNone) {
        noise = NoiseForLevel(level);
      } else {
        Fail(path, "needs 'noise' or 'level'");
      }
      out.config = NoiseAdditionCfg{noise};
      break;
    }
  }
  try {
    ValidateConfig(out.config);
  } catch (const Error& e) {
    throw Error(ErrorCode::kValidation, path + ": " + e.detail());
  }
  return out;
}

inline Json TechniqueToJson(const ConfiguredTechnique& t) {
  Json j = {{"technique", std::string(TechniqueName(TechniqueOf(t.config)))}};
  if (t.level != Level::kNone) j["level"] = std::string(LevelName(t.level));
  std::visit(
      [&j](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LocalSuppressionCfg> ||
                      std::is_same_v<T, ScdLocalSuppressionCfg>) {
          j["length_policy"] = std::string(LengthPolicyName(c.length_policy));
          if (c.char_class) {
            j["char_class"] = std::string(CharClassPattern(*c.char_class));
          }
        } else if constexpr (std::is_same_v<T, NoiseAdditionCfg>) {
          j["noise"] = c.noise;
        } else {
          j["partitions"] = c.partitions;
        }
      },
      t.config);
  return j;
}

// Compact parameter string for report columns, e.g. "partitions=3".
inline std::string TechniqueParams(const TechniqueConfig& cfg) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LocalSuppressionCfg> ||
                      std::is_same_v<T, ScdLocalSuppressionCfg>) {
          std::string s = "length=" + std::string(LengthPolicyName(c.length_policy));
          if (c.char_class) {
            s += " class=" + std::string(CharClassPattern(*c.char_class));
          }
          return s;
        } else if constexpr (std::is_same_v<T, NoiseAdditionCfg>) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "noise=%g", c.noise);
          return buf;
        } else {
          return "partitions=" + std::to_string(c.partitions);
        }
      },
      cfg);
}

}  // namespace anonrepro

#endif  // ANONREPRO_RECORD_JSON_H_
