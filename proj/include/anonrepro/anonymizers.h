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

#ifndef ANONREPRO_ANONYMIZERS_H_
#define ANONREPRO_ANONYMIZERS_H_

// Privacy-preserving techniques for single field values. Each technique has
// an anonymize step, producing the record that leaves the device, and a
// regenerate step that turns the record back into a concrete, domain
// conforming input for a reproduction attempt.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "anonrepro/char_class.h"
#include "anonrepro/error.h"
#include "anonrepro/random.h"
#include "anonrepro/trace.h"

namespace anonrepro {

// ---------------------------------------------------------------------------
// Configuration

enum class LengthPolicy { kPreserveOriginal, kRandomInRange };

struct GlobalRecodingCfg {
  // Equal-width partitions for numeric domains. Categorical values use the
  // domain hierarchy instead.
  int partitions = 2;
};

struct RoundingCfg {
  int partitions = 2;
};

struct LocalSuppressionCfg {
  LengthPolicy length_policy = LengthPolicy::kRandomInRange;
  // Regenerate strings from this class instead of the domain's.
  std::optional<CharClass> char_class;
};

struct ScdLocalSuppressionCfg {
  LengthPolicy length_policy = LengthPolicy::kRandomInRange;
  std::optional<CharClass> char_class;
};

struct NoiseAdditionCfg {
  // Fraction of the distance to each domain bound, in (0, 1].
  double noise = 0.3;
};

using TechniqueConfig =
    std::variant<LocalSuppressionCfg, ScdLocalSuppressionCfg,
                 GlobalRecodingCfg, RoundingCfg, NoiseAdditionCfg>;

enum class Technique {
  kLocalSuppression,
  kScdLocalSuppression,
  kGlobalRecoding,
  kRounding,
  kNoiseAddition,
};

inline Technique TechniqueOf(const TechniqueConfig& cfg) {
  return static_cast<Technique>(cfg.index());
}

inline std::string_view TechniqueName(Technique t) {
  switch (t) {
    case Technique::kLocalSuppression: return "local_suppression";
    case Technique::kScdLocalSuppression: return "scd_local_suppression";
    case Technique::kGlobalRecoding: return "global_recoding";
    case Technique::kRounding: return "rounding";
    case Technique::kNoiseAddition: return "noise_addition";
  }
  return "";
}

inline std::optional<Technique> ParseTechnique(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    const auto t = static_cast<Technique>(i);
    if (TechniqueName(t) == name) return t;
  }
  return std::nullopt;
}

inline std::string_view TechniqueDisplayName(Technique t) {
  switch (t) {
    case Technique::kLocalSuppression: return "Local Sup";
    case Technique::kScdLocalSuppression: return "SCD Local Sup";
    case Technique::kGlobalRecoding: return "Global Recoding";
    case Technique::kRounding: return "Rounding";
    case Technique::kNoiseAddition: return "Noise Addition";
  }
  return "";
}

inline void ValidateConfig(const TechniqueConfig& cfg) {
  if (const auto* c = std::get_if<GlobalRecodingCfg>(&cfg)) {
    if (c->partitions < 2) {
      throw Error(ErrorCode::kValidation, "partitions must be at least 2");
    }
  } else if (const auto* c = std::get_if<RoundingCfg>(&cfg)) {
    if (c->partitions < 2) {
      throw Error(ErrorCode::kValidation, "partitions must be at least 2");
    }
  } else if (const auto* c = std::get_if<NoiseAdditionCfg>(&cfg)) {
    if (!(c->noise > 0 && c->noise <= 1)) {
      throw Error(ErrorCode::kValidation, "noise must be in (0, 1]");
    }
  }
}

// ---------------------------------------------------------------------------
// Anonymized records

// Nothing about the value survives except, optionally, a string's length.
struct Suppressed {
  DomainSpec domain;
  std::optional<int> length_hint;
};

// Only the special characters of a string survive, as a sorted multiset.
struct SpecialChars {
  DomainSpec domain;
  std::string specials;
  std::optional<int> length_hint;
};

struct IntervalGroup {
  DomainSpec domain;
  double lo = 0;
  double hi = 0;
  bool hi_inclusive = false;
};

struct CategoryGroup {
  DomainSpec domain;
  std::string group_label;
};

// A replacement value from the domain, used as is during reproduction.
struct Concrete {
  DomainSpec domain;
  DataValue value;
};

struct AnonymizedRecord;

struct TupleRecord {
  std::vector<AnonymizedRecord> components;
};

struct AnonymizedRecord {
  std::variant<Suppressed, SpecialChars, IntervalGroup, CategoryGroup,
               Concrete, TupleRecord>
      v;

  AnonymizedRecord() = default;
  AnonymizedRecord(Suppressed r) : v(std::move(r)) {}  // NOLINT
  AnonymizedRecord(SpecialChars r) : v(std::move(r)) {}  // NOLINT
  AnonymizedRecord(IntervalGroup r) : v(std::move(r)) {}  // NOLINT
  AnonymizedRecord(CategoryGroup r) : v(std::move(r)) {}  // NOLINT
  AnonymizedRecord(Concrete r) : v(std::move(r)) {}  // NOLINT
  AnonymizedRecord(TupleRecord r) : v(std::move(r)) {}  // NOLINT

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v);
  }
};

inline bool operator==(const AnonymizedRecord& a, const AnonymizedRecord& b) {
  if (a.v.index() != b.v.index()) return false;
  if (const auto* x = a.get_if<Suppressed>()) {
    const auto* y = b.get_if<Suppressed>();
    return x->domain == y->domain && x->length_hint == y->length_hint;
  }
  if (const auto* x = a.get_if<SpecialChars>()) {
    const auto* y = b.get_if<SpecialChars>();
    return x->domain == y->domain && x->specials == y->specials &&
           x->length_hint == y->length_hint;
  }
  if (const auto* x = a.get_if<IntervalGroup>()) {
    const auto* y = b.get_if<IntervalGroup>();
    return x->domain == y->domain && x->lo == y->lo && x->hi == y->hi &&
           x->hi_inclusive == y->hi_inclusive;
  }
  if (const auto* x = a.get_if<CategoryGroup>()) {
    const auto* y = b.get_if<CategoryGroup>();
    return x->domain == y->domain && x->group_label == y->group_label;
  }
  if (const auto* x = a.get_if<Concrete>()) {
    const auto* y = b.get_if<Concrete>();
    return x->domain == y->domain && x->value == y->value;
  }
  const auto& x = std::get<TupleRecord>(a.v).components;
  const auto& y = std::get<TupleRecord>(b.v).components;
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == y[i])) return false;
  }
  return true;
}

// Notes produced while regenerating; the harness tallies them per trial.
struct RegenerationLog {
  int length_raised = 0;
};

// ---------------------------------------------------------------------------
// Numeric helpers

namespace internal {

inline double Pow10(int p) {
  double s = 1;
  for (int i = 0; i < p; ++i) s *= 10;
  return s;
}

// Snaps x to the 10^-precision grid (round half up), then steps inward if the
// snapped point left [lo, hi] / [lo, hi). Empty when no grid point fits.
inline std::optional<double> SnapToGrid(double x, int precision, double lo,
                                        double hi, bool hi_inclusive) {
  const double scale = Pow10(precision);
  auto at = [scale](double k) { return k / scale; };
  auto under_hi = [&](double y) { return hi_inclusive ? y <= hi : y < hi; };
  double k = std::floor(x * scale + 0.5);
  if (at(k) < lo) {
    k = std::ceil(lo * scale);
    while (at(k) < lo) k += 1;
  }
  if (!under_hi(at(k))) {
    k = std::floor(hi * scale);
    while (!under_hi(at(k))) k -= 1;
  }
  if (at(k) < lo || !under_hi(at(k))) return std::nullopt;
  return at(k) == 0 ? 0.0 : at(k);
}

inline void RequireConforming(const DataValue& value, const DomainSpec& domain,
                              std::string_view technique) {
  ValidateDomain(domain);
  if (!Conforms(value, domain)) {
    throw Error(ErrorCode::kValidation,
                std::string(technique) + ": value '" + Literal(value) +
                    "' does not conform to its domain");
  }
}

[[noreturn]] inline void Unsupported(std::string_view technique,
                                     std::string_view what) {
  throw Error(ErrorCode::kUnsupportedTechnique,
              std::string(technique) + " cannot be applied to " +
                  std::string(what) + " values");
}

inline std::string_view KindName(const DomainSpec& d) {
  if (d.is_numeric()) return "numeric";
  if (d.is_categorical()) return "categorical";
  if (d.is_string()) return "string";
  return "tuple";
}

// Applies `fn(component_value, component_domain, index)` to each component
// of a tuple value and collects the records.
template <typename Fn>
AnonymizedRecord PerComponent(const DataValue& value, const DomainSpec& domain,
                              Fn&& fn) {
  TupleRecord out;
  const auto& comps = value.tuple().components;
  const auto& doms = domain.tuple().components;
  for (size_t i = 0; i < comps.size(); ++i) {
    out.components.push_back(fn(comps[i], doms[i], i));
  }
  return out;
}

inline DataValue GeneratedNumber(const NumericDomain& d, double x) {
  return Number(x, d.integer ? 0 : d.precision);
}

inline DomainSpec WithCharClass(const DomainSpec& domain,
                                std::optional<CharClass> override_class) {
  if (!override_class || !domain.is_string()) return domain;
  StringDomain d = domain.string();
  d.char_class = *override_class;
  return d;
}

inline std::string RandomString(const StringDomain& d, int length,
                                RandomStream& rng) {
  const std::string& alphabet = CharClassAlphabet(d.char_class);
  std::string out(static_cast<size_t>(length), ' ');
  for (char& ch : out) ch = alphabet[rng.UniformBelow(alphabet.size())];
  return out;
}

}  // namespace internal

// Lower bound of partition i (i == k gives the domain max).
inline double PartitionBound(const NumericDomain& d, int k, int i) {
  if (i <= 0) return d.min;
  if (i >= k) return d.max;
  return d.min + (d.max - d.min) * i / k;
}

// Index of the equal-width partition containing x. Interior boundaries belong
// to the right-hand partition.
inline int PartitionIndex(const NumericDomain& d, int k, double x) {
  int i = static_cast<int>(std::floor((x - d.min) * k / (d.max - d.min)));
  i = std::clamp(i, 0, k - 1);
  while (i > 0 && x < PartitionBound(d, k, i)) --i;
  while (i < k - 1 && x >= PartitionBound(d, k, i + 1)) ++i;
  return i;
}

// Midpoints of the k partitions, snapped to the domain's value grid
// (integers for integer domains). Ascending; may repeat on tiny domains.
inline std::vector<double> RoundingPoints(const NumericDomain& d, int k) {
  std::vector<double> points;
  for (int i = 0; i < k; ++i) {
    const double mid = d.min + (d.max - d.min) * (2.0 * i + 1) / (2.0 * k);
    const int precision = d.integer ? 0 : d.precision;
    auto snapped =
        internal::SnapToGrid(mid, precision, d.min, d.max, d.max_inclusive);
    points.push_back(snapped ? *snapped : mid);
  }
  return points;
}

// [v - n (v - min), v + n (max - v)].
inline std::pair<double, double> NoiseInterval(double v, const NumericDomain& d,
                                               double n) {
  return {v - n * (v - d.min), v + n * (d.max - v)};
}

// ---------------------------------------------------------------------------
// Global Recoding

inline AnonymizedRecord GlobalRecodingAnonymize(const DataValue& value,
                                                const DomainSpec& domain,
                                                const GlobalRecodingCfg& cfg) {
  ValidateConfig(cfg);
  internal::RequireConforming(value, domain, "global_recoding");
  if (domain.is_tuple()) {
    return internal::PerComponent(
        value, domain, [&](const DataValue& v, const DomainSpec& d, size_t) {
          return GlobalRecodingAnonymize(v, d, cfg);
        });
  }
  if (domain.is_numeric()) {
    const NumericDomain& d = domain.numeric();
    const int k = cfg.partitions;
    const int i = PartitionIndex(d, k, value.continuous().value);
    return IntervalGroup{domain, PartitionBound(d, k, i),
                         PartitionBound(d, k, i + 1),
                         i == k - 1 && d.max_inclusive};
  }
  if (domain.is_categorical()) {
    const CategoricalDomain& d = domain.categorical();
    if (!d.has_hierarchy()) {
      throw Error(ErrorCode::kMissingHierarchy,
                  "global_recoding needs a category hierarchy");
    }
    for (const HierarchyGroup& g : d.hierarchy) {
      if (internal::Contains(g.members, value.categorical().label)) {
        return CategoryGroup{domain, g.label};
      }
    }
  }
  internal::Unsupported("global_recoding", internal::KindName(domain));
}

inline DataValue GlobalRecodingRegenerate(const AnonymizedRecord& rec,
                                          RandomStream& rng) {
  if (const auto* g = rec.get_if<IntervalGroup>()) {
    const NumericDomain& d = g->domain.numeric();
    if (d.integer) {
      const double lo = std::ceil(g->lo);
      const double hi = g->hi_inclusive ? std::floor(g->hi) : std::ceil(g->hi) - 1;
      if (lo > hi) {
        throw Error(ErrorCode::kDegenerateInterval,
                    "interval contains no integer");
      }
      return Number(static_cast<double>(rng.UniformInt(
                        static_cast<int64_t>(lo), static_cast<int64_t>(hi))),
                    0);
    }
    const double x = rng.UniformReal(g->lo, g->hi);
    auto snapped =
        internal::SnapToGrid(x, d.precision, g->lo, g->hi, g->hi_inclusive);
    if (!snapped) {
      throw Error(ErrorCode::kDegenerateInterval,
                  "interval contains no value at the domain precision");
    }
    return internal::GeneratedNumber(d, *snapped);
  }
  if (const auto* g = rec.get_if<CategoryGroup>()) {
    for (const HierarchyGroup& h : g->domain.categorical().hierarchy) {
      if (h.label == g->group_label) {
        return Label(h.members[rng.UniformBelow(h.members.size())]);
      }
    }
    throw Error(ErrorCode::kValidation,
                "unknown category group '" + g->group_label + "'");
  }
  throw Error(ErrorCode::kValidation,
              "global_recoding regeneration needs an interval or group");
}

// ---------------------------------------------------------------------------
// Rounding

inline AnonymizedRecord RoundingAnonymize(const DataValue& value,
                                          const DomainSpec& domain,
                                          const RoundingCfg& cfg) {
  ValidateConfig(cfg);
  internal::RequireConforming(value, domain, "rounding");
  if (domain.is_tuple()) {
    return internal::PerComponent(
        value, domain, [&](const DataValue& v, const DomainSpec& d, size_t) {
          return RoundingAnonymize(v, d, cfg);
        });
  }
  if (!domain.is_numeric()) {
    internal::Unsupported("rounding", internal::KindName(domain));
  }
  const NumericDomain& d = domain.numeric();
  const double x = value.continuous().value;
  const std::vector<double> points = RoundingPoints(d, cfg.partitions);
  double best = points.front();
  for (double p : points) {
    // Strict comparison: equidistant inputs keep the lower point.
    if (std::fabs(x - p) < std::fabs(x - best)) best = p;
  }
  return Concrete{domain, internal::GeneratedNumber(d, best)};
}

// ---------------------------------------------------------------------------
// Local Suppression

inline AnonymizedRecord LocalSuppressionAnonymize(
    const DataValue& value, const DomainSpec& domain,
    const LocalSuppressionCfg& cfg) {
  const DomainSpec effective = internal::WithCharClass(domain, cfg.char_class);
  internal::RequireConforming(value, effective, "local_suppression");
  if (effective.is_tuple()) {
    return internal::PerComponent(
        value, effective, [&](const DataValue& v, const DomainSpec& d, size_t) {
          return LocalSuppressionAnonymize(v, d, cfg);
        });
  }
  Suppressed rec{effective, std::nullopt};
  if (effective.is_string() &&
      cfg.length_policy == LengthPolicy::kPreserveOriginal) {
    rec.length_hint = static_cast<int>(value.text().text.size());
  }
  return rec;
}

inline DataValue LocalSuppressionRegenerate(const Suppressed& rec,
                                            RandomStream& rng) {
  const DomainSpec& domain = rec.domain;
  if (domain.is_numeric()) {
    const NumericDomain& d = domain.numeric();
    if (d.integer) {
      return Number(static_cast<double>(
                        rng.UniformInt(static_cast<int64_t>(d.min),
                                       static_cast<int64_t>(d.IntegerMax()))),
                    0);
    }
    const double x = rng.UniformReal(d.min, d.max);
    auto snapped =
        internal::SnapToGrid(x, d.precision, d.min, d.max, d.max_inclusive);
    return internal::GeneratedNumber(d, snapped ? *snapped : x);
  }
  if (domain.is_categorical()) {
    const auto& cats = domain.categorical().categories;
    return Label(cats[rng.UniformBelow(cats.size())]);
  }
  if (domain.is_string()) {
    const StringDomain& d = domain.string();
    const int length =
        rec.length_hint ? *rec.length_hint
                        : static_cast<int>(rng.UniformInt(d.length_min,
                                                          d.length_max));
    return String(internal::RandomString(d, length, rng));
  }
  throw Error(ErrorCode::kValidation,
              "tuple domains are suppressed component-wise");
}

// ---------------------------------------------------------------------------
// Special Char Driven Local Suppression

inline std::string SpecialCharsOf(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (IsSpecialChar(ch)) out.push_back(ch);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline AnonymizedRecord ScdLocalSuppressionAnonymize(
    const DataValue& value, const DomainSpec& domain,
    const ScdLocalSuppressionCfg& cfg) {
  const DomainSpec effective = internal::WithCharClass(domain, cfg.char_class);
  if (!effective.is_string()) {
    internal::Unsupported("scd_local_suppression",
                          internal::KindName(effective));
  }
  internal::RequireConforming(value, effective, "scd_local_suppression");
  SpecialChars rec{effective, SpecialCharsOf(value.text().text), std::nullopt};
  if (cfg.length_policy == LengthPolicy::kPreserveOriginal) {
    rec.length_hint = static_cast<int>(value.text().text.size());
  }
  return rec;
}

inline DataValue ScdLocalSuppressionRegenerate(const SpecialChars& rec,
                                               RandomStream& rng,
                                               RegenerationLog* log = nullptr) {
  const StringDomain& d = rec.domain.string();
  for (char ch : rec.specials) {
    if (!InCharClass(d.char_class, ch)) {
      throw Error(ErrorCode::kValidation,
                  std::string("special character '") + ch +
                      "' is outside the regeneration class");
    }
  }
  int length = rec.length_hint
                   ? *rec.length_hint
                   : static_cast<int>(rng.UniformInt(d.length_min,
                                                     d.length_max));
  const int m = static_cast<int>(rec.specials.size());
  if (length < m) {
    length = m;
    if (log) ++log->length_raised;
  }
  std::string out = internal::RandomString(d, length, rng);
  // Ordered sample of m distinct positions: a uniform position set and a
  // uniform arrangement of the specials over it.
  std::vector<int> positions(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) positions[static_cast<size_t>(i)] = i;
  for (int i = 0; i < m; ++i) {
    const auto j = i + static_cast<int>(rng.UniformBelow(
                           static_cast<uint64_t>(length - i)));
    std::swap(positions[static_cast<size_t>(i)],
              positions[static_cast<size_t>(j)]);
    out[static_cast<size_t>(positions[static_cast<size_t>(i)])] =
        rec.specials[static_cast<size_t>(i)];
  }
  return String(std::move(out));
}

// ---------------------------------------------------------------------------
// Noise Addition

inline AnonymizedRecord NoiseAdditionAnonymize(const DataValue& value,
                                               const DomainSpec& domain,
                                               const NoiseAdditionCfg& cfg,
                                               RandomStream& rng) {
  ValidateConfig(cfg);
  internal::RequireConforming(value, domain, "noise_addition");
  if (domain.is_tuple()) {
    return internal::PerComponent(
        value, domain, [&](const DataValue& v, const DomainSpec& d, size_t i) {
          RandomStream sub = rng.Child(i);
          return NoiseAdditionAnonymize(v, d, cfg, sub);
        });
  }
  if (!domain.is_numeric()) {
    internal::Unsupported("noise_addition", internal::KindName(domain));
  }
  const NumericDomain& d = domain.numeric();
  const double v = value.continuous().value;
  const auto [a, b] = NoiseInterval(v, d, cfg.noise);
  const double x = rng.UniformReal(a, b);
  if (d.integer) {
    const double r = std::clamp(std::floor(x + 0.5), d.min, d.IntegerMax());
    return Concrete{domain, Number(r, 0)};
  }
  const double lo = std::max(a, d.min);
  const double hi = std::min(b, d.max);
  const bool hi_inclusive = b < d.max || d.max_inclusive;
  auto snapped = internal::SnapToGrid(x, d.precision, lo, hi, hi_inclusive);
  if (!snapped) return Concrete{domain, value};
  return Concrete{domain, internal::GeneratedNumber(d, *snapped)};
}

// ---------------------------------------------------------------------------
// Dispatchers

// Anonymizes a field value. Tuple values are handled component-wise, each
// component drawing from rng.Child(component).
inline AnonymizedRecord Anonymize(const DataValue& value,
                                  const DomainSpec& domain,
                                  const TechniqueConfig& cfg,
                                  RandomStream& rng) {
  return std::visit(
      [&](const auto& c) -> AnonymizedRecord {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, GlobalRecodingCfg>) {
          return GlobalRecodingAnonymize(value, domain, c);
        } else if constexpr (std::is_same_v<T, RoundingCfg>) {
          return RoundingAnonymize(value, domain, c);
        } else if constexpr (std::is_same_v<T, LocalSuppressionCfg>) {
          return LocalSuppressionAnonymize(value, domain, c);
        } else if constexpr (std::is_same_v<T, ScdLocalSuppressionCfg>) {
          if (domain.is_tuple()) {
            internal::Unsupported("scd_local_suppression", "tuple");
          }
          return ScdLocalSuppressionAnonymize(value, domain, c);
        } else {
          return NoiseAdditionAnonymize(value, domain, c, rng);
        }
      },
      cfg);
}

// Turns a record into a concrete value. Concrete records come back
// unchanged; tuple components draw from rng.Child(component).
inline DataValue Regenerate(const AnonymizedRecord& rec, RandomStream& rng,
                            RegenerationLog* log = nullptr) {
  if (const auto* c = rec.get_if<Concrete>()) return c->value;
  if (const auto* s = rec.get_if<Suppressed>()) {
    return LocalSuppressionRegenerate(*s, rng);
  }
  if (const auto* s = rec.get_if<SpecialChars>()) {
    return ScdLocalSuppressionRegenerate(*s, rng, log);
  }
  if (const auto* t = rec.get_if<TupleRecord>()) {
    std::vector<DataValue> comps;
    for (size_t i = 0; i < t->components.size(); ++i) {
      RandomStream sub = rng.Child(i);
      comps.push_back(Regenerate(t->components[i], sub, log));
    }
    return Tuple(std::move(comps));
  }
  return GlobalRecodingRegenerate(rec, rng);
}

// Domain the regenerated value will conform to.
inline DomainSpec RecordDomain(const AnonymizedRecord& rec) {
  return std::visit(
      [](const auto& r) -> DomainSpec {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, TupleRecord>) {
          TupleDomain d;
          for (const auto& c : r.components) {
            d.components.push_back(RecordDomain(c));
          }
          return d;
        } else {
          return r.domain;
        }
      },
      rec.v);
}

// Checks a record read from outside (e.g. an anonymized trace file).
inline void ValidateRecord(const AnonymizedRecord& rec) {
  if (const auto* t = rec.get_if<TupleRecord>()) {
    if (t->components.empty()) {
      throw Error(ErrorCode::kValidation, "tuple record has no components");
    }
    for (const auto& c : t->components) {
      if (c.get_if<TupleRecord>()) {
        throw Error(ErrorCode::kValidation, "tuple records cannot be nested");
      }
      ValidateRecord(c);
    }
    return;
  }
  const DomainSpec domain = RecordDomain(rec);
  ValidateDomain(domain);
  if (domain.is_tuple()) {
    throw Error(ErrorCode::kValidation,
                "tuple domains must be recorded component-wise");
  }
  auto check_hint = [&](const std::optional<int>& hint) {
    if (!hint) return;
    if (!domain.is_string() || *hint < 1 ||
        *hint > domain.string().length_max) {
      throw Error(ErrorCode::kValidation, "length hint outside the domain");
    }
  };
  if (const auto* s = rec.get_if<Suppressed>()) {
    check_hint(s->length_hint);
  } else if (const auto* s = rec.get_if<SpecialChars>()) {
    if (!domain.is_string()) {
      throw Error(ErrorCode::kValidation, "special chars need a string domain");
    }
    check_hint(s->length_hint);
    for (char ch : s->specials) {
      if (!IsSpecialChar(ch) || !InCharClass(domain.string().char_class, ch)) {
        throw Error(ErrorCode::kValidation,
                    std::string("invalid special character '") + ch + "'");
      }
    }
    if (static_cast<int>(s->specials.size()) > domain.string().length_max) {
      throw Error(ErrorCode::kValidation, "more specials than length_max");
    }
  } else if (const auto* g = rec.get_if<IntervalGroup>()) {
    if (!domain.is_numeric()) {
      throw Error(ErrorCode::kValidation, "interval needs a numeric domain");
    }
    const NumericDomain& d = domain.numeric();
    if (!(g->lo < g->hi) || g->lo < d.min || g->hi > d.max ||
        (g->hi == d.max && g->hi_inclusive && !d.max_inclusive)) {
      throw Error(ErrorCode::kValidation, "interval outside its domain");
    }
  } else if (const auto* g = rec.get_if<CategoryGroup>()) {
    if (!domain.is_categorical()) {
      throw Error(ErrorCode::kValidation,
                  "category group needs a categorical domain");
    }
    bool found = false;
    for (const auto& h : domain.categorical().hierarchy) {
      found = found || h.label == g->group_label;
    }
    if (!found) {
      throw Error(ErrorCode::kValidation,
                  "unknown category group '" + g->group_label + "'");
    }
  } else if (const auto* c = rec.get_if<Concrete>()) {
    if (!Conforms(c->value, domain)) {
      throw Error(ErrorCode::kValidation,
                  "concrete value does not conform to its domain");
    }
  }
}

// ---------------------------------------------------------------------------
// Lo/Me/Hi aliases

enum class Level { kNone, kLo, kMe, kHi };

inline std::string_view LevelName(Level l) {
  switch (l) {
    case Level::kNone: return "-";
    case Level::kLo: return "Lo";
    case Level::kMe: return "Me";
    case Level::kHi: return "Hi";
  }
  return "-";
}

inline std::optional<Level> ParseLevel(std::string_view s) {
  if (s == "-" || s.empty()) return Level::kNone;
  if (s == "Lo") return Level::kLo;
  if (s == "Me") return Level::kMe;
  if (s == "Hi") return Level::kHi;
  return std::nullopt;
}

enum class PartitionScale { kSmall, kBig };

// Partition counts retaining less/medium/more information.
inline int PartitionsForLevel(Level level, PartitionScale scale) {
  const bool big = scale == PartitionScale::kBig;
  switch (level) {
    case Level::kLo: return big ? 50 : 2;
    case Level::kMe: return big ? 100 : 3;
    case Level::kHi: return big ? 500 : 4;
    case Level::kNone: break;
  }
  throw Error(ErrorCode::kValidation, "partitions need a Lo/Me/Hi level");
}

inline double NoiseForLevel(Level level) {
  switch (level) {
    case Level::kLo: return 0.5;
    case Level::kMe: return 0.4;
    case Level::kHi: return 0.3;
    case Level::kNone: break;
  }
  throw Error(ErrorCode::kValidation, "noise needs a Lo/Me/Hi level");
}

inline LengthPolicy LengthPolicyForLevel(Level level) {
  switch (level) {
    case Level::kLo: return LengthPolicy::kRandomInRange;
    case Level::kHi: return LengthPolicy::kPreserveOriginal;
    default: break;
  }
  throw Error(ErrorCode::kValidation, "length policy levels are Lo or Hi");
}

// A technique configuration plus the level label it was chosen under.
struct ConfiguredTechnique {
  TechniqueConfig config;
  Level level = Level::kNone;
};

}  // namespace anonrepro

#endif  // ANONREPRO_ANONYMIZERS_H_
