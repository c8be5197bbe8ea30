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

#ifndef ANONREPRO_DISTRIBUTION_H_
#define ANONREPRO_DISTRIBUTION_H_

// Exact output distributions of the anonymize+regenerate pipeline, for
// finite domains. These are derived from the technique definitions directly,
// not by running the samplers, and serve as ground truth for the Monte-Carlo
// harness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "anonrepro/anonymizers.h"
#include "anonrepro/error.h"
#include "anonrepro/trace.h"

namespace anonrepro {

struct WeightedValue {
  DataValue value;
  double probability = 0;
};

// Probability mass over concrete values. Entries may repeat a value; their
// masses add.
using Support = std::vector<WeightedValue>;

inline constexpr uint64_t kMaxEnumeration = 10'000'000;
inline constexpr int kMaxEnumeratedLength = 4;
inline constexpr size_t kMaxEnumeratedAlphabet = 16;

namespace internal {

[[noreturn]] inline void Infeasible(const std::string& why) {
  throw Error(ErrorCode::kInfeasibleEnumeration, why);
}

inline uint64_t CheckedMul(uint64_t a, uint64_t b, uint64_t limit) {
  if (a != 0 && b > limit / a) Infeasible("support exceeds enumeration limit");
  const uint64_t r = a * b;
  if (r > limit) Infeasible("support exceeds enumeration limit");
  return r;
}

inline Support UniformIntegers(double lo, double hi, uint64_t limit) {
  if (lo > hi) Infeasible("empty integer range");
  const double count = hi - lo + 1;
  if (count > static_cast<double>(limit)) {
    Infeasible("integer range exceeds enumeration limit");
  }
  Support out;
  const double p = 1.0 / count;
  for (double x = lo; x <= hi; x += 1) out.push_back({Number(x, 0), p});
  return out;
}

inline Support UniformLabels(const std::vector<std::string>& labels) {
  Support out;
  const double p = 1.0 / static_cast<double>(labels.size());
  for (const auto& l : labels) out.push_back({Label(l), p});
  return out;
}

inline void CheckStringFeasible(const StringDomain& d, int max_length) {
  if (max_length > kMaxEnumeratedLength) {
    Infeasible("string length above " + std::to_string(kMaxEnumeratedLength));
  }
  if (CharClassAlphabet(d.char_class).size() > kMaxEnumeratedAlphabet) {
    Infeasible("character class too large to enumerate");
  }
}

// Calls fn(s) for every string of the given length over the alphabet.
template <typename Fn>
void ForEachString(const std::string& alphabet, int length, Fn&& fn) {
  std::vector<size_t> idx(static_cast<size_t>(length), 0);
  std::string s(static_cast<size_t>(length), alphabet.empty() ? ' ' : alphabet[0]);
  while (true) {
    fn(s);
    int pos = length - 1;
    while (pos >= 0) {
      auto& i = idx[static_cast<size_t>(pos)];
      if (++i < alphabet.size()) {
        s[static_cast<size_t>(pos)] = alphabet[i];
        break;
      }
      i = 0;
      s[static_cast<size_t>(pos)] = alphabet[0];
      --pos;
    }
    if (pos < 0) return;
  }
}

// Lengths a string regeneration draws, with their probabilities.
inline std::vector<std::pair<int, double>> LengthLaw(
    const StringDomain& d, const std::optional<int>& hint) {
  if (hint) return {{*hint, 1.0}};
  std::vector<std::pair<int, double>> out;
  const double p = 1.0 / (d.length_max - d.length_min + 1);
  for (int l = d.length_min; l <= d.length_max; ++l) out.push_back({l, p});
  return out;
}

inline double Factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Probability that a uniformly random arrangement of `specials` spells t.
inline double ArrangementProbability(std::string t, const std::string& specials) {
  std::sort(t.begin(), t.end());
  if (t != specials) return 0;
  std::map<char, int> mult;
  for (char c : specials) ++mult[c];
  double same = 1;
  for (const auto& [c, k] : mult) same *= Factorial(k);
  return same / Factorial(static_cast<int>(specials.size()));
}

inline Support SpecialCharsSupport(const SpecialChars& rec, uint64_t limit) {
  const StringDomain& d = rec.domain.string();
  const std::string& alphabet = CharClassAlphabet(d.char_class);
  const auto law = LengthLaw(d, rec.length_hint);
  const int m = static_cast<int>(rec.specials.size());
  int longest = 0;
  for (const auto& [l, p] : law) longest = std::max(longest, std::max(l, m));
  CheckStringFeasible(d, longest);
  Support out;
  for (const auto& [drawn, p_len] : law) {
    const int length = std::max(drawn, m);
    double subsets = 0;
    std::vector<unsigned> masks;
    for (unsigned mask = 0; mask < (1u << length); ++mask) {
      if (__builtin_popcount(mask) == m) masks.push_back(mask);
    }
    subsets = static_cast<double>(masks.size());
    const double free_prob = std::pow(static_cast<double>(alphabet.size()),
                                      -static_cast<double>(length - m));
    ForEachString(alphabet, length, [&](const std::string& s) {
      double p = 0;
      for (unsigned mask : masks) {
        std::string picked;
        for (int i = 0; i < length; ++i) {
          if (mask & (1u << i)) picked.push_back(s[static_cast<size_t>(i)]);
        }
        p += ArrangementProbability(picked, rec.specials);
      }
      p = p / subsets * free_prob * p_len;
      if (p > 0) out.push_back({String(s), p});
    });
    if (out.size() > limit) Infeasible("support exceeds enumeration limit");
  }
  return out;
}

inline Support Product(const std::vector<Support>& parts, uint64_t limit) {
  uint64_t total = 1;
  for (const auto& p : parts) total = CheckedMul(total, p.size(), limit);
  Support out;
  out.reserve(static_cast<size_t>(total));
  std::vector<size_t> idx(parts.size(), 0);
  if (total == 0) return out;
  while (true) {
    std::vector<DataValue> comps;
    double p = 1;
    for (size_t i = 0; i < parts.size(); ++i) {
      comps.push_back(parts[i][idx[i]].value);
      p *= parts[i][idx[i]].probability;
    }
    out.push_back({Tuple(std::move(comps)), p});
    size_t pos = parts.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < parts[pos].size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (parts.empty()) return out;
  }
}

}  // namespace internal

// Distribution of Regenerate(rec, ·) over all random streams.
inline Support RegenerationSupport(const AnonymizedRecord& rec,
                                   uint64_t limit = kMaxEnumeration) {
  if (const auto* c = rec.get_if<Concrete>()) return {{c->value, 1.0}};
  if (const auto* t = rec.get_if<TupleRecord>()) {
    std::vector<Support> parts;
    for (const auto& c : t->components) {
      parts.push_back(RegenerationSupport(c, limit));
    }
    return internal::Product(parts, limit);
  }
  if (const auto* s = rec.get_if<Suppressed>()) {
    const DomainSpec& domain = s->domain;
    if (domain.is_numeric()) {
      const NumericDomain& d = domain.numeric();
      if (!d.integer) internal::Infeasible("continuous domain");
      return internal::UniformIntegers(d.min, d.IntegerMax(), limit);
    }
    if (domain.is_categorical()) {
      return internal::UniformLabels(domain.categorical().categories);
    }
    const StringDomain& d = domain.string();
    const auto law = internal::LengthLaw(d, s->length_hint);
    internal::CheckStringFeasible(d, law.back().first);
    const std::string& alphabet = CharClassAlphabet(d.char_class);
    Support out;
    for (const auto& [length, p_len] : law) {
      const double p = p_len * std::pow(static_cast<double>(alphabet.size()),
                                        -static_cast<double>(length));
      internal::ForEachString(alphabet, length, [&](const std::string& str) {
        out.push_back({String(str), p});
      });
    }
    return out;
  }
  if (const auto* s = rec.get_if<SpecialChars>()) {
    return internal::SpecialCharsSupport(*s, limit);
  }
  if (const auto* g = rec.get_if<IntervalGroup>()) {
    const NumericDomain& d = g->domain.numeric();
    if (!d.integer) internal::Infeasible("continuous interval");
    const double lo = std::ceil(g->lo);
    const double hi =
        g->hi_inclusive ? std::floor(g->hi) : std::ceil(g->hi) - 1;
    return internal::UniformIntegers(lo, hi, limit);
  }
  const auto& g = std::get<CategoryGroup>(rec.v);
  for (const auto& h : g.domain.categorical().hierarchy) {
    if (h.label == g.group_label) return internal::UniformLabels(h.members);
  }
  throw Error(ErrorCode::kValidation,
              "unknown category group '" + g.group_label + "'");
}

// Distribution of Noise Addition output over integer domains. A uniform draw
// x in [a, b) maps to floor(x + 1/2) clamped into the domain, so integer k
// receives |[k - 1/2, k + 1/2) ∩ [a, b)| / (b - a).
inline Support NoiseSupport(const DataValue& value, const DomainSpec& domain,
                            const NoiseAdditionCfg& cfg,
                            uint64_t limit = kMaxEnumeration) {
  if (domain.is_tuple()) {
    std::vector<Support> parts;
    const auto& comps = value.tuple().components;
    for (size_t i = 0; i < comps.size(); ++i) {
      parts.push_back(
          NoiseSupport(comps[i], domain.tuple().components[i], cfg, limit));
    }
    return internal::Product(parts, limit);
  }
  if (!domain.is_numeric()) {
    internal::Unsupported("noise_addition", internal::KindName(domain));
  }
  const NumericDomain& d = domain.numeric();
  if (!d.integer) internal::Infeasible("continuous domain");
  const auto [a, b] = NoiseInterval(value.continuous().value, d, cfg.noise);
  std::map<double, double> mass;
  for (double k = std::floor(a + 0.5); k <= std::floor(b + 0.5); k += 1) {
    const double lo = std::max(a, k - 0.5);
    const double hi = std::min(b, k + 0.5);
    if (hi <= lo) continue;
    const double target = std::clamp(k, d.min, d.IntegerMax());
    mass[target] += (hi - lo) / (b - a);
  }
  if (mass.size() > limit) internal::Infeasible("noise support too large");
  Support out;
  for (const auto& [k, p] : mass) out.push_back({Number(k, 0), p});
  return out;
}

// Distribution of Regenerate(Anonymize(value, domain, cfg)).
inline Support TechniqueSupport(const DataValue& value,
                                const DomainSpec& domain,
                                const TechniqueConfig& cfg,
                                uint64_t limit = kMaxEnumeration) {
  if (const auto* n = std::get_if<NoiseAdditionCfg>(&cfg)) {
    internal::RequireConforming(value, domain, "noise_addition");
    return NoiseSupport(value, domain, *n, limit);
  }
  RandomStream unused(0);
  return RegenerationSupport(Anonymize(value, domain, cfg, unused), limit);
}

}  // namespace anonrepro

#endif  // ANONREPRO_DISTRIBUTION_H_
