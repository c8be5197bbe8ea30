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

#ifndef ANONREPRO_HARNESS_H_
#define ANONREPRO_HARNESS_H_

// Monte-Carlo reproduction trials. Each trial anonymizes the original input,
// regenerates a concrete input from the records and asks the oracle whether
// the failure shows up again.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "anonrepro/anonymizers.h"
#include "anonrepro/distribution.h"
#include "anonrepro/oracle.h"
#include "anonrepro/random.h"
#include "anonrepro/record_json.h"

namespace anonrepro {

inline constexpr int64_t kDefaultTrials = 100;
inline constexpr double kDefaultConfidence = 0.95;
inline constexpr int64_t kVerificationTrials = 100'000;

// Which technique each oracle field is anonymized with.
struct Scenario {
  std::string technique;  // technique name, or "mixed"
  Level level = Level::kNone;
  std::string params;
  std::vector<TechniqueConfig> per_field;  // aligned with oracle fields
};

inline Scenario UniformScenario(const BugOracle& oracle,
                                const ConfiguredTechnique& t) {
  Scenario s;
  s.technique = std::string(TechniqueName(TechniqueOf(t.config)));
  s.level = t.level;
  s.params = TechniqueParams(t.config);
  s.per_field.assign(oracle.fields.size(), t.config);
  return s;
}

struct TrialReport {
  std::string oracle;
  std::string technique;
  Level level = Level::kNone;
  std::string params;
  int64_t trials = 0;
  int64_t successes = 0;
  double reproduction_frequency = 0;
  std::optional<int64_t> attempts_95;  // empty: not reproduced
  int64_t disclosure_count = 0;
  double disclosure_frequency = 0;
  int64_t length_adjusted = 0;
  double confidence = kDefaultConfidence;
  uint64_t seed = 0;
};

// Smallest k with 1 - (1 - p)^k >= confidence; empty when p = 0.
inline std::optional<int64_t> AttemptsForConfidence(
    double p, double confidence = kDefaultConfidence) {
  if (!(p >= 0 && p <= 1) || !(confidence > 0 && confidence < 1)) {
    throw Error(ErrorCode::kValidation,
                "need 0 <= p <= 1 and 0 < confidence < 1");
  }
  if (p == 0) return std::nullopt;
  if (p == 1) return 1;
  const double q = std::log1p(-p);
  auto reached = [&](int64_t k) {
    return -std::expm1(static_cast<double>(k) * q) >= confidence;
  };
  auto k = static_cast<int64_t>(std::ceil(std::log1p(-confidence) / q));
  k = std::max<int64_t>(k, 1);
  // Guard the closed form against rounding at integer boundaries.
  while (k > 1 && reached(k - 1)) --k;
  while (!reached(k)) ++k;
  return k;
}

namespace internal {

struct TrialCounts {
  int64_t successes = 0;
  int64_t disclosures = 0;
  int64_t length_adjusted = 0;
};

inline TrialCounts RunTrialRange(const BugOracle& oracle,
                                 const Scenario& scenario,
                                 const std::vector<DataValue>& original,
                                 uint64_t seed, int64_t begin, int64_t end) {
  TrialCounts counts;
  const RandomStream root(seed);
  std::vector<DataValue> regenerated(original.size());
  for (int64_t i = begin; i < end; ++i) {
    const RandomStream trial = root.Child(static_cast<uint64_t>(i));
    RegenerationLog log;
    bool disclosed = true;
    for (size_t f = 0; f < original.size(); ++f) {
      const RandomStream field = trial.Child(f);
      RandomStream anon = field.Child(0);
      RandomStream regen = field.Child(1);
      const AnonymizedRecord rec = Anonymize(
          original[f], oracle.fields[f].domain, scenario.per_field[f], anon);
      regenerated[f] = Regenerate(rec, regen, &log);
      disclosed = disclosed && SameInput(regenerated[f], original[f]);
    }
    if (Evaluate(oracle, std::span<const DataValue>(regenerated))) {
      ++counts.successes;
    }
    if (disclosed) ++counts.disclosures;
    counts.length_adjusted += log.length_raised;
  }
  return counts;
}

inline void CheckBaseline(const BugOracle& oracle, const Scenario& scenario,
                          const std::vector<DataValue>& original) {
  if (original.size() != oracle.fields.size() ||
      scenario.per_field.size() != oracle.fields.size()) {
    throw Error(ErrorCode::kValidation,
                oracle.name + ": every field needs a value and a technique");
  }
  for (size_t f = 0; f < original.size(); ++f) {
    if (!Conforms(original[f], oracle.fields[f].domain)) {
      throw Error(ErrorCode::kInvalidBaseline,
                  oracle.name + ": original '" + oracle.fields[f].name +
                      "' does not conform to its domain");
    }
  }
  if (!Evaluate(oracle, std::span<const DataValue>(original))) {
    throw Error(ErrorCode::kInvalidBaseline,
                oracle.name + ": the original input does not trigger the bug");
  }
  // Surfaces unsupported technique/field pairs before any worker starts.
  for (size_t f = 0; f < original.size(); ++f) {
    RandomStream probe(0);
    (void)Anonymize(original[f], oracle.fields[f].domain, scenario.per_field[f],
                    probe);
  }
}

}  // namespace internal

// Runs `trials` anonymize/regenerate/evaluate rounds. Trial i draws only from
// streams derived from (seed, i), and counts are summed, so the report does
// not depend on `workers`.
inline TrialReport RunTrials(const BugOracle& oracle, const Scenario& scenario,
                             const std::vector<DataValue>& original,
                             int64_t trials, uint64_t seed, int workers = 1,
                             double confidence = kDefaultConfidence) {
  if (trials <= 0) throw Error(ErrorCode::kUsage, "trials must be positive");
  internal::CheckBaseline(oracle, scenario, original);

  workers = static_cast<int>(std::clamp<int64_t>(workers, 1, trials));
  std::vector<internal::TrialCounts> partial(static_cast<size_t>(workers));
  if (workers == 1) {
    partial[0] =
        internal::RunTrialRange(oracle, scenario, original, seed, 0, trials);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      const int64_t begin = trials * w / workers;
      const int64_t end = trials * (w + 1) / workers;
      threads.emplace_back([&, w, begin, end] {
        try {
          partial[static_cast<size_t>(w)] = internal::RunTrialRange(
              oracle, scenario, original, seed, begin, end);
        } catch (...) {
          errors[static_cast<size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  TrialReport r;
  r.oracle = oracle.name;
  r.technique = scenario.technique;
  r.level = scenario.level;
  r.params = scenario.params;
  r.trials = trials;
  for (const auto& c : partial) {
    r.successes += c.successes;
    r.disclosure_count += c.disclosures;
    r.length_adjusted += c.length_adjusted;
  }
  r.reproduction_frequency =
      static_cast<double>(r.successes) / static_cast<double>(trials);
  r.disclosure_frequency =
      static_cast<double>(r.disclosure_count) / static_cast<double>(trials);
  r.confidence = confidence;
  r.attempts_95 = AttemptsForConfidence(r.reproduction_frequency, confidence);
  r.seed = seed;
  return r;
}

// ---------------------------------------------------------------------------
// Aggregation

struct AggregateRow {
  std::string technique;
  Level level = Level::kNone;
  std::optional<double> mean_attempts;  // over defined entries only
  std::optional<int64_t> max_attempts;
  int64_t not_reproduced = 0;
  int64_t count = 0;
};

// One row per (technique, level), in order of first appearance.
inline std::vector<AggregateRow> Aggregate(
    const std::vector<TrialReport>& reports) {
  if (reports.empty()) {
    throw Error(ErrorCode::kValidation, "nothing to aggregate");
  }
  std::vector<AggregateRow> rows;
  std::vector<double> sums;
  std::vector<int64_t> defined;
  for (const TrialReport& r : reports) {
    size_t i = 0;
    while (i < rows.size() &&
           !(rows[i].technique == r.technique && rows[i].level == r.level)) {
      ++i;
    }
    if (i == rows.size()) {
      rows.push_back({r.technique, r.level, std::nullopt, std::nullopt, 0, 0});
      sums.push_back(0);
      defined.push_back(0);
    }
    AggregateRow& row = rows[i];
    ++row.count;
    if (!r.attempts_95) {
      ++row.not_reproduced;
      continue;
    }
    sums[i] += static_cast<double>(*r.attempts_95);
    ++defined[i];
    row.max_attempts = std::max(row.max_attempts.value_or(0), *r.attempts_95);
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (defined[i] > 0) rows[i].mean_attempts = sums[i] / defined[i];
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Ground-truth verification

enum class Verdict { kPass, kFail, kSkipped };

inline std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kSkipped: return "SKIPPED";
  }
  return "";
}

struct Verification {
  Verdict verdict = Verdict::kSkipped;
  double exact = 0;     // enumerated reproduction probability
  double estimate = 0;  // Monte-Carlo frequency
  int64_t trials = 0;
  int64_t successes = 0;
  int64_t lower = 0;  // 99% acceptance region for successes
  int64_t upper = 0;
  std::string note;
};

// Two-sided 99% region [lower, upper] of Binomial(trials, p).
inline std::pair<int64_t, int64_t> BinomialAcceptance(int64_t trials,
                                                      double p,
                                                      double alpha = 0.01) {
  if (p <= 0) return {0, 0};
  if (p >= 1) return {trials, trials};
  const boost::math::binomial_distribution<double> dist(
      static_cast<double>(trials), p);
  const double lo = boost::math::quantile(dist, alpha / 2);
  const double hi = boost::math::quantile(boost::math::complement(dist, alpha / 2));
  return {static_cast<int64_t>(std::floor(lo)),
          static_cast<int64_t>(std::ceil(hi))};
}

inline double ExactReproductionProbability(
    const BugOracle& oracle, const Scenario& scenario,
    const std::vector<DataValue>& original) {
  std::vector<Support> supports;
  for (size_t f = 0; f < original.size(); ++f) {
    supports.push_back(TechniqueSupport(
        original[f], oracle.fields[f].domain, scenario.per_field[f]));
  }
  return ExhaustiveProbability(oracle, supports);
}

inline Verification VerifyAgainstBruteforce(
    const BugOracle& oracle, const Scenario& scenario,
    const std::vector<DataValue>& original,
    int64_t trials = kVerificationTrials, uint64_t seed = 0, int workers = 1) {
  Verification v;
  v.trials = trials;
  internal::CheckBaseline(oracle, scenario, original);
  try {
    v.exact = ExactReproductionProbability(oracle, scenario, original);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasibleEnumeration) throw;
    v.verdict = Verdict::kSkipped;
    v.note = e.what();
    return v;
  }
  const TrialReport r =
      RunTrials(oracle, scenario, original, trials, seed, workers);
  v.successes = r.successes;
  v.estimate = r.reproduction_frequency;
  std::tie(v.lower, v.upper) = BinomialAcceptance(trials, v.exact);
  v.verdict = v.successes >= v.lower && v.successes <= v.upper ? Verdict::kPass
                                                               : Verdict::kFail;
  return v;
}

}  // namespace anonrepro

#endif  // ANONREPRO_HARNESS_H_
