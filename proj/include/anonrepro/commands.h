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

#ifndef ANONREPRO_COMMANDS_H_
#define ANONREPRO_COMMANDS_H_

// Subcommand bodies behind the anonrepro tool.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anonrepro/corpus.h"
#include "anonrepro/harness.h"
#include "anonrepro/json_util.h"
#include "anonrepro/record_json.h"
#include "anonrepro/report.h"
#include "anonrepro/trace_json.h"

namespace anonrepro {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

inline int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kEvaluation:
    case ErrorCode::kInfeasibleEnumeration:
      return kExitRuntime;
    default:
      return kExitValidation;
  }
}

enum class ReportFormat { kCsv, kTable };

// One run, read from a JSON file:
//
//   {"corpus": ["birday"] | "all", "oracles": ["bug.json"],
//    "corpus_dir": "...", "techniques": [{...}],
//    "assignments": {"field or widget": {...}}, "default": {...},
//    "trials": 100, "seed": 42, "confidence": 0.95, "workers": 4,
//    "verify": false, "verify_trials": 100000, "format": "csv"}
//
// Relative paths resolve against the config file's directory.
struct RunConfig {
  std::vector<std::string> corpus;  // entry names; {"all"} for every entry
  std::vector<std::string> oracle_files;
  std::string corpus_dir;
  std::vector<ConfiguredTechnique> techniques;
  std::map<std::string, ConfiguredTechnique> assignments;
  std::optional<ConfiguredTechnique> default_technique;
  int64_t trials = kDefaultTrials;
  std::optional<uint64_t> seed;
  double confidence = kDefaultConfidence;
  int workers = 1;
  bool verify = false;
  int64_t verify_trials = kVerificationTrials;
  ReportFormat format = ReportFormat::kCsv;
};

inline RunConfig RunConfigFromJson(const Json& j, const std::string& base_dir) {
  using namespace json_util;
  if (!j.is_object()) Fail("", "expected an object");
  static const char* const kKnown[] = {
      "corpus",     "oracles", "corpus_dir", "techniques", "assignments",
      "default",    "trials",  "seed",       "confidence", "workers",
      "verify",     "verify_trials",         "format"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      Fail(key, "unknown setting");
    }
  }
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty()
               ? p
               : (std::filesystem::path(base_dir) / path).string();
  };
  RunConfig c;
  if (const Json* corpus = Optional(j, "corpus")) {
    if (corpus->is_string()) {
      if (corpus->get<std::string>() != "all") {
        Fail("corpus", "expected \"all\" or a list of entry names");
      }
      c.corpus = {"all"};
    } else if (corpus->is_array()) {
      for (size_t i = 0; i < corpus->size(); ++i) {
        c.corpus.push_back(AsString((*corpus)[i], Index("corpus", i)));
      }
    } else {
      Fail("corpus", "expected \"all\" or a list of entry names");
    }
  }
  if (const Json* files = Optional(j, "oracles")) {
    if (!files->is_array()) Fail("oracles", "expected a list of paths");
    for (size_t i = 0; i < files->size(); ++i) {
      c.oracle_files.push_back(resolve(AsString((*files)[i], Index("oracles", i))));
    }
  }
  c.corpus_dir = CorpusDirectory();
  if (const Json* dir = Optional(j, "corpus_dir")) {
    c.corpus_dir = resolve(AsString(*dir, "corpus_dir"));
  }
  if (const Json* ts = Optional(j, "techniques")) {
    if (!ts->is_array()) Fail("techniques", "expected an array");
    for (size_t i = 0; i < ts->size(); ++i) {
      c.techniques.push_back(TechniqueFromJson((*ts)[i], Index("techniques", i)));
    }
  }
  if (const Json* as = Optional(j, "assignments")) {
    if (!as->is_object()) Fail("assignments", "expected an object");
    for (const auto& [name, t] : as->items()) {
      c.assignments.emplace(name, TechniqueFromJson(t, Key("assignments", name.c_str())));
    }
  }
  if (const Json* d = Optional(j, "default")) {
    c.default_technique = TechniqueFromJson(*d, "default");
  }
  if (const Json* t = Optional(j, "trials")) c.trials = AsInt(*t, "trials");
  if (const Json* s = Optional(j, "seed")) {
    const int64_t seed = AsInt(*s, "seed");
    if (seed < 0) Fail("seed", "expected a non-negative integer");
    c.seed = static_cast<uint64_t>(seed);
  }
  if (const Json* cf = Optional(j, "confidence")) {
    c.confidence = AsNumber(*cf, "confidence");
    if (!(c.confidence > 0 && c.confidence < 1)) {
      Fail("confidence", "expected a value in (0, 1)");
    }
  }
  if (const Json* w = Optional(j, "workers")) {
    c.workers = static_cast<int>(AsInt(*w, "workers"));
  }
  if (const Json* v = Optional(j, "verify")) c.verify = AsBool(*v, "verify");
  if (const Json* vt = Optional(j, "verify_trials")) {
    c.verify_trials = AsInt(*vt, "verify_trials");
  }
  if (const Json* f = Optional(j, "format")) {
    const std::string s = AsString(*f, "format");
    if (s == "csv") {
      c.format = ReportFormat::kCsv;
    } else if (s == "table") {
      c.format = ReportFormat::kTable;
    } else {
      Fail("format", "expected csv or table");
    }
  }
  return c;
}

inline RunConfig LoadRunConfig(const std::string& path) {
  const Json j = json_util::ParseText(json_util::ReadFile(path), path);
  try {
    return RunConfigFromJson(
        j, std::filesystem::path(path).parent_path().string());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

// Command-line values; set ones win over the config file.
struct RunOverrides {
  std::optional<int64_t> trials;
  std::optional<uint64_t> seed;
  std::optional<int> workers;
  bool verify = false;
};

inline void ApplyOverrides(RunConfig& c, const RunOverrides& o) {
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  if (o.verify) c.verify = true;
  if (c.trials <= 0) throw Error(ErrorCode::kUsage, "trials must be positive");
  if (c.workers <= 0) throw Error(ErrorCode::kUsage, "workers must be positive");
  if (c.verify_trials <= 0) {
    throw Error(ErrorCode::kUsage, "verify_trials must be positive");
  }
}

// ---------------------------------------------------------------------------
// anonymize / regenerate

// Picks the technique for one widget: its assignment, else the default.
inline const TechniqueConfig& TechniqueForWidget(const RunConfig& c,
                                                 const std::string& widget,
                                                 size_t event) {
  if (auto it = c.assignments.find(widget); it != c.assignments.end()) {
    return it->second.config;
  }
  if (c.default_technique) return c.default_technique->config;
  throw Error(ErrorCode::kValidation,
              "event " + std::to_string(event) + ": no technique assigned to '" +
                  widget + "'");
}

// Event i draws from Stream(seed).Child(i).
inline AnonymizedTrace AnonymizeTrace(const FailureTrace& trace,
                                      const RunConfig& c, uint64_t seed) {
  const RandomStream root(seed);
  AnonymizedTrace out;
  for (size_t i = 0; i < trace.events.size(); ++i) {
    const Event& e = trace.events[i];
    AnonymizedEvent ae{e.action, e.widget, std::nullopt};
    if (e.data) {
      const TechniqueConfig& cfg = TechniqueForWidget(c, e.widget, i);
      RandomStream rng = root.Child(i).Child(0);
      try {
        ae.record = Anonymize(e.data->value, e.data->domain, cfg, rng);
      } catch (const Error& err) {
        throw Error(err.code(), "event " + std::to_string(i) + " ('" +
                                    e.widget + "'): " + err.detail());
      }
    }
    out.events.push_back(std::move(ae));
  }
  return out;
}

inline FailureTrace RegenerateTrace(const AnonymizedTrace& trace,
                                    uint64_t seed) {
  const RandomStream root(seed);
  FailureTrace out;
  for (size_t i = 0; i < trace.events.size(); ++i) {
    const AnonymizedEvent& e = trace.events[i];
    Event ev{e.action, e.widget, std::nullopt};
    if (e.record) {
      RandomStream rng = root.Child(i).Child(1);
      try {
        ev.data = FieldData{Regenerate(*e.record, rng), RecordDomain(*e.record)};
      } catch (const Error& err) {
        throw Error(err.code(), "event " + std::to_string(i) + " ('" +
                                    e.widget + "'): " + err.detail());
      }
    }
    out.events.push_back(std::move(ev));
  }
  return out;
}

inline void CmdAnonymize(const std::string& trace_path,
                         const std::string& config_path,
                         const std::string& out_path,
                         std::optional<uint64_t> seed) {
  const FailureTrace trace = ParseTrace(json_util::ReadFile(trace_path));
  const RunConfig c = LoadRunConfig(config_path);
  const uint64_t s = seed ? *seed : c.seed.value_or(0);
  json_util::WriteFile(out_path,
                       SerializeAnonymizedTrace(AnonymizeTrace(trace, c, s)));
}

inline void CmdRegenerate(const std::string& trace_path, uint64_t seed,
                          const std::string& out_path) {
  const AnonymizedTrace trace =
      ParseAnonymizedTrace(json_util::ReadFile(trace_path));
  json_util::WriteFile(out_path, SerializeTrace(RegenerateTrace(trace, seed)));
}

// ---------------------------------------------------------------------------
// simulate

struct SimulationJob {
  BugOracle oracle;
  std::vector<DataValue> original;
  std::vector<Scenario> scenarios;
};

// Scenario choice: per-field assignments (one mixed scenario), else the
// config's technique list, else the entry's own configurations.
inline std::vector<Scenario> ScenariosFor(const CorpusEntry& entry,
                                          const RunConfig& c) {
  const BugOracle& oracle = entry.oracle;
  if (!c.assignments.empty()) {
    Scenario s;
    s.technique = "mixed";
    std::string params;
    for (const OracleField& f : oracle.fields) {
      const ConfiguredTechnique* t = nullptr;
      if (auto it = c.assignments.find(f.name); it != c.assignments.end()) {
        t = &it->second;
      } else if (c.default_technique) {
        t = &*c.default_technique;
      } else {
        throw Error(ErrorCode::kValidation,
                    oracle.name + ": no technique assigned to field '" +
                        f.name + "'");
      }
      s.per_field.push_back(t->config);
      if (!params.empty()) params += "; ";
      params += f.name + ": " + std::string(TechniqueName(TechniqueOf(t->config))) +
                " " + TechniqueParams(t->config);
    }
    s.params = params;
    return {s};
  }
  std::vector<Scenario> out;
  const auto& list = !c.techniques.empty() ? c.techniques : entry.configs;
  if (list.empty() && c.default_technique) {
    out.push_back(UniformScenario(oracle, *c.default_technique));
  }
  for (const ConfiguredTechnique& t : list) {
    out.push_back(UniformScenario(oracle, t));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kValidation,
                oracle.name + ": no technique configured");
  }
  return out;
}

inline std::vector<SimulationJob> PlanSimulation(const RunConfig& c) {
  std::vector<CorpusEntry> entries;
  if (c.corpus.size() == 1 && c.corpus[0] == "all") {
    entries = LoadCorpus(c.corpus_dir);
  } else {
    for (const auto& name : c.corpus) {
      entries.push_back(FindCorpusEntry(c.corpus_dir, name));
    }
  }
  for (const auto& path : c.oracle_files) entries.push_back(LoadCorpusEntry(path));
  if (entries.empty()) {
    throw Error(ErrorCode::kValidation, "no oracles selected");
  }
  std::vector<SimulationJob> jobs;
  for (const CorpusEntry& e : entries) {
    for (const auto& j : jobs) {
      if (j.oracle.name == e.oracle.name) {
        throw Error(ErrorCode::kValidation,
                    "oracle '" + e.oracle.name + "' selected twice");
      }
    }
    jobs.push_back({e.oracle, e.original, ScenariosFor(e, c)});
  }
  return jobs;
}

// Writes DIR/<oracle>.csv per oracle, plus DIR/verification.json when
// verifying.
inline std::vector<TrialReport> CmdSimulate(const RunConfig& c,
                                            const std::string& out_dir) {
  if (!c.seed) throw Error(ErrorCode::kUsage, "simulate needs a seed");
  const std::vector<SimulationJob> jobs = PlanSimulation(c);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + out_dir + "'");

  std::vector<TrialReport> all;
  Json verification = Json::array();
  for (const SimulationJob& job : jobs) {
    std::vector<TrialReport> reports;
    for (const Scenario& s : job.scenarios) {
      reports.push_back(RunTrials(job.oracle, s, job.original, c.trials,
                                  *c.seed, c.workers, c.confidence));
      if (!c.verify) continue;
      const Verification v = VerifyAgainstBruteforce(
          job.oracle, s, job.original, c.verify_trials, *c.seed, c.workers);
      Json jv = {{"oracle", job.oracle.name},
                 {"technique", s.technique},
                 {"level", LevelName(s.level)},
                 {"params", s.params},
                 {"verdict", VerdictName(v.verdict)}};
      if (v.verdict == Verdict::kSkipped) {
        jv["note"] = v.note;
      } else {
        jv["exact"] = v.exact;
        jv["trials"] = v.trials;
        jv["successes"] = v.successes;
        jv["estimate"] = v.estimate;
        jv["accept_lower"] = v.lower;
        jv["accept_upper"] = v.upper;
      }
      verification.push_back(std::move(jv));
    }
    const auto path = std::filesystem::path(out_dir) / (job.oracle.name + ".csv");
    json_util::WriteFile(path.string(), ReportsToCsv(reports));
    all.insert(all.end(), reports.begin(), reports.end());
  }
  if (c.verify) {
    json_util::WriteFile(
        (std::filesystem::path(out_dir) / "verification.json").string(),
        json_util::Dump(verification));
  }
  return all;
}

// ---------------------------------------------------------------------------
// report

// Reads every *.csv in `dir` (sorted by name).
inline std::vector<TrialReport> LoadReports(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "report directory '" + dir + "' not found");
  }
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".csv") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw Error(ErrorCode::kValidation, "no reports in '" + dir + "'");
  }
  std::vector<TrialReport> out;
  for (const auto& f : files) {
    auto r = ReportsFromCsv(json_util::ReadFile(f), f);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

inline std::string CmdReport(const std::string& dir, ReportFormat format) {
  const auto reports = LoadReports(dir);
  return format == ReportFormat::kCsv ? ReportsToCsv(reports)
                                      : RenderTables(reports);
}

}  // namespace anonrepro

#endif  // ANONREPRO_COMMANDS_H_
