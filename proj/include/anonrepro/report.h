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

#ifndef ANONREPRO_REPORT_H_
#define ANONREPRO_REPORT_H_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "anonrepro/error.h"
#include "anonrepro/harness.h"

namespace anonrepro {

inline constexpr const char* kReportColumns[] = {
    "oracle",         "technique",     "level",
    "params",         "trials",        "successes",
    "reproduction_frequency",          "attempts_95",
    "disclosure_count",                "disclosure_frequency",
    "length_adjusted", "confidence",   "seed"};
inline constexpr size_t kReportColumnCount = std::size(kReportColumns);

namespace internal {

inline std::string Fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

inline std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC 4180 records; quoted fields may contain separators and newlines.
inline std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, "unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline int64_t ParseCount(const std::string& s, const std::string& what) {
  size_t used = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < 0) {
    throw Error(ErrorCode::kParse, what + ": expected a count, got '" + s + "'");
  }
  return v;
}

inline uint64_t ParseSeed(const std::string& s, const std::string& what) {
  uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, what + ": expected a seed, got '" + s + "'");
  }
  return v;
}

inline double ParseRatio(const std::string& s, const std::string& what) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !(v >= 0 && v <= 1)) {
    throw Error(ErrorCode::kParse, what + ": expected a ratio, got '" + s + "'");
  }
  return v;
}

}  // namespace internal

// ---------------------------------------------------------------------------
// CSV

inline std::string ReportCsvHeader() {
  std::string out;
  for (size_t i = 0; i < kReportColumnCount; ++i) {
    if (i) out += ',';
    out += kReportColumns[i];
  }
  return out + "\n";
}

inline std::string ReportCsvRow(const TrialReport& r) {
  const std::vector<std::string> cells = {
      r.oracle,
      r.technique,
      std::string(LevelName(r.level)),
      r.params,
      std::to_string(r.trials),
      std::to_string(r.successes),
      internal::Fixed(r.reproduction_frequency, 6),
      r.attempts_95 ? std::to_string(*r.attempts_95) : "-",
      std::to_string(r.disclosure_count),
      internal::Fixed(r.disclosure_frequency, 6),
      std::to_string(r.length_adjusted),
      internal::Fixed(r.confidence, 4),
      std::to_string(r.seed)};
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += internal::CsvField(cells[i]);
  }
  return out + "\n";
}

inline std::string ReportsToCsv(const std::vector<TrialReport>& reports) {
  std::string out = ReportCsvHeader();
  for (const auto& r : reports) out += ReportCsvRow(r);
  return out;
}

// Counts are authoritative; frequencies and attempts are recomputed from them.
inline std::vector<TrialReport> ReportsFromCsv(const std::string& text,
                                               const std::string& source) {
  const auto rows = internal::ParseCsv(text);
  if (rows.empty()) throw Error(ErrorCode::kParse, source + ": empty report");
  const auto& header = rows[0];
  bool same = header.size() == kReportColumnCount;
  for (size_t i = 0; same && i < kReportColumnCount; ++i) {
    same = header[i] == kReportColumns[i];
  }
  if (!same) {
    throw Error(ErrorCode::kValidation,
                source + ": report columns do not match the expected schema");
  }
  std::vector<TrialReport> out;
  for (size_t n = 1; n < rows.size(); ++n) {
    const auto& c = rows[n];
    const std::string where = source + ":" + std::to_string(n + 1);
    if (c.size() != kReportColumnCount) {
      throw Error(ErrorCode::kValidation,
                  where + ": expected " + std::to_string(kReportColumnCount) +
                      " fields, got " + std::to_string(c.size()));
    }
    TrialReport r;
    r.oracle = c[0];
    r.technique = c[1];
    const auto level = ParseLevel(c[2]);
    if (!level) throw Error(ErrorCode::kParse, where + ": bad level '" + c[2] + "'");
    r.level = *level;
    r.params = c[3];
    r.trials = internal::ParseCount(c[4], where);
    r.successes = internal::ParseCount(c[5], where);
    r.disclosure_count = internal::ParseCount(c[8], where);
    r.length_adjusted = internal::ParseCount(c[10], where);
    r.confidence = internal::ParseRatio(c[11], where);
    r.seed = internal::ParseSeed(c[12], where);
    if (r.trials == 0 || r.successes > r.trials ||
        r.disclosure_count > r.trials) {
      throw Error(ErrorCode::kValidation, where + ": inconsistent counts");
    }
    r.reproduction_frequency =
        static_cast<double>(r.successes) / static_cast<double>(r.trials);
    r.disclosure_frequency =
        static_cast<double>(r.disclosure_count) / static_cast<double>(r.trials);
    r.attempts_95 = AttemptsForConfidence(r.reproduction_frequency, r.confidence);
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tables

// "100%", "10.5%", "0.07%": two decimals with trailing zeros dropped.
inline std::string FormatPercent(double ratio) {
  std::string s = internal::Fixed(ratio * 100, 2);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s + "%";
}

inline std::string FormatAttempts(const std::optional<int64_t>& k) {
  return k ? std::to_string(*k) : "-";
}

// Reports with the same (oracle, technique, level) pooled into one cell.
inline std::vector<TrialReport> PoolReports(
    const std::vector<TrialReport>& reports) {
  std::vector<TrialReport> pooled;
  for (const TrialReport& r : reports) {
    auto it = std::find_if(pooled.begin(), pooled.end(), [&](const auto& p) {
      return p.oracle == r.oracle && p.technique == r.technique &&
             p.level == r.level;
    });
    if (it == pooled.end()) {
      pooled.push_back(r);
      continue;
    }
    it->trials += r.trials;
    it->successes += r.successes;
    it->disclosure_count += r.disclosure_count;
    it->length_adjusted += r.length_adjusted;
    if (it->params != r.params) it->params = "mixed";
  }
  for (TrialReport& p : pooled) {
    p.reproduction_frequency =
        static_cast<double>(p.successes) / static_cast<double>(p.trials);
    p.disclosure_frequency =
        static_cast<double>(p.disclosure_count) / static_cast<double>(p.trials);
    p.attempts_95 = AttemptsForConfidence(p.reproduction_frequency, p.confidence);
  }
  return pooled;
}

namespace internal {

inline std::string ColumnTitle(const std::string& technique, Level level) {
  const auto t = ParseTechnique(technique);
  std::string title = t ? std::string(TechniqueDisplayName(*t)) : technique;
  if (level != Level::kNone) title += " " + std::string(LevelName(level));
  return title;
}

inline std::string RenderAligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (size_t n = 0; n < rows.size(); ++n) {
    std::string line;
    for (size_t i = 0; i < rows[n].size(); ++i) {
      if (i) line += "  ";
      const std::string& cell = rows[n][i];
      const std::string pad(width[i] - cell.size(), ' ');
      line += i == 0 ? cell + pad : pad + cell;  // first column left-aligned
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (n == 0) {
      size_t total = 0;
      for (size_t w : width) total += w;
      out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    }
  }
  return out;
}

struct Grid {
  std::vector<std::string> oracles;
  std::vector<std::pair<std::string, Level>> columns;
  std::map<std::pair<size_t, size_t>, TrialReport> cells;
};

template <typename KeyFn>
Grid BuildGrid(const std::vector<TrialReport>& pooled, KeyFn column_key) {
  Grid g;
  for (const TrialReport& r : pooled) {
    const auto key = column_key(r);
    auto oi = std::find(g.oracles.begin(), g.oracles.end(), r.oracle);
    if (oi == g.oracles.end()) oi = g.oracles.insert(g.oracles.end(), r.oracle);
    auto ci = std::find(g.columns.begin(), g.columns.end(), key);
    if (ci == g.columns.end()) ci = g.columns.insert(g.columns.end(), key);
    g.cells[{static_cast<size_t>(oi - g.oracles.begin()),
             static_cast<size_t>(ci - g.columns.begin())}] = r;
  }
  return g;
}

}  // namespace internal

// Reproduction frequency per oracle (rows) and technique/level (columns).
inline std::string FrequencyTable(const std::vector<TrialReport>& reports) {
  const auto g = internal::BuildGrid(PoolReports(reports), [](const auto& r) {
    return std::make_pair(r.technique, r.level);
  });
  std::vector<std::vector<std::string>> rows(1, {"Oracle"});
  for (const auto& [t, l] : g.columns) rows[0].push_back(internal::ColumnTitle(t, l));
  for (size_t o = 0; o < g.oracles.size(); ++o) {
    std::vector<std::string> row = {g.oracles[o]};
    for (size_t c = 0; c < g.columns.size(); ++c) {
      auto it = g.cells.find({o, c});
      row.push_back(it == g.cells.end()
                        ? ""
                        : FormatPercent(it->second.reproduction_frequency));
    }
    rows.push_back(std::move(row));
  }
  return internal::RenderAligned(rows);
}

// Attempts needed for 95% confidence, with Mean* (over defined values), Max
// and # NR summary rows.
inline std::string AttemptsTable(const std::vector<TrialReport>& reports) {
  const auto pooled = PoolReports(reports);
  const auto g = internal::BuildGrid(pooled, [](const auto& r) {
    return std::make_pair(r.technique, r.level);
  });
  std::vector<std::vector<std::string>> rows(1, {"Oracle"});
  for (const auto& [t, l] : g.columns) rows[0].push_back(internal::ColumnTitle(t, l));
  for (size_t o = 0; o < g.oracles.size(); ++o) {
    std::vector<std::string> row = {g.oracles[o]};
    for (size_t c = 0; c < g.columns.size(); ++c) {
      auto it = g.cells.find({o, c});
      row.push_back(it == g.cells.end() ? ""
                                        : FormatAttempts(it->second.attempts_95));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::string> mean = {"Mean*"}, max = {"Max"}, nr = {"# NR"};
  const auto agg = Aggregate(pooled);
  for (const auto& [t, l] : g.columns) {
    const auto it = std::find_if(agg.begin(), agg.end(), [&](const auto& a) {
      return a.technique == t && a.level == l;
    });
    mean.push_back(it->mean_attempts ? internal::Fixed(*it->mean_attempts, 0) : "-");
    max.push_back(FormatAttempts(it->max_attempts));
    nr.push_back(std::to_string(it->not_reproduced));
  }
  rows.push_back(std::move(mean));
  rows.push_back(std::move(max));
  rows.push_back(std::move(nr));
  return internal::RenderAligned(rows);
}

// Disclosure frequency per technique, pooled across levels. Oracles that
// never disclosed the original are omitted.
inline std::string DisclosureTable(const std::vector<TrialReport>& reports) {
  std::vector<TrialReport> by_technique = reports;
  for (auto& r : by_technique) r.level = Level::kNone;
  const auto pooled = PoolReports(by_technique);
  const auto g = internal::BuildGrid(pooled, [](const auto& r) {
    return std::make_pair(r.technique, Level::kNone);
  });
  std::vector<std::vector<std::string>> rows(1, {"Oracle"});
  for (const auto& [t, l] : g.columns) rows[0].push_back(internal::ColumnTitle(t, l));
  for (size_t o = 0; o < g.oracles.size(); ++o) {
    std::vector<std::string> row = {g.oracles[o]};
    bool any = false;
    for (size_t c = 0; c < g.columns.size(); ++c) {
      auto it = g.cells.find({o, c});
      if (it == g.cells.end()) {
        row.push_back("");
        continue;
      }
      any = any || it->second.disclosure_count > 0;
      row.push_back(internal::Fixed(it->second.disclosure_frequency * 100, 2) + "%");
    }
    if (any) rows.push_back(std::move(row));
  }
  return internal::RenderAligned(rows);
}

inline std::string RenderTables(const std::vector<TrialReport>& reports) {
  return "Reproduction frequency\n\n" + FrequencyTable(reports) +
         "\nAttempts for 95% confidence\n\n" + AttemptsTable(reports) +
         "\nDisclosure frequency\n\n" + DisclosureTable(reports);
}

}  // namespace anonrepro

#endif  // ANONREPRO_REPORT_H_
