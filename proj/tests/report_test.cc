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

#include "anonrepro/report.h"

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace anonrepro {
namespace {

using testing::ErrorCodeOf;
using testing::ErrorMessageOf;

TrialReport Make(std::string oracle, std::string technique, Level level,
                 int64_t trials, int64_t successes, int64_t disclosures = 0) {
  TrialReport r;
  r.oracle = std::move(oracle);
  r.technique = std::move(technique);
  r.level = level;
  r.params = "partitions=2";
  r.trials = trials;
  r.successes = successes;
  r.reproduction_frequency = static_cast<double>(successes) / trials;
  r.attempts_95 = AttemptsForConfidence(r.reproduction_frequency, 0.95);
  r.disclosure_count = disclosures;
  r.disclosure_frequency = static_cast<double>(disclosures) / trials;
  r.seed = 42;
  return r;
}

std::string Pad(int n) { return std::string(static_cast<size_t>(n), ' '); }

TEST(CsvTest, HeaderAndRow) {
  EXPECT_EQ(ReportCsvHeader(),
            "oracle,technique,level,params,trials,successes,"
            "reproduction_frequency,attempts_95,disclosure_count,"
            "disclosure_frequency,length_adjusted,confidence,seed\n");
  EXPECT_EQ(ReportCsvRow(Make("birday", "global_recoding", Level::kMe, 100, 39, 2)),
            "birday,global_recoding,Me,partitions=2,100,39,0.390000,7,2,"
            "0.020000,0,0.9500,42\n");
  EXPECT_EQ(ReportCsvRow(Make("x", "rounding", Level::kHi, 100, 0)),
            "x,rounding,Hi,partitions=2,100,0,0.000000,-,0,0.000000,0,0.9500,42\n");
  EXPECT_EQ(ReportCsvRow(Make("x", "local_suppression", Level::kNone, 3, 1)).substr(0, 22),
            "x,local_suppression,-,");
}

TEST(CsvTest, RoundTripWithQuoting) {
  std::vector<TrialReport> reports = {
      Make("a", "global_recoding", Level::kLo, 100, 39, 1),
      Make("b", "mixed", Level::kNone, 7, 0),
      Make("c", "noise_addition", Level::kHi, 1000, 1000, 3)};
  reports[1].params = "date: rounding partitions=4; note: \"quoted\", with comma\nand newline";
  reports[2].length_adjusted = 12;
  reports[2].seed = 18446744073709551615ull;
  const std::string csv = ReportsToCsv(reports);
  const auto back = ReportsFromCsv(csv, "r.csv");
  ASSERT_EQ(back.size(), reports.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(back[i].oracle, reports[i].oracle);
    EXPECT_EQ(back[i].technique, reports[i].technique);
    EXPECT_EQ(back[i].level, reports[i].level);
    EXPECT_EQ(back[i].params, reports[i].params);
    EXPECT_EQ(back[i].trials, reports[i].trials);
    EXPECT_EQ(back[i].successes, reports[i].successes);
    EXPECT_EQ(back[i].attempts_95, reports[i].attempts_95);
    EXPECT_EQ(back[i].disclosure_count, reports[i].disclosure_count);
    EXPECT_EQ(back[i].length_adjusted, reports[i].length_adjusted);
    EXPECT_EQ(back[i].seed, reports[i].seed);
  }
  EXPECT_EQ(ReportsToCsv(back), csv);
}

TEST(CsvTest, CountsAreAuthoritative) {
  const std::string csv = ReportCsvHeader() +
      "a,rounding,Lo,p,200,50,0.999999,1,0,0.5,0,0.9500,1\n";
  const auto r = ReportsFromCsv(csv, "r.csv");
  EXPECT_DOUBLE_EQ(r[0].reproduction_frequency, 0.25);
  EXPECT_EQ(r[0].attempts_95, 11);
  EXPECT_DOUBLE_EQ(r[0].disclosure_frequency, 0.0);
}

TEST(CsvTest, Errors) {
  const std::string header = ReportCsvHeader();
  auto code = [](const std::string& text) {
    return ErrorCodeOf([&] { ReportsFromCsv(text, "r.csv"); });
  };
  EXPECT_EQ(code(""), ErrorCode::kParse);
  EXPECT_EQ(code("oracle,technique\n"), ErrorCode::kValidation);
  EXPECT_NE(ErrorMessageOf([&] { ReportsFromCsv("a,b\n", "r.csv"); })
                .find("report columns do not match the expected schema"),
            std::string::npos);
  EXPECT_EQ(code(header + "a,rounding,Lo,p,100,5\n"), ErrorCode::kValidation);
  EXPECT_EQ(code(header + "a,rounding,Lo,p,100,x,0,1,0,0,0,0.95,1\n"), ErrorCode::kParse);
  EXPECT_EQ(code(header + "a,rounding,Lo,p,100,101,1,1,0,0,0,0.95,1\n"),
            ErrorCode::kValidation);
  EXPECT_EQ(code(header + "a,rounding,Lo,p,0,0,0,-,0,0,0,0.95,1\n"), ErrorCode::kValidation);
  EXPECT_EQ(code(header + "a,rounding,Top,p,100,5,0,1,0,0,0,0.95,1\n"), ErrorCode::kParse);
  EXPECT_EQ(code(header + "a,rounding,Lo,p,100,5,0,1,0,0,0,0.95,seed\n"), ErrorCode::kParse);
  EXPECT_EQ(code(header + "a,rounding,Lo,p,100,5,0,1,0,0,0,1.5,1\n"), ErrorCode::kParse);
  const std::string msg = ErrorMessageOf(
      [&] { ReportsFromCsv(header + "a,rounding,Lo,p,100,x,0,1,0,0,0,0.95,1\n", "r.csv"); });
  EXPECT_NE(msg.find("r.csv:2"), std::string::npos) << msg;
}

TEST(FormatTest, Percent) {
  EXPECT_EQ(FormatPercent(1.0), "100%");
  EXPECT_EQ(FormatPercent(0.105), "10.5%");
  EXPECT_EQ(FormatPercent(0.39), "39%");
  EXPECT_EQ(FormatPercent(0.0007), "0.07%");
  EXPECT_EQ(FormatPercent(5.0 / 300.0), "1.67%");
  EXPECT_EQ(FormatPercent(0.0), "0%");
  EXPECT_EQ(FormatAttempts(std::nullopt), "-");
  EXPECT_EQ(FormatAttempts(299), "299");
}

TEST(PoolTest, SumsCountsAcrossSeeds) {
  auto a = Make("o", "global_recoding", Level::kMe, 100, 39);
  auto b = Make("o", "global_recoding", Level::kMe, 100, 41);
  b.params = "partitions=3";
  const auto pooled = PoolReports({a, b, Make("o", "rounding", Level::kMe, 100, 0)});
  ASSERT_EQ(pooled.size(), 2u);
  EXPECT_EQ(pooled[0].trials, 200);
  EXPECT_EQ(pooled[0].successes, 80);
  EXPECT_DOUBLE_EQ(pooled[0].reproduction_frequency, 0.4);
  EXPECT_EQ(pooled[0].attempts_95, 6);
  EXPECT_EQ(pooled[0].params, "mixed");
}

std::vector<TrialReport> Sample() {
  return {Make("a", "global_recoding", Level::kLo, 300, 117, 5),
          Make("a", "rounding", Level::kLo, 100, 0),
          Make("bb", "global_recoding", Level::kLo, 100, 100),
          Make("bb", "rounding", Level::kLo, 100, 100)};
}

TEST(TableTest, Frequency) {
  const std::string want =
      "Oracle  Global Recoding Lo  Rounding Lo\n" + std::string(39, '-') + "\n" +
      "a" + Pad(5) + Pad(2) + Pad(15) + "39%" + Pad(2) + Pad(9) + "0%\n" +
      "bb" + Pad(4) + Pad(2) + Pad(14) + "100%" + Pad(2) + Pad(7) + "100%\n";
  EXPECT_EQ(FrequencyTable(Sample()), want);
}

TEST(TableTest, AttemptsWithSummaryRows) {
  // Global Recoding Lo: 7 and 1, mean 4. Rounding Lo: "-" and 1.
  auto row = [](const std::string& first, const std::string& gr,
                const std::string& ro) {
    return first + Pad(6 - static_cast<int>(first.size())) + Pad(2) +
           Pad(18 - static_cast<int>(gr.size())) + gr + Pad(2) +
           Pad(11 - static_cast<int>(ro.size())) + ro + "\n";
  };
  const std::string want = "Oracle  Global Recoding Lo  Rounding Lo\n" +
                           std::string(39, '-') + "\n" + row("a", "7", "-") +
                           row("bb", "1", "1") + row("Mean*", "4", "1") +
                           row("Max", "7", "1") + row("# NR", "0", "1");
  EXPECT_EQ(AttemptsTable(Sample()), want);
}

TEST(TableTest, DisclosurePoolsLevelsAndDropsQuietOracles) {
  auto reports = Sample();
  reports.push_back(Make("a", "global_recoding", Level::kHi, 100, 0, 0));
  // Global Recoding for a: 5 of 400 = 1.25%.
  const std::string want = "Oracle  Global Recoding  Rounding\n" +
                           std::string(6 + 15 + 8 + 4, '-') + "\n" + "a" + Pad(5) +
                           Pad(2) + Pad(10) + "1.25%" + Pad(2) + Pad(3) + "0.00%\n";
  EXPECT_EQ(DisclosureTable(reports), want);
}

TEST(TableTest, DisclosureFormatting) {
  const std::string t =
      DisclosureTable({Make("o", "local_suppression", Level::kNone, 300, 0, 5)});
  EXPECT_NE(t.find("1.67%"), std::string::npos) << t;
  EXPECT_NE(t.find("Local Sup"), std::string::npos) << t;
}

TEST(TableTest, RenderTablesHasThreeSections) {
  const std::string t = RenderTables(Sample());
  const auto a = t.find("Reproduction frequency\n");
  const auto b = t.find("Attempts for 95% confidence\n");
  const auto c = t.find("Disclosure frequency\n");
  ASSERT_NE(a, std::string::npos);
  ASSERT_NE(b, std::string::npos);
  ASSERT_NE(c, std::string::npos);
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
}

}  // namespace
}  // namespace anonrepro
