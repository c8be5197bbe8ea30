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

#include "anonrepro/oracle.h"

#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace anonrepro {
namespace {

using testing::DateValue;
using testing::ErrorCodeOf;
using testing::ErrorMessageOf;

const char kDateField[] = R"({"name": "date", "domain": {"kind": "tuple",
  "components": [
    {"kind": "numeric", "min": 1, "max": 31, "integer": true},
    {"kind": "numeric", "min": 1, "max": 12, "integer": true},
    {"kind": "numeric", "min": 1900, "max": 2100, "integer": true}]}})";

const char kTextField[] = R"({"name": "s", "domain": {"kind": "string",
  "char_class": "[ -~]", "length_min": 1, "length_max": 30}})";

BugOracle Oracle(const std::string& field, const std::string& predicate) {
  return ParseOracle(R"({"name": "o", "fields": [)" + field +
                     R"(], "predicate": )" + predicate + "}");
}

bool OnText(const std::string& predicate, const std::string& s) {
  const std::vector<DataValue> a = {String(s)};
  return Evaluate(Oracle(kTextField, predicate), a);
}

TEST(LeapYearTest, Gregorian) {
  EXPECT_TRUE(IsLeapYear(1996));
  EXPECT_TRUE(IsLeapYear(2000));
  EXPECT_FALSE(IsLeapYear(1900));
  EXPECT_FALSE(IsLeapYear(1997));
  EXPECT_FALSE(IsLeapYear(2100));
}

TEST(EvaluateTest, LeapDay) {
  const BugOracle o = Oracle(kDateField, R"({"op": "is_leap_day",
      "day": "date[0]", "month": "date[1]", "year": "date[2]"})");
  auto eval = [&](int d, int m, int y) {
    const std::vector<DataValue> a = {DateValue(d, m, y)};
    return Evaluate(o, a);
  };
  EXPECT_TRUE(eval(29, 2, 1996));
  EXPECT_TRUE(eval(29, 2, 2000));
  EXPECT_FALSE(eval(29, 2, 1997));
  EXPECT_FALSE(eval(29, 2, 1900));
  EXPECT_FALSE(eval(28, 2, 1996));
  EXPECT_FALSE(eval(29, 3, 1996));
}

TEST(EvaluateTest, StringPrimitives) {
  EXPECT_TRUE(OnText(R"({"op": "ends_with", "field": "s", "char": "|"})", "option|"));
  EXPECT_FALSE(OnText(R"({"op": "ends_with", "field": "s", "char": "|"})", "opt|ion"));
  EXPECT_TRUE(OnText(R"({"op": "contains", "field": "s", "substring": " @"})", "buy @home"));
  EXPECT_FALSE(OnText(R"({"op": "contains", "field": "s", "substring": " @"})", "buy@home"));
  EXPECT_TRUE(OnText(R"({"op": "char_at", "field": "s", "index": -4, "chars": "."})", "a.pdf"));
  EXPECT_FALSE(OnText(R"({"op": "char_at", "field": "s", "index": -4, "chars": "."})", "a.pd"));
  // Out of range indexes never match.
  EXPECT_FALSE(OnText(R"({"op": "char_at", "field": "s", "index": 5, "chars": "x"})", "xx"));
  EXPECT_FALSE(OnText(R"({"op": "char_at", "field": "s", "index": -3, "chars": "x"})", "xx"));
  EXPECT_TRUE(OnText(R"({"op": "char_at", "field": "s", "index": 0, "chars": "ABC"})", "Bob"));
  EXPECT_TRUE(OnText(R"({"op": "length_gt", "field": "s", "length": 3})", "abcd"));
  EXPECT_FALSE(OnText(R"({"op": "length_gt", "field": "s", "length": 3})", "abc"));
  EXPECT_TRUE(OnText(R"({"op": "matches_class", "field": "s", "class": "[0-9.]"})", "1.5"));
  EXPECT_FALSE(OnText(R"({"op": "matches_class", "field": "s", "class": "[0-9.]"})", "1,5"));
}

TEST(EvaluateTest, DecimalSeparatorIsFirstSeparator) {
  const std::string dot = R"({"op": "decimal_separator_is", "field": "s", "char": "."})";
  EXPECT_TRUE(OnText(dot, "3.5"));
  EXPECT_FALSE(OnText(dot, "3,5"));
  EXPECT_FALSE(OnText(dot, "35"));
  EXPECT_FALSE(OnText(dot, "1,234.5"));
  EXPECT_TRUE(OnText(dot, "1.234,5"));
}

TEST(EvaluateTest, NumericPrimitives) {
  const std::string amount = R"({"name": "a", "domain": {"kind": "numeric",
      "min": 0, "max": 100, "max_inclusive": false, "precision": 2}})";
  const BugOracle range =
      Oracle(amount, R"({"op": "in_range", "field": "a", "lo": 4, "hi": 9})");
  auto eval = [](const BugOracle& o, double x) {
    const std::vector<DataValue> a = {Number(x, 2)};
    return Evaluate(o, a);
  };
  EXPECT_TRUE(eval(range, 4.0));
  EXPECT_TRUE(eval(range, 9.0));
  EXPECT_TRUE(eval(range, 4.6));
  EXPECT_FALSE(eval(range, 3.99));
  EXPECT_FALSE(eval(range, 9.01));
  const BugOracle eq = Oracle(amount, R"({"op": "equals", "field": "a", "value": "4.60"})");
  EXPECT_TRUE(eval(eq, 4.6));
  EXPECT_FALSE(eval(eq, 4.61));
  // Textual primitives see the formatted literal.
  const BugOracle five =
      Oracle(amount, R"({"op": "ends_with", "field": "a", "char": "5"})");
  EXPECT_TRUE(eval(five, 62.65));
  EXPECT_FALSE(eval(five, 62.5));
}

TEST(EvaluateTest, CategoricalEquals) {
  const BugOracle o = Oracle(
      R"({"name": "c", "domain": {"kind": "categorical",
          "categories": ["newborns", "adults"]}})",
      R"({"op": "equals", "field": "c", "value": "adults"})");
  EXPECT_TRUE(Evaluate(o, std::vector<DataValue>{Label("adults")}));
  EXPECT_FALSE(Evaluate(o, std::vector<DataValue>{Label("newborns")}));
}

TEST(EvaluateTest, Connectives) {
  const std::string p = R"({"op": "and", "args": [
      {"op": "contains", "field": "s", "substring": "/"},
      {"op": "not", "arg": {"op": "char_at", "field": "s", "index": 0,
                            "chars": "/"}}]})";
  EXPECT_TRUE(OnText(p, "a/b"));
  EXPECT_FALSE(OnText(p, "/ab"));
  EXPECT_FALSE(OnText(p, "ab"));
  const std::string q = R"({"op": "or", "args": [
      {"op": "false"}, {"op": "contains", "field": "s", "substring": "x"}]})";
  EXPECT_TRUE(OnText(q, "x"));
  EXPECT_FALSE(OnText(q, "y"));
}

TEST(EvaluateTest, MultipleFieldsByName) {
  const std::string hour = R"({"name": "%s", "domain": {"kind": "numeric",
      "min": 0, "max": 23, "integer": true}})";
  auto field = [&](const std::string& name) {
    std::string f = hour;
    f.replace(f.find("%s"), 2, name);
    return f;
  };
  const BugOracle o = ParseOracle(
      R"({"name": "o", "fields": [)" + field("a") + "," + field("b") +
      R"(], "predicate": {"op": "and", "args": [
          {"op": "in_range", "field": "a", "lo": 12, "hi": 23},
          {"op": "in_range", "field": "b", "lo": 0, "hi": 11}]}})");
  EXPECT_TRUE(Evaluate(o, std::map<std::string, DataValue>{{"a", Number(13)},
                                                           {"b", Number(2)}}));
  EXPECT_FALSE(Evaluate(o, std::map<std::string, DataValue>{{"b", Number(13)},
                                                            {"a", Number(2)}}));
  EXPECT_EQ(ErrorCodeOf([&] {
              Evaluate(o, std::map<std::string, DataValue>{{"a", Number(1)}});
            }),
            ErrorCode::kEvaluation);
}

TEST(EvaluateTest, Errors) {
  const BugOracle o = Oracle(kTextField, R"({"op": "true"})");
  EXPECT_EQ(ErrorCodeOf([&] { Evaluate(o, std::vector<DataValue>{}); }),
            ErrorCode::kEvaluation);
  const auto msg = ErrorMessageOf([&] {
    Evaluate(o, std::vector<DataValue>{Number(3)});
  });
  EXPECT_NE(msg.find("evaluation error"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'s'"), std::string::npos) << msg;
  // Empty string violates length_min.
  EXPECT_EQ(ErrorCodeOf([&] { Evaluate(o, std::vector<DataValue>{String("")}); }),
            ErrorCode::kEvaluation);
}

TEST(OracleJsonTest, ParseErrors) {
  auto code = [](const std::string& text) {
    return ErrorCodeOf([&] { ParseOracle(text); });
  };
  const std::string f = kTextField;
  EXPECT_EQ(code("{"), ErrorCode::kParse);
  EXPECT_EQ(code(R"({"fields": [], "predicate": {"op": "true"}})"), ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f + R"(]})"), ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f +
                 R"(], "predicate": {"op": "xor"}})"),
            ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f +
                 R"(], "predicate": {"op": "contains", "field": "s"}})"),
            ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f +
                 R"(], "predicate": {"op": "contains", "field": "s[x]", "substring": "a"}})"),
            ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f +
                 R"(], "predicate": {"op": "decimal_separator_is", "field": "s", "char": ";"}})"),
            ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f +
                 R"(], "predicate": {"op": "and", "args": []}})"),
            ErrorCode::kParse);
  EXPECT_EQ(code(R"({"name": "o", "fields": [)" + f + "," + f +
                 R"(], "predicate": {"op": "true"}})"),
            ErrorCode::kParse);
  const auto msg = ErrorMessageOf([&] {
    ParseOracle(R"({"name": "o", "fields": [)" + f +
                R"(], "predicate": {"op": "not", "arg": {"op": "nope"}}})");
  });
  EXPECT_NE(msg.find("predicate.arg.op"), std::string::npos) << msg;
}

TEST(OracleJsonTest, TypeChecks) {
  auto code = [](const std::string& field, const std::string& pred) {
    return ErrorCodeOf([&] { Oracle(field, pred); });
  };
  EXPECT_EQ(code(kTextField, R"({"op": "in_range", "field": "s", "lo": 0, "hi": 1})"),
            ErrorCode::kValidation);
  EXPECT_EQ(code(kTextField, R"({"op": "contains", "field": "t", "substring": "a"})"),
            ErrorCode::kValidation);
  EXPECT_EQ(code(kTextField, R"({"op": "contains", "field": "s[0]", "substring": "a"})"),
            ErrorCode::kValidation);
  EXPECT_EQ(code(kDateField, R"({"op": "in_range", "field": "date", "lo": 0, "hi": 1})"),
            ErrorCode::kValidation);
  EXPECT_EQ(code(kDateField, R"({"op": "in_range", "field": "date[3]", "lo": 0, "hi": 1})"),
            ErrorCode::kValidation);
  EXPECT_EQ(code(kTextField, R"({"op": "is_leap_day", "day": "s", "month": "s", "year": "s"})"),
            ErrorCode::kValidation);
  // equals literals are checked against the field's domain.
  EXPECT_NE(code(kDateField, R"({"op": "equals", "field": "date[0]", "value": "x"})"),
            std::nullopt);
}

TEST(OracleJsonTest, RoundTrip) {
  const std::string pred = R"({"op": "or", "args": [
      {"op": "is_leap_day", "day": "date[0]", "month": "date[1]", "year": "date[2]"},
      {"op": "not", "arg": {"op": "in_range", "field": "date[2]", "lo": 1950, "hi": 2000}},
      {"op": "equals", "field": "date[1]", "value": 7}]})";
  const BugOracle o = Oracle(kDateField, pred);
  const Json j = OracleToJson(o);
  const BugOracle back = OracleFromJson(j);
  EXPECT_EQ(OracleToJson(back).dump(), j.dump());
  std::mt19937 eng(5);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<DataValue> a = {
        DateValue(std::uniform_int_distribution<int>(1, 31)(eng),
                  std::uniform_int_distribution<int>(1, 12)(eng),
                  std::uniform_int_distribution<int>(1900, 2100)(eng))};
    ASSERT_EQ(Evaluate(o, a), Evaluate(back, a));
  }
}

TEST(OracleJsonTest, NegationFlipsEveryVerdict) {
  const std::string p = R"({"op": "and", "args": [
      {"op": "contains", "field": "s", "substring": "/"},
      {"op": "length_gt", "field": "s", "length": 2}]})";
  const BugOracle o = Oracle(kTextField, p);
  const BugOracle n = Oracle(kTextField, R"({"op": "not", "arg": )" + p + "}");
  std::mt19937 eng(6);
  const std::string alphabet = "ab/";
  for (int i = 0; i < 5000; ++i) {
    std::string s(std::uniform_int_distribution<size_t>(1, 6)(eng), 'a');
    for (char& c : s) c = alphabet[std::uniform_int_distribution<size_t>(0, 2)(eng)];
    const std::vector<DataValue> a = {String(s)};
    const bool want = s.find('/') != std::string::npos && s.size() > 2;
    ASSERT_EQ(Evaluate(o, a), want) << s;
    ASSERT_EQ(Evaluate(n, a), !want) << s;
  }
}

}  // namespace
}  // namespace anonrepro
