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

#include "anonrepro/trace.h"

#include <string>

#include <gtest/gtest.h>

#include "anonrepro/json_util.h"
#include "anonrepro/trace_json.h"
#include "test_util.h"

namespace anonrepro {
namespace {

using testing::Date;
using testing::DateValue;
using testing::ErrorCodeOf;
using testing::ErrorMessageOf;
using testing::Strings;

TEST(ConformsTest, InteriorRealPoint) {
  EXPECT_TRUE(Conforms(Number(8.0, 1), NumericDomain::Real(0, 10)));
}

TEST(ConformsTest, FoodScaleInput) {
  EXPECT_TRUE(Conforms(String("543,"), Strings(CharClass::kDecimalEither)));
}

TEST(ConformsTest, IntegerOutOfRange) {
  EXPECT_FALSE(Conforms(Number(32), NumericDomain::Integer(1, 31)));
}

TEST(ConformsTest, NumericEdges) {
  const auto half_open = NumericDomain::Real(0, 100, false);
  EXPECT_TRUE(Conforms(Number(0), half_open));
  EXPECT_FALSE(Conforms(Number(100), half_open));
  EXPECT_TRUE(Conforms(Number(99.99, 2), half_open));
  EXPECT_FALSE(Conforms(Number(-0.01, 2), half_open));
  EXPECT_TRUE(Conforms(Number(10), NumericDomain::Real(0, 10)));
  EXPECT_FALSE(Conforms(Number(2.5, 1), NumericDomain::Integer(1, 31)));
  EXPECT_FALSE(Conforms(Number(std::nan("")), NumericDomain::Real(0, 10)));
}

TEST(ConformsTest, Strings) {
  const auto alnum = Strings(CharClass::kAlphanumericSpace, 1, 7);
  EXPECT_TRUE(Conforms(String("Atelier"), alnum));
  EXPECT_TRUE(Conforms(String("a b"), alnum));
  EXPECT_FALSE(Conforms(String("Atelier2"), alnum));  // too long
  EXPECT_FALSE(Conforms(String("a-b"), alnum));
  EXPECT_FALSE(Conforms(String(""), alnum));
  EXPECT_FALSE(Conforms(String("a b"), Strings(CharClass::kPrintable)));
  EXPECT_TRUE(Conforms(String(" task'name    add"),
                       Strings(CharClass::kPrintableSpace)));
  EXPECT_TRUE(Conforms(String(":30"), Strings(CharClass::kClock, 1, 5)));
  EXPECT_FALSE(Conforms(String("3.0"), Strings(CharClass::kClock, 1, 5)));
}

TEST(ConformsTest, KindMismatchIsFalse) {
  EXPECT_FALSE(Conforms(String("4"), NumericDomain::Real(0, 10)));
  EXPECT_FALSE(Conforms(Number(4), Strings(CharClass::kPrintable)));
}

TEST(ConformsTest, CategoricalAndTuple) {
  const CategoricalDomain cats{{"A", "B"}, {}};
  EXPECT_TRUE(Conforms(Label("A"), cats));
  EXPECT_FALSE(Conforms(Label("C"), cats));
  EXPECT_TRUE(Conforms(DateValue(29, 2, 1996), Date(1937, 2036)));
  EXPECT_FALSE(Conforms(DateValue(29, 13, 1996), Date(1937, 2036)));
  EXPECT_FALSE(Conforms(Tuple({Number(1), Number(1)}), Date(1937, 2036)));
}

TEST(ValidateDomainTest, Rejections) {
  auto code = [](DomainSpec d) {
    return ErrorCodeOf([&] { ValidateDomain(d); });
  };
  EXPECT_EQ(code(NumericDomain::Real(5, 5)), ErrorCode::kValidation);
  EXPECT_EQ(code(NumericDomain::Integer(0.5, 3)), ErrorCode::kValidation);
  EXPECT_EQ(code(StringDomain{CharClass::kPrintable, 0, 3}),
            ErrorCode::kValidation);
  EXPECT_EQ(code(StringDomain{CharClass::kPrintable, 4, 3}),
            ErrorCode::kValidation);
  EXPECT_EQ(code(CategoricalDomain{{}, {}}), ErrorCode::kValidation);
  // Hierarchy groups must partition the categories.
  EXPECT_EQ(code(CategoricalDomain{{"a", "b"}, {{"g", {"a"}}}}),
            ErrorCode::kValidation);
  EXPECT_EQ(code(CategoricalDomain{{"a", "b"}, {{"g", {"a", "b"}}, {"h", {"b"}}}}),
            ErrorCode::kValidation);
  EXPECT_EQ(code(TupleDomain{{TupleDomain{{NumericDomain::Real(0, 1)}}}}),
            ErrorCode::kValidation);
  EXPECT_EQ(code(Date(1937, 2036)), std::nullopt);
}

TEST(FormatTest, Literals) {
  EXPECT_EQ(Literal(Number(4.6, 2)), "4.60");
  EXPECT_EQ(Literal(Number(29)), "29");
  EXPECT_EQ(Literal(Number(-0.001, 2)), "0.00");
  EXPECT_EQ(Literal(DateValue(29, 2, 1996)), "29 2 1996");
  EXPECT_EQ(Literal(Label("baby")), "baby");
}

TEST(SameInputTest, ComparesAtOriginalPrecision) {
  EXPECT_TRUE(SameInput(Number(4.6, 2), Number(4.6, 2)));
  EXPECT_TRUE(SameInput(Number(4.6, 1), Number(4.60, 2)));
  EXPECT_FALSE(SameInput(Number(4.61, 2), Number(4.60, 2)));
  EXPECT_TRUE(SameInput(DateValue(29, 2, 1996), DateValue(29, 2, 1996)));
  EXPECT_FALSE(SameInput(DateValue(28, 2, 1996), DateValue(29, 2, 1996)));
  EXPECT_TRUE(SameInput(String("a|"), String("a|")));
  EXPECT_FALSE(SameInput(String("a|"), String("a| ")));
}

constexpr const char* kDebitumTrace = R"({"events": [
  {"action": "type", "widget": "amount",
   "data": {"value": "4.60",
            "domain": {"kind": "numeric", "min": 0, "max": 100,
                       "max_inclusive": false, "integer": false,
                       "precision": 2}}}]})";

TEST(ParseTraceTest, DebitumEvent) {
  const FailureTrace t = ParseTrace(kDebitumTrace);
  ASSERT_EQ(t.events.size(), 1u);
  EXPECT_EQ(t.events[0].action, "type");
  EXPECT_EQ(t.events[0].widget, "amount");
  ASSERT_TRUE(t.events[0].data.has_value());
  EXPECT_EQ(t.events[0].data->value, Number(4.6, 2));
  EXPECT_EQ(t.events[0].data->domain, DomainSpec(NumericDomain::Real(0, 100, false, 2)));
}

TEST(ParseTraceTest, EmptyEvents) {
  EXPECT_TRUE(ParseTrace(R"({"events": []})").events.empty());
}

TEST(ParseTraceTest, NonConformingValueNamesEvent) {
  const std::string text = R"({"events": [
    {"action": "click", "widget": "add"},
    {"action": "type", "widget": "amount",
     "data": {"value": 150, "domain": {"kind": "numeric", "min": 0,
              "max": 100, "max_inclusive": false, "integer": false}}}]})";
  EXPECT_EQ(ErrorCodeOf([&] { ParseTrace(text); }), ErrorCode::kValidation);
  EXPECT_NE(ErrorMessageOf([&] { ParseTrace(text); }).find("event 1"),
            std::string::npos);
}

TEST(ParseTraceTest, SyntaxErrorNamesLine) {
  const std::string text = "{\"events\": [\n  {\"action\": \"type\",,}\n]}";
  EXPECT_EQ(ErrorCodeOf([&] { ParseTrace(text); }), ErrorCode::kParse);
  EXPECT_NE(ErrorMessageOf([&] { ParseTrace(text); }).find("line 2"),
            std::string::npos);
}

TEST(ParseTraceTest, StructuralErrorsNameField) {
  EXPECT_EQ(ErrorCodeOf([] { ParseTrace("{}"); }), ErrorCode::kParse);
  const std::string bad_kind = R"({"events": [{"action": "a", "widget": "w",
      "data": {"value": 1, "domain": {"kind": "matrix"}}}]})";
  EXPECT_NE(ErrorMessageOf([&] { ParseTrace(bad_kind); }).find("events[0]"),
            std::string::npos);
  const std::string empty_action = R"({"events": [{"action": "", "widget": "w"}]})";
  EXPECT_EQ(ErrorCodeOf([&] { ParseTrace(empty_action); }),
            ErrorCode::kValidation);
}

TEST(ParseTraceTest, NumberForms) {
  const NumericDomain d = NumericDomain::Real(0, 100, false, 2);
  EXPECT_EQ(ValueFromJson(Json("4.60"), d, "v"), Number(4.6, 2));
  EXPECT_EQ(ValueFromJson(Json(4.6), d, "v"), Number(4.6, 1));
  EXPECT_EQ(ValueFromJson(Json(4), d, "v"), Number(4, 0));
  EXPECT_EQ(ErrorCodeOf([&] { ValueFromJson(Json("4,60"), d, "v"); }),
            ErrorCode::kParse);
  EXPECT_EQ(ErrorCodeOf([&] { ValueFromJson(Json(true), d, "v"); }),
            ErrorCode::kParse);
}

TEST(GoldenTraceTest, ByteIdenticalRoundTrip) {
  const std::string text =
      json_util::ReadFile(testing::GoldenPath("debitum_trace.json"));
  const FailureTrace t = ParseTrace(text);
  ASSERT_EQ(t.events.size(), 6u);
  EXPECT_EQ(t.events[2].data->value, DateValue(29, 2, 1996));
  EXPECT_EQ(t.events[3].data->value, String("option|"));
  EXPECT_EQ(t.events[4].data->domain.categorical().hierarchy.size(), 2u);
  EXPECT_FALSE(t.events[5].data.has_value());
  EXPECT_EQ(SerializeTrace(t), text);
}

TEST(DomainJsonTest, RoundTripsEveryKind) {
  const std::vector<DomainSpec> domains = {
      NumericDomain::Real(0, 1000000, false, 2),
      NumericDomain::Integer(1, 31),
      CategoricalDomain{{"a", "b", "c"}, {{"ab", {"a", "b"}}, {"c", {"c"}}}},
      CategoricalDomain{{"x"}, {}},
      StringDomain{CharClass::kDecimalComma, 2, 9},
      Date(1900, 2100)};
  for (const auto& d : domains) {
    EXPECT_EQ(DomainFromJson(DomainToJson(d), "d"), d);
  }
}

}  // namespace
}  // namespace anonrepro
