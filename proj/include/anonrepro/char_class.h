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

#ifndef ANONREPRO_CHAR_CLASS_H_
#define ANONREPRO_CHAR_CLASS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace anonrepro {

// Character classes used to regenerate string inputs. These cover the
// printable, alphanumeric and numeric-with-separator cases seen in app
// input fields.
enum class CharClass {
  kPrintable,          // [!-~]
  kPrintableSpace,     // [ -~]
  kAlphanumeric,       // [A-Za-z0-9]
  kAlphanumericSpace,  // [A-Za-z0-9 ]
  kDecimalEither,      // [0-9.,]
  kDecimalComma,       // [0-9,]
  kDecimalDot,         // [0-9.]
  kClock,              // [0-9:]
};

inline constexpr std::array<CharClass, 8> kAllCharClasses = {
    CharClass::kPrintable,      CharClass::kPrintableSpace,
    CharClass::kAlphanumeric,   CharClass::kAlphanumericSpace,
    CharClass::kDecimalEither,  CharClass::kDecimalComma,
    CharClass::kDecimalDot,     CharClass::kClock,
};

inline std::string_view CharClassPattern(CharClass c) {
  switch (c) {
    case CharClass::kPrintable: return "[!-~]";
    case CharClass::kPrintableSpace: return "[ -~]";
    case CharClass::kAlphanumeric: return "[A-Za-z0-9]";
    case CharClass::kAlphanumericSpace: return "[A-Za-z0-9 ]";
    case CharClass::kDecimalEither: return "[0-9.,]";
    case CharClass::kDecimalComma: return "[0-9,]";
    case CharClass::kDecimalDot: return "[0-9.]";
    case CharClass::kClock: return "[0-9:]";
  }
  return "";
}

inline std::optional<CharClass> ParseCharClass(std::string_view pattern) {
  if (pattern == "[0-9,.]") return CharClass::kDecimalEither;
  for (CharClass c : kAllCharClasses) {
    if (CharClassPattern(c) == pattern) return c;
  }
  return std::nullopt;
}

namespace internal {

inline std::string BuildAlphabet(CharClass c) {
  std::string out;
  auto range = [&out](char lo, char hi) {
    for (int ch = lo; ch <= hi; ++ch) out.push_back(static_cast<char>(ch));
  };
  switch (c) {
    case CharClass::kPrintable:
      range('!', '~');
      break;
    case CharClass::kPrintableSpace:
      range(' ', '~');
      break;
    case CharClass::kAlphanumericSpace:
      out.push_back(' ');
      [[fallthrough]];
    case CharClass::kAlphanumeric:
      range('0', '9');
      range('A', 'Z');
      range('a', 'z');
      break;
    case CharClass::kDecimalEither:
      out = ",.";
      range('0', '9');
      break;
    case CharClass::kDecimalComma:
      out = ",";
      range('0', '9');
      break;
    case CharClass::kDecimalDot:
      out = ".";
      range('0', '9');
      break;
    case CharClass::kClock:
      range('0', '9');
      out.push_back(':');
      break;
  }
  return out;
}

}  // namespace internal

// Members of the class in ascending byte order.
inline const std::string& CharClassAlphabet(CharClass c) {
  static const std::array<std::string, kAllCharClasses.size()> alphabets = [] {
    std::array<std::string, kAllCharClasses.size()> a;
    for (size_t i = 0; i < a.size(); ++i) {
      a[i] = internal::BuildAlphabet(kAllCharClasses[i]);
    }
    return a;
  }();
  return alphabets[static_cast<size_t>(c)];
}

inline bool InCharClass(CharClass c, char ch) {
  return CharClassAlphabet(c).find(ch) != std::string::npos;
}

inline bool IsAsciiAlnum(char ch) {
  return (ch >= '0' && ch <= '9') || (ch >= 'A' && ch <= 'Z') ||
         (ch >= 'a' && ch <= 'z');
}

// Anything outside [A-Za-z0-9] that is not a space.
inline bool IsSpecialChar(char ch) { return !IsAsciiAlnum(ch) && ch != ' '; }

}  // namespace anonrepro

#endif  // ANONREPRO_CHAR_CLASS_H_
