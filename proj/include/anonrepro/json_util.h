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

#ifndef ANONREPRO_JSON_UTIL_H_
#define ANONREPRO_JSON_UTIL_H_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "anonrepro/error.h"
#include "json.hpp"

namespace anonrepro {

using Json = nlohmann::ordered_json;

namespace json_util {

inline Json ParseText(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

inline std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

[[noreturn]] inline void Fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kParse, path + ": " + msg);
}

inline const Json& Require(const Json& obj, const char* key,
                           const std::string& path) {
  if (!obj.is_object()) Fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline const Json* Optional(const Json& obj, const char* key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline double AsNumber(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) Fail(path, "number must be finite");
  return x;
}

inline int64_t AsInt(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<int64_t>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::floor(x) == x && std::fabs(x) < 9.0e15) {
      return static_cast<int64_t>(x);
    }
  }
  Fail(path, "expected an integer");
}

inline bool AsBool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) Fail(path, "expected true or false");
  return j.get<bool>();
}

inline std::string AsString(const Json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  return j.get<std::string>();
}

// Whole numbers are written as JSON integers so integer bounds print without
// a trailing ".0".
inline Json JsonNumber(double x) {
  if (std::floor(x) == x && std::fabs(x) < 9.0e15) {
    return static_cast<int64_t>(x);
  }
  return x;
}

inline std::string Key(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

inline std::string Index(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace json_util
}  // namespace anonrepro

#endif  // ANONREPRO_JSON_UTIL_H_
