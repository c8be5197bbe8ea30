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

#ifndef ANONREPRO_CORPUS_H_
#define ANONREPRO_CORPUS_H_

// Bug scenarios: an oracle, the original input that triggers it, and the
// technique configurations to evaluate. The built-in corpus ships one JSON
// file per app bug under corpus/.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "anonrepro/json_util.h"
#include "anonrepro/oracle.h"
#include "anonrepro/record_json.h"

namespace anonrepro {

struct CorpusEntry {
  BugOracle oracle;
  // One value per oracle field, in declaration order.
  std::vector<DataValue> original;
  std::vector<ConfiguredTechnique> configs;
  Json metadata = Json::object();

  bool approximate() const {
    return metadata.value("provenance", std::string()) == "approximate";
  }
  bool special_char_trigger() const {
    return metadata.value("special_char_trigger", false);
  }
  // "string" or "number": which family of techniques the input belongs to.
  std::string input_kind() const {
    return metadata.value("input_kind", std::string("number"));
  }
};

inline CorpusEntry CorpusEntryFromJson(const Json& j, bool require_original) {
  using namespace json_util;
  CorpusEntry entry;
  entry.oracle = OracleFromJson(j);
  const std::string& name = entry.oracle.name;
  if (const Json* orig = Optional(j, "original")) {
    if (!orig->is_object()) Fail("original", "expected an object");
    for (const auto& f : entry.oracle.fields) {
      const std::string p = "original." + f.name;
      DataValue v = ValueFromJson(Require(*orig, f.name.c_str(), "original"),
                                  f.domain, p);
      if (!Conforms(v, f.domain)) {
        throw Error(ErrorCode::kValidation,
                    name + ": original value of '" + f.name +
                        "' does not conform to its domain");
      }
      entry.original.push_back(std::move(v));
    }
  } else if (require_original) {
    Fail(name, "missing field 'original'");
  }
  if (const Json* cfgs = Optional(j, "configs")) {
    if (!cfgs->is_array()) Fail("configs", "expected an array");
    for (size_t i = 0; i < cfgs->size(); ++i) {
      entry.configs.push_back(TechniqueFromJson((*cfgs)[i], Index("configs", i)));
    }
  }
  if (const Json* meta = Optional(j, "metadata")) entry.metadata = *meta;
  return entry;
}

inline CorpusEntry LoadCorpusEntry(const std::string& path,
                                   bool require_original = true) {
  try {
    return CorpusEntryFromJson(
        json_util::ParseText(json_util::ReadFile(path), path),
        require_original);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    throw Error(e.code(), path + ": " + e.detail());
  }
}

// ANONREPRO_CORPUS_DIR wins; otherwise the build-time default, if any.
inline std::string CorpusDirectory() {
  if (const char* env = std::getenv("ANONREPRO_CORPUS_DIR"); env && *env) {
    return env;
  }
#ifdef ANONREPRO_DEFAULT_CORPUS_DIR
  return ANONREPRO_DEFAULT_CORPUS_DIR;
#else
  return "corpus";
#endif
}

// Entries sorted by file name.
inline std::vector<CorpusEntry> LoadCorpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "corpus directory '" + dir + "' not found");
  }
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) out.push_back(LoadCorpusEntry(f));
  return out;
}

inline CorpusEntry FindCorpusEntry(const std::string& dir,
                                   const std::string& name) {
  const std::string path =
      (std::filesystem::path(dir) / (name + ".json")).string();
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kValidation,
                "no corpus entry '" + name + "' in '" + dir + "'");
  }
  return LoadCorpusEntry(path);
}

}  // namespace anonrepro

#endif  // ANONREPRO_CORPUS_H_
