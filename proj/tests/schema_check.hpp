// Copyright 2026 The qcoinflip Authors
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

// Validator for the subset of JSON Schema used under schemas/.

#ifndef QCF_TESTS_SCHEMA_CHECK_HPP
#define QCF_TESTS_SCHEMA_CHECK_HPP

#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include "qcf/core/json.hpp"

namespace schema_check {

using qcf::Json;

inline bool has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

class Validator {
 public:
  explicit Validator(Json root) : root_(std::move(root)) {}

  static Validator load(const std::string& path) {
    std::ifstream in(path);
    return Validator(Json::parse(in));
  }

  /// Empty when `v` conforms; otherwise one message per violation.
  std::vector<std::string> check(const Json& v) const {
    std::vector<std::string> errors;
    visit(root_, v, "$", errors);
    return errors;
  }

 private:
  Json root_;

  const Json& resolve(const Json& s) const {
    if (!s.contains("$ref")) return s;
    const std::string ref = s["$ref"].get<std::string>();
    return root_.at(Json::json_pointer(ref.substr(1)));
  }

  void visit(const Json& schema, const Json& v, const std::string& at, std::vector<std::string>& errors) const {
    const Json& s = resolve(schema);
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
      } else {
        ok = has_type(v, s["type"].get<std::string>());
      }
      if (!ok) {
        errors.push_back(at + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) errors.push_back(at + ": expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) errors.push_back(at + ": not in " + s["enum"].dump());
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) errors.push_back(at + ": below minimum");
      if (s.contains("maximum") && x > s["maximum"].get<double>()) errors.push_back(at + ": above maximum");
    }
    if (v.is_string() && s.contains("pattern") &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
      errors.push_back(at + ": pattern mismatch");
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& key : s["required"])
          if (!v.contains(key.get<std::string>())) errors.push_back(at + "." + key.get<std::string>() + ": missing");
      for (const auto& [key, value] : v.items()) {
        if (s.contains("properties") && s["properties"].contains(key))
          visit(s["properties"][key], value, at + "." + key, errors);
        else if (s.contains("additionalProperties") && s["additionalProperties"].is_object())
          visit(s["additionalProperties"], value, at + "." + key, errors);
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) errors.push_back(at + ": too few items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) errors.push_back(at + ": too many items");
      if (s.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) visit(s["items"], v[i], at + "[" + std::to_string(i) + "]", errors);
    }
    if (s.contains("oneOf")) {
      int matches = 0;
      for (const auto& alt : s["oneOf"]) {
        std::vector<std::string> sub;
        visit(alt, v, at, sub);
        matches += sub.empty();
      }
      if (matches != 1) errors.push_back(at + ": matches " + std::to_string(matches) + " alternatives of oneOf");
    }
  }
};

}  // namespace schema_check

#endif  // QCF_TESTS_SCHEMA_CHECK_HPP
