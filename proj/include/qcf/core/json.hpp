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

#ifndef QCF_CORE_JSON_HPP
#define QCF_CORE_JSON_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qcf/core/state.hpp"

namespace qcf {

using Json = nlohmann::json;

/// Raised when a JSON document does not match the expected schema. The
/// message names the offending path.
class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrices: {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order,
// or sparse as {"rows", "cols", "entries": [[row, col, re, im], ...]}.
Json matrix_to_json(const Matrix& m);
Json sparse_matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path = "matrix");

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& path = "vector");

Json layout_to_json(const Layout& layout);
Layout layout_from_json(const Json& j, const std::string& path = "layout");

/// Looks up a required key, throwing JsonFormatError("<path>.<key>: missing").
const Json& require(const Json& j, const std::string& key, const std::string& path);

}  // namespace qcf

#endif  // QCF_CORE_JSON_HPP
