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

#include "qcf/core/json.hpp"

namespace qcf {

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw JsonFormatError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonFormatError(path + "." + key + ": missing");
  return *it;
}

namespace {

Complex complex_from_json(const Json& e, const std::string& path) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw JsonFormatError(path + ": expected [re, im]");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

Index positive_index(const Json& j, const std::string& key, const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw JsonFormatError(path + "." + key + ": expected a non-negative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json sparse_matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex(0.0)) entries.push_back({i, j, m(i, j).real(), m(i, j).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw JsonFormatError(path + ": expected an object");
  const Index rows = positive_index(j, "rows", path);
  const Index cols = positive_index(j, "cols", path);
  if (j.contains("entries")) {
    const Json& entries = j["entries"];
    if (!entries.is_array()) throw JsonFormatError(path + ".entries: expected an array");
    Matrix m = Matrix::Zero(rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const Json& e = entries[k];
      const std::string at = path + ".entries[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          !e[2].is_number() || !e[3].is_number()) {
        throw JsonFormatError(at + ": expected [row, col, re, im]");
      }
      const auto r = e[0].get<Index>();
      const auto c = e[1].get<Index>();
      if (r < 0 || r >= rows || c < 0 || c >= cols) throw JsonFormatError(at + ": index out of range");
      m(r, c) = Complex(e[2].get<double>(), e[3].get<double>());
    }
    return m;
  }
  const Json& data = require(j, "data", path);
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    throw JsonFormatError(path + ".data: expected " + std::to_string(rows * cols) + " entries");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index c = 0; c < cols; ++c) {
      const auto k = static_cast<std::size_t>(i * cols + c);
      m(i, c) = complex_from_json(data[k], path + ".data[" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json data = Json::array();
  for (Index i = 0; i < v.size(); ++i) data.push_back({v(i).real(), v(i).imag()});
  return data;
}

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonFormatError(path + ": expected an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Index>(k)) = complex_from_json(j[k], path + "[" + std::to_string(k) + "]");
  }
  return v;
}

Json layout_to_json(const Layout& layout) { return layout.dims(); }

Layout layout_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonFormatError(path + ": expected an array of dimensions");
  std::vector<Index> dims;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_integer() || j[k].get<long long>() < 1) {
      throw JsonFormatError(path + "[" + std::to_string(k) + "]: expected a positive integer");
    }
    dims.push_back(static_cast<Index>(j[k].get<long long>()));
  }
  return Layout(std::move(dims));
}

}  // namespace qcf
