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

#include "qcf/core/layout.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcf {

Layout::Layout(std::vector<Index> dims) : dims_(std::move(dims)) {
  for (Index d : dims_) {
    if (d < 1) throw std::invalid_argument("Layout: factor dimensions must be >= 1");
    total_ *= d;
  }
}

Layout::Layout(std::initializer_list<Index> dims) : Layout(std::vector<Index>(dims)) {}

Layout Layout::qubits(int count) {
  return Layout(std::vector<Index>(static_cast<std::size_t>(count), 2));
}

Index Layout::dim(std::size_t factor) const {
  if (factor >= dims_.size()) throw std::out_of_range("Layout::dim: factor index out of range");
  return dims_[factor];
}

Index Layout::stride(std::size_t factor) const {
  if (factor >= dims_.size()) throw std::out_of_range("Layout::stride: factor index out of range");
  Index s = 1;
  for (std::size_t i = factor + 1; i < dims_.size(); ++i) s *= dims_[i];
  return s;
}

Layout Layout::concat(const Layout& other) const {
  std::vector<Index> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return Layout(std::move(dims));
}

Layout Layout::select(std::span<const int> factors) const {
  check_factor_subset(*this, factors);
  std::vector<Index> dims;
  dims.reserve(factors.size());
  for (int f : factors) dims.push_back(dims_[static_cast<std::size_t>(f)]);
  return Layout(std::move(dims));
}

std::vector<int> Layout::complement(std::span<const int> factors) const {
  check_factor_subset(*this, factors);
  std::vector<int> rest;
  for (int f = 0; f < static_cast<int>(dims_.size()); ++f) {
    if (std::find(factors.begin(), factors.end(), f) == factors.end()) rest.push_back(f);
  }
  return rest;
}

std::vector<Index> Layout::digits(Index flat) const {
  std::vector<Index> out(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    out[i] = flat % dims_[i];
    flat /= dims_[i];
  }
  return out;
}

Index Layout::flat(std::span<const Index> digits) const {
  if (digits.size() != dims_.size()) throw std::invalid_argument("Layout::flat: digit count mismatch");
  Index out = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims_[i]) throw std::out_of_range("Layout::flat: digit out of range");
    out = out * dims_[i] + digits[i];
  }
  return out;
}

std::string Layout::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ']';
  return os.str();
}

void check_factor_subset(const Layout& layout, std::span<const int> factors) {
  const int n = static_cast<int>(layout.factors());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 0 || factors[i] >= n) {
      throw std::out_of_range("factor index " + std::to_string(factors[i]) +
                              " out of range for layout " + layout.to_string());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factors[j] == factors[i]) throw std::invalid_argument("duplicate factor index");
    }
  }
}

}  // namespace qcf
