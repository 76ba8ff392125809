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

#ifndef QCF_CORE_LAYOUT_HPP
#define QCF_CORE_LAYOUT_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qcf {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/*
 * Ordered list of local dimensions of a tensor-factored Hilbert space.
 *
 * Factor 0 is the most significant digit of a basis index, so for
 * dims = [d0, d1] the basis vector |i>|j> has index i * d1 + j. This is the
 * ordering produced by Eigen's kroneckerProduct-style expansion used in kron().
 */
class Layout {
 public:
  Layout() = default;
  explicit Layout(std::vector<Index> dims);
  Layout(std::initializer_list<Index> dims);

  static Layout qubits(int count);

  const std::vector<Index>& dims() const { return dims_; }
  Index dim(std::size_t factor) const;
  std::size_t factors() const { return dims_.size(); }
  Index total_dim() const { return total_; }

  // stride of a factor inside a flat basis index
  Index stride(std::size_t factor) const;

  Layout concat(const Layout& other) const;
  // Sub-layout with the given factors, in the order given.
  Layout select(std::span<const int> factors) const;
  // Factors not in `factors`, ascending.
  std::vector<int> complement(std::span<const int> factors) const;

  // Decomposes a flat index into per-factor digits and back.
  std::vector<Index> digits(Index flat) const;
  Index flat(std::span<const Index> digits) const;

  std::string to_string() const;

  bool operator==(const Layout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

// Throws std::out_of_range for indices outside the layout and
// std::invalid_argument for duplicates.
void check_factor_subset(const Layout& layout, std::span<const int> factors);

}  // namespace qcf

#endif  // QCF_CORE_LAYOUT_HPP
