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

#ifndef QCF_SDP_PROBLEM_HPP
#define QCF_SDP_PROBLEM_HPP

#include <string>
#include <vector>

#include "qcf/core/state.hpp"

namespace qcf::sdp {

struct Block {
  std::string name;
  Layout layout;
};

/*
 * One linear piece of an equality constraint:
 *
 *   coeff * tr_{traced}( S X S^H )
 *
 * S maps the block's space into `target` (S empty means identity, target
 * then defaults to the block layout). The partial trace runs over every
 * factor of `target` not listed in `keep`; an empty `keep` is a full trace.
 * "Partial trace then sandwich by T" is the special case S = T (x) 1.
 */
struct Term {
  std::string block;
  double coeff = 1.0;
  Matrix sandwich;
  Layout target;
  std::vector<int> keep;
};

/// sum_terms term(X) = rhs, with rhs Hermitian on layout(keep).
struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Matrix rhs;
};

/*
 * maximize    sum_i tr(C_i X_i) + offset
 * subject to  A_c(X) = R_c for every constraint c,  X_i >= 0.
 *
 * The dual is
 *
 * minimize    sum_c Re tr(Y_c R_c) + offset
 * subject to  A^*(Y)_i - C_i >= 0 for every block i,
 *
 * with one Hermitian multiplier Y_c per constraint (1x1 for scalar ones).
 */
class Problem {
 public:
  /// Adds a block with zero objective; returns its index.
  std::size_t add_block(const std::string& name, const Layout& layout);
  void set_objective(const std::string& block, const Matrix& c);
  void set_offset(double offset) { offset_ = offset; }

  /// Adds a constraint with the given right-hand side; terms are appended
  /// with add_term.
  std::size_t add_constraint(const std::string& name, const Matrix& rhs);
  void add_term(const std::string& constraint, Term term);

  /// Convenience: coeff * tr_{not keep}(X_block).
  void add_trace_term(const std::string& constraint, const std::string& block, double coeff,
                      std::vector<int> keep);
  /// Convenience: coeff * tr_{not keep}(S X_block S^H) with S acting into `target`.
  void add_sandwich_term(const std::string& constraint, const std::string& block, double coeff,
                         const Matrix& s, const Layout& target, std::vector<int> keep);

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Matrix>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  double offset() const { return offset_; }

  std::size_t block_index(const std::string& name) const;
  std::size_t constraint_index(const std::string& name) const;
  /// Output dimension of a constraint (rows of its rhs).
  Index constraint_dim(std::size_t c) const { return constraints_[c].rhs.rows(); }

  /// Full consistency check of shapes and Hermiticity; throws
  /// std::invalid_argument naming the offending piece.
  void validate() const;

  /// Objective value sum_i tr(C_i X_i) + offset.
  double objective_value(const std::vector<Matrix>& x) const;
  /// Value of the left-hand side of constraint c at x.
  Matrix constraint_value(std::size_t c, const std::vector<Matrix>& x) const;
  /// Block i of A^*(Y) for multipliers Y (one per constraint).
  Matrix adjoint_block(std::size_t i, const std::vector<Matrix>& y) const;

 private:
  std::vector<Block> blocks_;
  std::vector<Matrix> objective_;
  std::vector<Constraint> constraints_;
  double offset_ = 0.0;
};

/// Layout that `term` maps into (its target, or the block's own layout).
const Layout& term_target(const Problem& p, const Term& term);
/// Matrix of `term`'s sandwich, identity if empty.
Matrix term_sandwich(const Problem& p, const Term& term);

}  // namespace qcf::sdp

#endif  // QCF_SDP_PROBLEM_HPP
