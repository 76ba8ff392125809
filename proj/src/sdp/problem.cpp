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

#include "qcf/sdp/problem.hpp"

#include <algorithm>
#include <stdexcept>

#include "qcf/core/ops.hpp"

namespace qcf::sdp {

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::size_t Problem::add_block(const std::string& name, const Layout& layout) {
  for (const auto& b : blocks_) {
    if (b.name == name) throw std::invalid_argument("sdp: duplicate block name '" + name + "'");
  }
  blocks_.push_back({name, layout});
  objective_.push_back(Matrix::Zero(layout.total_dim(), layout.total_dim()));
  return blocks_.size() - 1;
}

void Problem::set_objective(const std::string& block, const Matrix& c) {
  const std::size_t i = block_index(block);
  if (c.rows() != objective_[i].rows() || c.cols() != objective_[i].cols()) {
    throw std::invalid_argument("sdp: objective shape mismatch for block '" + block + "'");
  }
  if (!is_hermitian(c, 1e-10)) throw std::invalid_argument("sdp: objective for '" + block + "' is not Hermitian");
  objective_[i] = hermitian_part(c);
}

std::size_t Problem::add_constraint(const std::string& name, const Matrix& rhs) {
  for (const auto& c : constraints_) {
    if (c.name == name) throw std::invalid_argument("sdp: duplicate constraint name '" + name + "'");
  }
  if (!is_hermitian(rhs, 1e-10)) throw std::invalid_argument("sdp: rhs of '" + name + "' is not Hermitian");
  constraints_.push_back({name, {}, hermitian_part(rhs)});
  return constraints_.size() - 1;
}

void Problem::add_term(const std::string& constraint, Term term) {
  const std::size_t c = constraint_index(constraint);
  block_index(term.block);
  term.keep = sorted(std::move(term.keep));
  constraints_[c].terms.push_back(std::move(term));
}

void Problem::add_trace_term(const std::string& constraint, const std::string& block, double coeff,
                             std::vector<int> keep) {
  Term t;
  t.block = block;
  t.coeff = coeff;
  t.keep = std::move(keep);
  add_term(constraint, std::move(t));
}

void Problem::add_sandwich_term(const std::string& constraint, const std::string& block, double coeff,
                                const Matrix& s, const Layout& target, std::vector<int> keep) {
  Term t;
  t.block = block;
  t.coeff = coeff;
  t.sandwich = s;
  t.target = target;
  t.keep = std::move(keep);
  add_term(constraint, std::move(t));
}

std::size_t Problem::block_index(const std::string& name) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].name == name) return i;
  }
  throw std::invalid_argument("sdp: unknown block '" + name + "'");
}

std::size_t Problem::constraint_index(const std::string& name) const {
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (constraints_[i].name == name) return i;
  }
  throw std::invalid_argument("sdp: unknown constraint '" + name + "'");
}

const Layout& term_target(const Problem& p, const Term& term) {
  if (term.sandwich.size() == 0) return p.blocks()[p.block_index(term.block)].layout;
  return term.target;
}

Matrix term_sandwich(const Problem& p, const Term& term) {
  if (term.sandwich.size() != 0) return term.sandwich;
  const Index n = p.blocks()[p.block_index(term.block)].layout.total_dim();
  return Matrix::Identity(n, n);
}

void Problem::validate() const {
  if (blocks_.empty()) throw std::invalid_argument("sdp: problem has no blocks");
  for (const auto& c : constraints_) {
    if (c.terms.empty()) throw std::invalid_argument("sdp: constraint '" + c.name + "' has no terms");
    for (const auto& t : c.terms) {
      const Layout& block_layout = blocks_[block_index(t.block)].layout;
      const Layout& target = term_target(*this, t);
      check_factor_subset(target, t.keep);
      if (t.sandwich.size() != 0 &&
          (t.sandwich.cols() != block_layout.total_dim() || t.sandwich.rows() != target.total_dim())) {
        throw std::invalid_argument("sdp: sandwich shape mismatch in constraint '" + c.name + "', block '" +
                                    t.block + "'");
      }
      if (target.select(t.keep).total_dim() != c.rhs.rows()) {
        throw std::invalid_argument("sdp: kept dimension of a term in '" + c.name + "' does not match its rhs");
      }
    }
  }
}

double Problem::objective_value(const std::vector<Matrix>& x) const {
  if (x.size() != blocks_.size()) throw std::invalid_argument("sdp: block count mismatch");
  double v = offset_;
  for (std::size_t i = 0; i < x.size(); ++i) v += (objective_[i] * x[i]).trace().real();
  return v;
}

Matrix Problem::constraint_value(std::size_t c, const std::vector<Matrix>& x) const {
  const Constraint& con = constraints_.at(c);
  Matrix out = Matrix::Zero(con.rhs.rows(), con.rhs.cols());
  for (const auto& t : con.terms) {
    const Matrix& xb = x.at(block_index(t.block));
    const Matrix s = term_sandwich(*this, t);
    out += t.coeff * partial_trace(Matrix(s * xb * s.adjoint()), term_target(*this, t), t.keep);
  }
  return out;
}

Matrix Problem::adjoint_block(std::size_t i, const std::vector<Matrix>& y) const {
  if (y.size() != constraints_.size()) throw std::invalid_argument("sdp: multiplier count mismatch");
  const Index n = blocks_.at(i).layout.total_dim();
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    for (const auto& t : constraints_[c].terms) {
      if (block_index(t.block) != i) continue;
      const Matrix s = term_sandwich(*this, t);
      out += t.coeff * (s.adjoint() * embed(y[c], term_target(*this, t), t.keep) * s);
    }
  }
  return hermitian_part(out);
}

}  // namespace qcf::sdp
