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

#ifndef QCF_SDP_SOLVER_HPP
#define QCF_SDP_SOLVER_HPP

#include <map>
#include <string>
#include <vector>

#include "qcf/sdp/problem.hpp"

namespace qcf::sdp {

enum class Status { converged, max_iterations, infeasible, unbounded };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Options {
  double feasibility_tol = 1e-8;
  double gap_tol = 1e-7;
  int max_iterations = 500;
  double step_fraction = 0.95;
  bool verbose = false;
};

/// Multipliers keyed by constraint name.
struct DualCertificate {
  std::map<std::string, Matrix> multipliers;
  double claimed_value = 0.0;
};

struct Residuals {
  double primal = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual = 0.0;    // ||A^*(y) - C - Z|| / (1 + ||C||)
  double gap = 0.0;     // |pobj - dobj| / (1 + |pobj| + |dobj|)
};

struct Solution {
  Status status = Status::max_iterations;
  double primal_value = 0.0;
  double dual_value = 0.0;
  std::vector<Matrix> primal_blocks;  // X_i, Hermitian PSD
  std::vector<Matrix> dual_slacks;    // Z_i = A^*(Y)_i - C_i
  DualCertificate dual;               // multipliers Y_c from the final iterate
  Residuals residuals;
  int iterations = 0;
  std::string message;

  bool converged() const { return status == Status::converged; }
};

/// Primal-dual interior-point solve (HKM direction, Mehrotra corrector).
Solution solve(const Problem& problem, const Options& options = {});

struct DualReport {
  bool feasible = false;
  std::vector<double> block_min_eigenvalues;  // of A^*(Y)_i - C_i
  double bound = 0.0;                         // sum_c Re tr(Y_c R_c) + offset
};

/// Checks every dual PSD condition with tolerance `tol`. Missing multipliers
/// or shape mismatches throw std::invalid_argument.
DualReport verify_dual(const Problem& problem, const DualCertificate& cert, double tol = 1e-9);

/// cert bound - primal value. Throws if the solution did not converge or the
/// certificate is infeasible at `tol`.
double duality_gap(const Problem& problem, const Solution& solution, const DualCertificate& cert,
                   double tol = 1e-9);

}  // namespace qcf::sdp

#endif  // QCF_SDP_SOLVER_HPP
