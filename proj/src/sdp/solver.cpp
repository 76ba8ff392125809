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

#include "qcf/sdp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "qcf/core/ops.hpp"

namespace qcf::sdp {

std::string to_string(Status s) {
  switch (s) {
    case Status::converged: return "converged";
    case Status::max_iterations: return "max_iterations";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "unknown";
}

Status status_from_string(const std::string& s) {
  if (s == "converged") return Status::converged;
  if (s == "max_iterations") return Status::max_iterations;
  if (s == "infeasible") return Status::infeasible;
  if (s == "unbounded") return Status::unbounded;
  throw std::invalid_argument("unknown solver status '" + s + "'");
}

namespace {

using RealVec = RealVector;

// Orthonormal basis of d x d Hermitian matrices under <A, B> = Re tr(A B):
// E_pp, (E_pq + E_qp)/sqrt2, (-i E_pq + i E_qp)/sqrt2. Each element is a
// short list of (row, col, value) entries.
struct Entry {
  Index row;
  Index col;
  Complex value;
};
using HermitianBasis = std::vector<std::vector<Entry>>;

HermitianBasis hermitian_basis(Index d) {
  HermitianBasis basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (Index p = 0; p < d; ++p) basis.push_back({{p, p, 1.0}});
  for (Index p = 0; p < d; ++p) {
    for (Index q = p + 1; q < d; ++q) {
      basis.push_back({{p, q, r}, {q, p, r}});
      basis.push_back({{p, q, Complex(0, -r)}, {q, p, Complex(0, r)}});
    }
  }
  return basis;
}

RealVec coordinates(const HermitianBasis& basis, const Matrix& h) {
  RealVec out(static_cast<Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Complex s = 0.0;
    for (const auto& e : basis[k]) s += e.value * h(e.col, e.row);
    out(static_cast<Index>(k)) = s.real();
  }
  return out;
}

Matrix from_coordinates(const HermitianBasis& basis, Index d, const RealVec& y) {
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (const auto& e : basis[k]) out(e.row, e.col) += y(static_cast<Index>(k)) * e.value;
  }
  return out;
}

struct CompiledTerm {
  std::size_t constraint;
  double coeff;
  Matrix s;   // rows ordered (kept, traced), kept most significant
  Index kept;
  Index traced;
};

struct Compiled {
  std::vector<Index> block_dims;
  std::vector<std::vector<CompiledTerm>> terms;  // per block
  std::vector<Index> offsets;                    // per constraint
  std::vector<Index> dims;                       // per constraint
  std::vector<const HermitianBasis*> bases;      // per constraint
  std::vector<HermitianBasis> basis_cache;       // indexed by dimension
  std::vector<Matrix> c;
  RealVec b;
  Index m = 0;
  Index n_total = 0;
};

Compiled compile(const Problem& p) {
  p.validate();
  Compiled out;
  Index max_dim = 0;
  for (std::size_t c = 0; c < p.constraints().size(); ++c) max_dim = std::max(max_dim, p.constraint_dim(c));
  out.basis_cache.resize(static_cast<std::size_t>(max_dim + 1));
  for (Index d = 1; d <= max_dim; ++d) out.basis_cache[static_cast<std::size_t>(d)] = hermitian_basis(d);

  for (const auto& blk : p.blocks()) {
    out.block_dims.push_back(blk.layout.total_dim());
    out.n_total += blk.layout.total_dim();
  }
  out.terms.resize(p.blocks().size());
  out.c = p.objective();
  out.b.resize(0);
  for (std::size_t c = 0; c < p.constraints().size(); ++c) {
    const auto& con = p.constraints()[c];
    const Index d = con.rhs.rows();
    out.offsets.push_back(out.m);
    out.dims.push_back(d);
    out.bases.push_back(&out.basis_cache[static_cast<std::size_t>(d)]);
    out.m += d * d;
    for (const auto& t : con.terms) {
      const Layout& target = term_target(p, t);
      std::vector<int> order = t.keep;
      for (int f : target.complement(t.keep)) order.push_back(f);
      CompiledTerm ct;
      ct.constraint = c;
      ct.coeff = t.coeff;
      ct.s = permutation_matrix(target, order) * term_sandwich(p, t);
      ct.kept = d;
      ct.traced = target.total_dim() / d;
      out.terms[p.block_index(t.block)].push_back(std::move(ct));
    }
  }
  out.b.resize(out.m);
  for (std::size_t c = 0; c < p.constraints().size(); ++c) {
    out.b.segment(out.offsets[c], out.dims[c] * out.dims[c]) = coordinates(*out.bases[c], p.constraints()[c].rhs);
  }
  return out;
}

Matrix trace_out(const Matrix& y, Index kept, Index traced) {
  Matrix out = Matrix::Zero(kept, kept);
  for (Index p = 0; p < kept; ++p) {
    for (Index q = 0; q < kept; ++q) {
      Complex s = 0.0;
      for (Index t = 0; t < traced; ++t) s += y(p * traced + t, q * traced + t);
      out(p, q) = s;
    }
  }
  return out;
}

RealVec apply_a(const Compiled& cp, const std::vector<Matrix>& x) {
  RealVec out = RealVec::Zero(cp.m);
  for (std::size_t i = 0; i < cp.terms.size(); ++i) {
    for (const auto& t : cp.terms[i]) {
      const Matrix y = trace_out(t.s * x[i] * t.s.adjoint(), t.kept, t.traced);
      out.segment(cp.offsets[t.constraint], t.kept * t.kept) += t.coeff * coordinates(*cp.bases[t.constraint], y);
    }
  }
  return out;
}

std::vector<Matrix> multipliers(const Compiled& cp, const RealVec& y) {
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < cp.dims.size(); ++c) {
    out.push_back(from_coordinates(*cp.bases[c], cp.dims[c], y.segment(cp.offsets[c], cp.dims[c] * cp.dims[c])));
  }
  return out;
}

std::vector<Matrix> apply_at(const Compiled& cp, const RealVec& y) {
  const auto ym = multipliers(cp, y);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < cp.terms.size(); ++i) {
    Matrix acc = Matrix::Zero(cp.block_dims[i], cp.block_dims[i]);
    for (const auto& t : cp.terms[i]) {
      const Matrix lifted = kron(ym[t.constraint], Matrix::Identity(t.traced, t.traced));
      acc += t.coeff * (t.s.adjoint() * lifted * t.s);
    }
    out.push_back(hermitian_part(acc));
  }
  return out;
}

/*
 * Schur complement M_kl = Re tr(A_k X A_l W) summed over blocks.
 *
 * For a pair of terms on one block with P = S1 X S2^H and Q = S2 W S1^H,
 *   tr((E_k (x) 1) P (E_l (x) 1) Q) = sum E_k[a,p] E_l[q,s] T[(p,q),(s,a)],
 *   T[(p,q),(s,a)] = sum_{t,u} P[(p,t),(q,u)] Q[(s,u),(a,t)],
 * and T is one dense product after reshaping P and Q.
 */
RealMatrix schur(const Compiled& cp, const std::vector<Matrix>& x, const std::vector<Matrix>& w) {
  RealMatrix m = RealMatrix::Zero(cp.m, cp.m);
  for (std::size_t i = 0; i < cp.terms.size(); ++i) {
    const auto& terms = cp.terms[i];
    for (const auto& t1 : terms) {
      const Matrix s1x = t1.s * x[i];
      const Matrix ws1 = w[i] * t1.s.adjoint();
      for (const auto& t2 : terms) {
        const Index d1 = t1.kept, e1 = t1.traced, d2 = t2.kept, e2 = t2.traced;
        const Matrix p = s1x * t2.s.adjoint();
        const Matrix q = t2.s * ws1;
        Matrix pm(d1 * d2, e1 * e2);
        for (Index a = 0; a < d1; ++a) {
          for (Index b = 0; b < d2; ++b) {
            for (Index t = 0; t < e1; ++t) {
              for (Index u = 0; u < e2; ++u) pm(a * d2 + b, t * e2 + u) = p(a * e1 + t, b * e2 + u);
            }
          }
        }
        Matrix qm(e1 * e2, d2 * d1);
        for (Index s = 0; s < d2; ++s) {
          for (Index a = 0; a < d1; ++a) {
            for (Index t = 0; t < e1; ++t) {
              for (Index u = 0; u < e2; ++u) qm(t * e2 + u, s * d1 + a) = q(s * e2 + u, a * e1 + t);
            }
          }
        }
        const Matrix tt = pm * qm;
        const auto& basis1 = *cp.bases[t1.constraint];
        const auto& basis2 = *cp.bases[t2.constraint];
        const Index o1 = cp.offsets[t1.constraint], o2 = cp.offsets[t2.constraint];
        const double scale = t1.coeff * t2.coeff;
        for (std::size_t k = 0; k < basis1.size(); ++k) {
          for (std::size_t l = 0; l < basis2.size(); ++l) {
            Complex acc = 0.0;
            for (const auto& ek : basis1[k]) {
              for (const auto& el : basis2[l]) {
                // ek: (a, p), el: (q, s)
                acc += ek.value * el.value * tt(ek.col * d2 + el.row, el.col * d1 + ek.row);
              }
            }
            m(o1 + static_cast<Index>(k), o2 + static_cast<Index>(l)) += scale * acc.real();
          }
        }
      }
    }
  }
  return (m + m.transpose()) / 2.0;
}

double max_step(const Matrix& x, const Matrix& dx) {
  Eigen::LLT<Matrix> llt(x);
  Matrix inv_l = llt.matrixL().solve(Matrix::Identity(x.rows(), x.cols()));
  const double lmin = min_eigenvalue(Matrix(inv_l * dx * inv_l.adjoint()));
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double max_step(const std::vector<Matrix>& x, const std::vector<Matrix>& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) a = std::min(a, max_step(x[i], dx[i]));
  return a;
}

double inner(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] * b[i]).trace().real();
  return s;
}

double frob(const std::vector<Matrix>& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

// Solves the (possibly range-reduced) Schur system.
class SchurSolver {
 public:
  SchurSolver(const RealMatrix& m, const RealMatrix* range) : range_(range) {
    if (range_) {
      reduced_ = range_->transpose() * m * *range_;
    } else {
      reduced_ = m;
    }
    const double scale = std::max(1.0, reduced_.diagonal().cwiseAbs().maxCoeff());
    llt_.compute(reduced_);
    if (llt_.info() != Eigen::Success) {
      reduced_.diagonal().array() += 1e-14 * scale;
      ldlt_.compute(reduced_);
      use_ldlt_ = true;
    }
  }

  RealVec solve(const RealVec& rhs) const {
    const RealVec r = range_ ? RealVec(range_->transpose() * rhs) : rhs;
    RealVec z = use_ldlt_ ? RealVec(ldlt_.solve(r)) : RealVec(llt_.solve(r));
    return range_ ? RealVec(*range_ * z) : z;
  }

 private:
  const RealMatrix* range_;
  RealMatrix reduced_;
  Eigen::LLT<RealMatrix> llt_;
  Eigen::LDLT<RealMatrix> ldlt_;
  bool use_ldlt_ = false;
};

DualCertificate to_certificate(const Problem& p, const Compiled& cp, const RealVec& y, double value) {
  DualCertificate cert;
  const auto ym = multipliers(cp, y);
  for (std::size_t c = 0; c < ym.size(); ++c) cert.multipliers[p.constraints()[c].name] = hermitian_part(ym[c]);
  cert.claimed_value = value;
  return cert;
}

}  // namespace

Solution solve(const Problem& problem, const Options& opt) {
  const Compiled cp = compile(problem);
  const std::size_t nb = cp.block_dims.size();
  Solution sol;

  std::vector<Matrix> ident(nb);
  for (std::size_t i = 0; i < nb; ++i) ident[i] = Matrix::Identity(cp.block_dims[i], cp.block_dims[i]);

  // Gram matrix: consistency, rank and starting scale.
  const RealMatrix gram = schur(cp, ident, ident);
  RealMatrix range;
  bool reduced = false;
  if (cp.m > 0) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
    const double top = std::max(1.0, es.eigenvalues().maxCoeff());
    const double cut = 1e-10 * top;
    Index rank = 0;
    for (Index k = 0; k < cp.m; ++k) rank += es.eigenvalues()(k) > cut;
    if (rank < cp.m) {
      reduced = true;
      range = es.eigenvectors().rightCols(rank);
      const RealVec proj = range * (range.transpose() * cp.b);
      if ((cp.b - proj).norm() > 1e-8 * (1.0 + cp.b.norm())) {
        sol.status = Status::infeasible;
        sol.message = "linear constraints are inconsistent";
        return sol;
      }
    }
  }

  const double norm_b = cp.b.norm();
  const double norm_c = frob(cp.c);
  double xi = 10.0, eta = 10.0;
  for (std::size_t i = 0; i < nb; ++i) {
    const double n = static_cast<double>(cp.block_dims[i]);
    xi = std::max(xi, std::sqrt(n));
    eta = std::max({eta, std::sqrt(n), cp.c[i].norm()});
  }
  for (Index k = 0; k < cp.m; ++k) {
    const double ak = std::sqrt(std::max(gram(k, k), 0.0));
    double nmax = 0.0;
    for (auto d : cp.block_dims) nmax = std::max(nmax, static_cast<double>(d));
    xi = std::max(xi, nmax * (1.0 + std::abs(cp.b(k))) / (1.0 + ak));
    eta = std::max(eta, ak);
  }

  std::vector<Matrix> x(nb), z(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    x[i] = xi * ident[i];
    z[i] = eta * ident[i];
  }
  RealVec y = RealVec::Zero(cp.m);
  const double n_total = static_cast<double>(cp.n_total);
  int stalls = 0;

  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    sol.iterations = iter;
    const RealVec rp = cp.b - apply_a(cp, x);
    const auto aty = apply_at(cp, y);
    std::vector<Matrix> rd(nb);
    for (std::size_t i = 0; i < nb; ++i) rd[i] = aty[i] - cp.c[i] - z[i];
    const double pobj = inner(cp.c, x) + problem.offset();
    const double dobj = cp.b.dot(y) + problem.offset();
    const double mu = inner(x, z) / n_total;

    sol.residuals.primal = rp.norm() / (1.0 + norm_b);
    sol.residuals.dual = frob(rd) / (1.0 + norm_c);
    sol.residuals.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.primal_value = pobj;
    sol.dual_value = dobj;
    if (opt.verbose) {
      std::fprintf(stderr, "%3d pobj %+.10e dobj %+.10e rp %.2e rd %.2e gap %.2e mu %.2e\n", iter, pobj, dobj,
                   sol.residuals.primal, sol.residuals.dual, sol.residuals.gap, mu);
    }

    if (sol.residuals.primal <= opt.feasibility_tol && sol.residuals.dual <= opt.feasibility_tol &&
        sol.residuals.gap <= opt.gap_tol) {
      sol.status = Status::converged;
      break;
    }

    // Farkas-type certificates once the iterates blow up.
    const double by = cp.b.dot(y);
    if (y.norm() > 1e8 && by < 0.0) {
      double lmin = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < nb; ++i) lmin = std::min(lmin, min_eigenvalue(aty[i]) / -by);
      if (lmin > -1e-6) {
        sol.status = Status::infeasible;
        sol.message = "dual ray certifies primal infeasibility";
        break;
      }
    }
    const double cx = inner(cp.c, x);
    if (frob(x) > 1e8 && cx > 0.0) {
      if (apply_a(cp, x).norm() / cx < 1e-6) {
        sol.status = Status::unbounded;
        sol.message = "primal ray with positive objective";
        break;
      }
    }
    if (iter == opt.max_iterations) {
      sol.status = Status::max_iterations;
      break;
    }

    std::vector<Matrix> w(nb);
    for (std::size_t i = 0; i < nb; ++i) {
      Eigen::LLT<Matrix> llt(z[i]);
      w[i] = hermitian_part(Matrix(llt.solve(ident[i])));
    }
    const SchurSolver schur_solver(schur(cp, x, w), reduced ? &range : nullptr);

    auto direction = [&](double sigma_mu, const std::vector<Matrix>* corr, std::vector<Matrix>& dx,
                         RealVec& dy, std::vector<Matrix>& dz) {
      std::vector<Matrix> g(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        g[i] = sigma_mu * w[i] - x[i] - x[i] * rd[i] * w[i];
        if (corr) g[i] -= (*corr)[i];
        g[i] = hermitian_part(g[i]);
      }
      dy = schur_solver.solve(apply_a(cp, g) - rp);
      dz = apply_at(cp, dy);
      dx.resize(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        dz[i] += rd[i];
        Matrix raw = sigma_mu * w[i] - x[i] - x[i] * dz[i] * w[i];
        if (corr) raw -= (*corr)[i];
        dx[i] = hermitian_part(raw);
      }
    };

    std::vector<Matrix> dxp, dzp, dx, dz;
    RealVec dyp, dy;
    direction(0.0, nullptr, dxp, dyp, dzp);
    const double ap = std::min(1.0, max_step(x, dxp));
    const double ad = std::min(1.0, max_step(z, dzp));
    std::vector<Matrix> xa(nb), za(nb);
    for (std::size_t i = 0; i < nb; ++i) {
      xa[i] = x[i] + ap * dxp[i];
      za[i] = z[i] + ad * dzp[i];
    }
    const double mu_aff = inner(xa, za) / n_total;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    std::vector<Matrix> corr(nb);
    for (std::size_t i = 0; i < nb; ++i) corr[i] = dxp[i] * dzp[i] * w[i];
    direction(sigma * mu, &corr, dx, dy, dz);

    const double gamma = std::max(opt.step_fraction, 0.9 + 0.09 * std::min(ap, ad));
    const double alpha_p = std::min(1.0, gamma * max_step(x, dx));
    const double alpha_d = std::min(1.0, gamma * max_step(z, dz));
    for (std::size_t i = 0; i < nb; ++i) {
      x[i] = hermitian_part(Matrix(x[i] + alpha_p * dx[i]));
      z[i] = hermitian_part(Matrix(z[i] + alpha_d * dz[i]));
    }
    y += alpha_d * dy;

    stalls = (alpha_p < 1e-10 && alpha_d < 1e-10) ? stalls + 1 : 0;
    if (stalls >= 5) {
      sol.status = Status::max_iterations;
      sol.message = "step length stalled";
      break;
    }
  }

  sol.primal_blocks = x;
  sol.dual_slacks = z;
  sol.dual = to_certificate(problem, cp, y, sol.dual_value);
  if (sol.message.empty()) sol.message = to_string(sol.status);
  return sol;
}

DualReport verify_dual(const Problem& problem, const DualCertificate& cert, double tol) {
  problem.validate();
  std::vector<Matrix> y;
  for (std::size_t c = 0; c < problem.constraints().size(); ++c) {
    const auto& con = problem.constraints()[c];
    auto it = cert.multipliers.find(con.name);
    if (it == cert.multipliers.end()) {
      throw std::invalid_argument("verify_dual: missing multiplier for constraint '" + con.name + "'");
    }
    if (it->second.rows() != con.rhs.rows() || it->second.cols() != con.rhs.cols()) {
      throw std::invalid_argument("verify_dual: multiplier shape mismatch for '" + con.name + "'");
    }
    if (!is_hermitian(it->second, 1e-9)) {
      throw std::invalid_argument("verify_dual: multiplier for '" + con.name + "' is not Hermitian");
    }
    y.push_back(hermitian_part(it->second));
  }
  if (cert.multipliers.size() != y.size()) throw std::invalid_argument("verify_dual: unknown multiplier names");

  DualReport report;
  report.feasible = true;
  for (std::size_t i = 0; i < problem.blocks().size(); ++i) {
    const double lmin = min_eigenvalue(Matrix(problem.adjoint_block(i, y) - problem.objective()[i]));
    report.block_min_eigenvalues.push_back(lmin);
    if (lmin < -tol) report.feasible = false;
  }
  report.bound = problem.offset();
  for (std::size_t c = 0; c < y.size(); ++c) {
    report.bound += (y[c] * problem.constraints()[c].rhs).trace().real();
  }
  return report;
}

double duality_gap(const Problem& problem, const Solution& solution, const DualCertificate& cert, double tol) {
  if (!solution.converged()) throw std::invalid_argument("duality_gap: solution did not converge");
  const DualReport r = verify_dual(problem, cert, tol);
  if (!r.feasible) throw std::invalid_argument("duality_gap: certificate is not dual feasible");
  return r.bound - solution.primal_value;
}

}  // namespace qcf::sdp
