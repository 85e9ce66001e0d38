// Copyright 2026 The dissim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dissim/superop.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace dissim {

SuperOp::SuperOp(CMatrix m) : mat(std::move(m)) {
  if (mat.rows() != mat.cols()) throw ValidationError("SuperOp: matrix must be square");
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(mat.rows()))));
  if (d * d != mat.rows()) throw ValidationError("SuperOp: dimension is not a perfect square");
  op_dim_ = d;
}

SuperOp SuperOp::identity(Index op_dim) {
  return SuperOp(CMatrix::Identity(op_dim * op_dim, op_dim * op_dim));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix hamiltonian_superop_part(const CMatrix& h) {
  const Index d = h.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  return Complex(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
}

CMatrix dissipator_superop_part(const CMatrix& jump) {
  const Index d = jump.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix ldl = jump.adjoint() * jump;
  return 2.0 * kron(jump.conjugate(), jump) - kron(id, ldl) - kron(ldl.transpose(), id);
}

CMatrix matrix_exponential(const CMatrix& a) { return a.exp(); }

namespace {

// Unscaled superoperator pieces of one term, on either the local or the
// global space; schedules multiply these as scalar coefficients.
struct TermParts {
  CMatrix hamiltonian;          // empty if absent
  std::vector<CMatrix> jumps;   // dissipator parts
};

TermParts build_term_parts(const LindbladTerm& term, const SystemShape& shape, bool global) {
  TermParts parts;
  if (term.hamiltonian) {
    const CMatrix h = global ? embed_local(term.hamiltonian->first, shape)
                             : term.hamiltonian->first.matrix;
    parts.hamiltonian = hamiltonian_superop_part(h);
  }
  parts.jumps.reserve(term.jump_ops.size());
  for (const auto& [op, sched] : term.jump_ops) {
    (void)sched;
    const CMatrix l = global ? embed_local(op, shape) : op.matrix;
    parts.jumps.push_back(dissipator_superop_part(l));
  }
  return parts;
}

void accumulate_term_at(CMatrix& acc, const TermParts& parts, const LindbladTerm& term,
                        double t) {
  if (term.hamiltonian) {
    acc += term.hamiltonian->second.value_at(t) * parts.hamiltonian;
  }
  for (std::size_t mu = 0; mu < term.jump_ops.size(); ++mu) {
    const double f = term.jump_ops[mu].second.value_at(t);
    acc += (f * f) * parts.jumps[mu];
  }
}

// Merged schedule breakpoints strictly inside (s, t), plus the endpoints.
std::vector<double> merged_grid(const KLocalLiouvillian& liou, double s, double t) {
  std::set<double> pts;
  pts.insert(s);
  pts.insert(t);
  for (const auto& term : liou.terms()) {
    if (term.hamiltonian) {
      for (double b : term.hamiltonian->second.interior_breakpoints(s, t)) pts.insert(b);
    }
    for (const auto& [op, sched] : term.jump_ops) {
      (void)op;
      for (double b : sched.interior_breakpoints(s, t)) pts.insert(b);
    }
  }
  return std::vector<double>(pts.begin(), pts.end());
}

using Deriv = std::function<CMatrix(double, const CMatrix&)>;

// Dormand-Prince 5(4) with adaptive step size; integrates from ta to tb.
void rk45_integrate(CMatrix& y, double ta, double tb, double tol, const Deriv& f) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  if (tb <= ta) return;
  double t = ta;
  double h = (tb - ta) / 16.0;
  const double hmin = (tb - ta) * 1e-14;
  CMatrix k1 = f(t, y);
  int guard = 0;
  while (t < tb) {
    if (++guard > 1000000) throw ValidationError("rk45: step count runaway");
    h = std::min(h, tb - t);
    const CMatrix k2 = f(t + c2 * h, y + h * (a21 * k1));
    const CMatrix k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const CMatrix k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const CMatrix k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const CMatrix k6 =
        f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const CMatrix y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const CMatrix k7 = f(t + h, y5);
    const CMatrix err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = tol + tol * std::max(max_abs(y), max_abs(y5));
    const double err_ratio = max_abs(err) / scale;
    if (err_ratio <= 1.0 || h <= hmin) {
      t += h;
      y = y5;
      k1 = k7;  // first-same-as-last
    }
    const double factor = (err_ratio > 0.0)
                              ? 0.9 * std::pow(err_ratio, -0.2)
                              : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
}

Propagator propagate(const KLocalLiouvillian& liou, double s, double t, double tol,
                     bool backward) {
  if (s < 0.0 || t < s) {
    throw ValidationError("propagator: needs 0 <= s <= t (backward evolution has its own entry)");
  }
  const Index dim = liou.shape().dim();
  const Index sdim = dim * dim;
  if (t == s || liou.terms().empty()) {
    return Propagator{SuperOp::identity(dim), PropagatorMethod::ProductOfExponentials};
  }

  std::vector<TermParts> parts;
  parts.reserve(liou.terms().size());
  for (const auto& term : liou.terms()) parts.push_back(build_term_parts(term, liou.shape(), true));

  auto liou_at = [&](double u) {
    CMatrix acc = CMatrix::Zero(sdim, sdim);
    for (std::size_t i = 0; i < liou.terms().size(); ++i) {
      accumulate_term_at(acc, parts[i], liou.terms()[i], u);
    }
    return acc;
  };

  if (liou.all_schedules_piecewise_constant()) {
    const std::vector<double> grid = merged_grid(liou, s, t);
    CMatrix acc = CMatrix::Identity(sdim, sdim);
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
      const double u0 = grid[j];
      const double u1 = grid[j + 1];
      const CMatrix lmat = liou_at(0.5 * (u0 + u1));
      const CMatrix step = matrix_exponential((backward ? -(u1 - u0) : (u1 - u0)) * lmat);
      if (backward) {
        acc = acc * step;  // reversely ordered product integral
      } else {
        acc = step * acc;
      }
    }
    return Propagator{SuperOp(std::move(acc)), PropagatorMethod::ProductOfExponentials};
  }

  // Smooth (or mixed) schedules: integrate segment by segment so breakpoint
  // kinks never sit inside a Runge-Kutta step.
  CMatrix y = CMatrix::Identity(sdim, sdim);
  const std::vector<double> grid = merged_grid(liou, s, t);
  Deriv f = backward ? Deriv([&](double u, const CMatrix& m) { return CMatrix(-m * liou_at(u)); })
                     : Deriv([&](double u, const CMatrix& m) { return CMatrix(liou_at(u) * m); });
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    rk45_integrate(y, grid[j], grid[j + 1], tol, f);
  }
  return Propagator{SuperOp(std::move(y)), PropagatorMethod::OdeRk45};
}

}  // namespace

SuperOp liouvillian_matrix(const KLocalLiouvillian& liou, double t) {
  if (t < 0.0) throw ValidationError("liouvillian_matrix: t must be >= 0");
  const Index sdim = liou.shape().dim() * liou.shape().dim();
  CMatrix acc = CMatrix::Zero(sdim, sdim);
  for (const auto& term : liou.terms()) {
    const TermParts parts = build_term_parts(term, liou.shape(), true);
    accumulate_term_at(acc, parts, term, t);
  }
  return SuperOp(std::move(acc));
}

SuperOp term_liouvillian_local(const LindbladTerm& term, const SystemShape& shape, double t) {
  const Index dloc = term.local_dim(shape);
  CMatrix acc = CMatrix::Zero(dloc * dloc, dloc * dloc);
  const TermParts parts = build_term_parts(term, shape, false);
  accumulate_term_at(acc, parts, term, t);
  return SuperOp(std::move(acc));
}

Propagator exact_propagator(const KLocalLiouvillian& liou, double s, double t, double tol) {
  return propagate(liou, s, t, tol, false);
}

Propagator inverse_propagator(const KLocalLiouvillian& liou, double s, double t, double tol) {
  return propagate(liou, s, t, tol, true);
}

namespace {

AverageLiouvillian average_impl(const std::vector<LindbladTerm>& terms, const SystemShape& shape,
                                bool global, double s, double t, bool validate) {
  if (t <= s) throw ValidationError("average_liouvillian: needs t > s");
  AverageLiouvillian out;
  out.t_start = s;
  out.t_end = t;
  Index dim = 1;
  if (global) {
    dim = shape.dim();
  } else {
    dim = terms.front().local_dim(shape);
  }
  CMatrix acc = CMatrix::Zero(dim * dim, dim * dim);
  for (const auto& term : terms) {
    const TermParts parts = build_term_parts(term, shape, global);
    AverageLiouvillian::TermAverages avg;
    if (term.hamiltonian) {
      avg.hamiltonian_mean = term.hamiltonian->second.mean(s, t);
      acc += avg.hamiltonian_mean * parts.hamiltonian;
    }
    for (std::size_t mu = 0; mu < term.jump_ops.size(); ++mu) {
      const double msq = term.jump_ops[mu].second.mean_sq(s, t);
      avg.jump_mean_sq.push_back(msq);
      acc += msq * parts.jumps[mu];
    }
    out.term_averages.push_back(std::move(avg));
  }
  out.matrix = SuperOp(std::move(acc));

  if (validate) {
    const double probe_dt = 1e-3;
    const SuperOp probe(matrix_exponential(probe_dt * out.matrix.mat));
    const CptDiagnostics diag = check_cpt(probe, 0.0);
    if (diag.choi_min_eig < -1e-9 || diag.trace_preservation_residual > 1e-10) {
      throw ValidationError("average_liouvillian: averaged generator failed the CPT probe");
    }
  }
  return out;
}

}  // namespace

AverageLiouvillian average_liouvillian(const KLocalLiouvillian& liou, double s, double t,
                                       bool validate) {
  if (liou.terms().empty()) {
    AverageLiouvillian out;
    out.t_start = s;
    out.t_end = t;
    const Index dim = liou.shape().dim();
    out.matrix = SuperOp(CMatrix::Zero(dim * dim, dim * dim));
    return out;
  }
  return average_impl(liou.terms(), liou.shape(), true, s, t, validate);
}

AverageLiouvillian average_liouvillian(const LindbladTerm& term, const SystemShape& shape,
                                       double s, double t, bool validate) {
  return average_impl({term}, shape, false, s, t, validate);
}

CMatrix apply_superop(const SuperOp& s, const CMatrix& rho) {
  if (rho.rows() != s.op_dim() || rho.cols() != s.op_dim()) {
    throw ValidationError("apply_superop: dimension mismatch");
  }
  const CVector out = s.mat * vec(rho);
  return unvec(out, s.op_dim());
}

DensityMatrix apply_superop(const SuperOp& s, const DensityMatrix& rho) {
  CMatrix out = apply_superop(s, rho.matrix());
  // Re-hermitize rounding dust before validation.
  out = 0.5 * (out + out.adjoint().eval());
  return DensityMatrix(std::move(out));
}

CMatrix choi_matrix(const SuperOp& s) {
  const Index d = s.op_dim();
  CMatrix choi(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index ip = 0; ip < d; ++ip) {
      for (Index j = 0; j < d; ++j) {
        for (Index jp = 0; jp < d; ++jp) {
          choi(i * d + ip, j * d + jp) = s.mat(ip + d * jp, i + d * j);
        }
      }
    }
  }
  return choi;
}

CptDiagnostics check_cpt(const SuperOp& s, double tol) {
  CptDiagnostics diag;
  const Index d = s.op_dim();
  const CMatrix choi = choi_matrix(s);
  diag.choi_hermiticity_residual = max_abs(choi - choi.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (choi + choi.adjoint()),
                                            Eigen::EigenvaluesOnly);
  diag.choi_min_eig = es.eigenvalues().minCoeff();

  // tr_out: sum over the output factor (least significant index).
  CMatrix tr_out = CMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      Complex acc(0.0, 0.0);
      for (Index ip = 0; ip < d; ++ip) acc += choi(i * d + ip, j * d + ip);
      tr_out(i, j) = acc;
    }
  }
  diag.trace_preservation_residual = spectral_norm(tr_out - CMatrix::Identity(d, d));
  diag.completely_positive = diag.choi_min_eig >= -tol;
  diag.trace_preserving = diag.trace_preservation_residual <= tol;
  diag.ok = diag.completely_positive && diag.trace_preserving &&
            diag.choi_hermiticity_residual <= std::max(tol, 1e-12);
  return diag;
}

SuperOp embed_superop(const CMatrix& local_superop, const SupportSet& support,
                      const SystemShape& shape) {
  const SupportIndexer idx(support, shape);
  const Index dloc = idx.local_dim();
  const Index drest = idx.rest_dim();
  if (local_superop.rows() != dloc * dloc || local_superop.cols() != dloc * dloc) {
    throw ValidationError("embed_superop: local superoperator dimension mismatch");
  }
  const Index dim = shape.dim();
  CMatrix out = CMatrix::Zero(dim * dim, dim * dim);
  for (Index rr = 0; rr < drest; ++rr) {      // rest part of the row index
    for (Index rc = 0; rc < drest; ++rc) {    // rest part of the column index
      for (Index lor = 0; lor < dloc; ++lor) {
        for (Index loc_ = 0; loc_ < dloc; ++loc_) {
          const Index out_row = idx.global_index(lor, rr) + dim * idx.global_index(loc_, rc);
          for (Index lir = 0; lir < dloc; ++lir) {
            for (Index lic = 0; lic < dloc; ++lic) {
              const Complex v = local_superop(lor + dloc * loc_, lir + dloc * lic);
              if (v != Complex(0.0, 0.0)) {
                const Index in_col = idx.global_index(lir, rr) + dim * idx.global_index(lic, rc);
                out(out_row, in_col) = v;
              }
            }
          }
        }
      }
    }
  }
  return SuperOp(std::move(out));
}

}  // namespace dissim
