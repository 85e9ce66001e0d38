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

#ifndef DISSIM_SUPEROP_HPP
#define DISSIM_SUPEROP_HPP

#include <vector>

#include "dissim/model.hpp"

namespace dissim {

/// Dense superoperator acting on column-stacked operators:
/// vec(A rho B) = (B^T (x) A) vec(rho). The convention is fixed project-wide;
/// every construction in this module emits column-stacked matrices.
struct SuperOp {
  CMatrix mat;  // D^2 x D^2

  SuperOp() = default;
  explicit SuperOp(CMatrix m);

  Index op_dim() const { return op_dim_; }
  static SuperOp identity(Index op_dim);

 private:
  Index op_dim_ = 0;
};

inline CVector vec(const CMatrix& rho) {
  return Eigen::Map<const CVector>(rho.data(), rho.size());
}

inline CMatrix unvec(const CVector& v, Index dim) {
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// -i(1(x)H - H^T(x)1) + sum_mu (2 conj(L)(x)L - 1(x)L^dag L - (L^dag L)^T(x)1)
/// assembled from unscaled operators; schedules enter as coefficients
/// (linear for the Hamiltonian, squared for the dissipators).
CMatrix hamiltonian_superop_part(const CMatrix& h);
CMatrix dissipator_superop_part(const CMatrix& jump);

/// Full Liouvillian matrix at time t on the global space.
SuperOp liouvillian_matrix(const KLocalLiouvillian& liou, double t);

/// One term's Liouvillian at time t on its own d^|support| local space.
SuperOp term_liouvillian_local(const LindbladTerm& term, const SystemShape& shape, double t);

enum class PropagatorMethod { ProductOfExponentials, OdeRk45 };

struct Propagator {
  SuperOp superop;
  PropagatorMethod method = PropagatorMethod::ProductOfExponentials;
};

/// Channel T(t,s) solving dT/dt = L_t T, T(s,s) = id. Piecewise-constant
/// schedules take the exact route (reverse-ordered product of matrix
/// exponentials over constancy segments); otherwise adaptive Runge-Kutta
/// with local tolerance tol.
Propagator exact_propagator(const KLocalLiouvillian& liou, double s, double t,
                            double tol = 1e-10);

/// T^-(t,s) solving dT^-/dt = -T^- L_t, T^-(s,s) = id; the inverse of T(t,s).
Propagator inverse_propagator(const KLocalLiouvillian& liou, double s, double t,
                              double tol = 1e-10);

/// Time average of the Liouvillian matrix over (s, t). The dissipator part of
/// a scheduled jump operator averages the squared schedule; the Hamiltonian
/// part averages the schedule itself.
struct AverageLiouvillian {
  double t_start = 0.0;
  double t_end = 0.0;
  SuperOp matrix;

  /// Averaged coefficients actually used, per term.
  struct TermAverages {
    double hamiltonian_mean = 0.0;       // mean of f
    std::vector<double> jump_mean_sq;    // mean of f^2 per jump operator
  };
  std::vector<TermAverages> term_averages;
};

AverageLiouvillian average_liouvillian(const KLocalLiouvillian& liou, double s, double t,
                                       bool validate = true);
/// Single-term variant on the term's local space.
AverageLiouvillian average_liouvillian(const LindbladTerm& term, const SystemShape& shape,
                                       double s, double t, bool validate = true);

/// un-stack(S vec(rho)); no positivity enforcement (difference maps welcome).
CMatrix apply_superop(const SuperOp& s, const CMatrix& rho);
DensityMatrix apply_superop(const SuperOp& s, const DensityMatrix& rho);

/// Scaling-and-squaring matrix exponential (Pade approximant).
CMatrix matrix_exponential(const CMatrix& a);

/// Choi matrix in the column-stacking convention, input copy as most
/// significant factor: C[(i,i'),(j,j')] = S[(i',j'),(i,j)].
CMatrix choi_matrix(const SuperOp& s);

struct CptDiagnostics {
  double choi_min_eig = 0.0;
  double trace_preservation_residual = 0.0;
  double choi_hermiticity_residual = 0.0;
  bool completely_positive = false;
  bool trace_preserving = false;
  bool ok = false;
};

/// Choi positivity (min eigenvalue >= -tol) and trace-preservation residual
/// (<= tol) diagnostics.
CptDiagnostics check_cpt(const SuperOp& s, double tol);

/// Embed a local superoperator (acting on the support's d^{2|supp|} operator
/// space) into the global D^2 x D^2 superoperator.
SuperOp embed_superop(const CMatrix& local_superop, const SupportSet& support,
                      const SystemShape& shape);

}  // namespace dissim

#endif  // DISSIM_SUPEROP_HPP
