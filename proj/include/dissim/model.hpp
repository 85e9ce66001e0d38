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

#ifndef DISSIM_MODEL_HPP
#define DISSIM_MODEL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dissim/common.hpp"

namespace dissim {

/// Lattice of num_sites subsystems, each of local dimension local_dim,
/// with interactions acting on at most `locality` sites.
///
/// Site 0 is the leftmost (most significant) tensor factor; a global basis
/// index decomposes into base-d digits with site 0 first. This fixes the
/// bit layout for all embeddings.
struct SystemShape {
  int num_sites = 1;
  int local_dim = 2;
  int locality = 1;

  SystemShape() = default;
  SystemShape(int n, int d, int k);

  /// Total Hilbert dimension d^N. Construction rejects overflowing values.
  Index dim() const { return dim_; }

 private:
  Index dim_ = 2;
};

/// Strictly increasing set of site indices a local operator acts on.
struct SupportSet {
  std::vector<int> sites;

  SupportSet() = default;
  SupportSet(std::initializer_list<int> s) : sites(s) { validate_order(); }
  explicit SupportSet(std::vector<int> s) : sites(std::move(s)) { validate_order(); }

  int size() const { return static_cast<int>(sites.size()); }
  bool disjoint_from(const SupportSet& other) const;
  void validate_against(const SystemShape& shape) const;

 private:
  void validate_order() const;
};

/// Scalar control f(t) multiplying a fixed operator, total on [0, inf).
///
/// Piecewise-constant schedules hold the value of the breakpoint at or
/// before t (clamped to the first value before the first breakpoint);
/// sampled-smooth schedules interpolate linearly and clamp outside the
/// breakpoint range. The last segment always extends to +inf.
class Schedule {
 public:
  enum class Kind { Constant, PiecewiseConstant, SampledSmooth };

  static Schedule constant(double value);
  static Schedule piecewise_constant(std::vector<std::pair<double, double>> breakpoints);
  static Schedule sampled_smooth(std::vector<std::pair<double, double>> breakpoints);

  Kind kind() const { return kind_; }
  const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }

  double value_at(double t) const;

  /// sup over [t0, t1] of |f|. Exact for constant/piecewise-constant and for
  /// linear interpolation (attained at breakpoints/endpoints); a 1000-point
  /// grid is scanned as well, which is conservative for monotone segments.
  double sup_abs(double t0, double t1) const;

  /// Mean of f over [s, t]; closed form per segment.
  double mean(double s, double t) const;
  /// Mean of f^2 over [s, t]; closed form per segment.
  double mean_sq(double s, double t) const;

  /// True for Constant and PiecewiseConstant kinds.
  bool piecewise_const() const { return kind_ != Kind::SampledSmooth; }

  /// Breakpoint times strictly inside (s, t), for segment decompositions.
  std::vector<double> interior_breakpoints(double s, double t) const;

 private:
  Kind kind_ = Kind::Constant;
  std::vector<std::pair<double, double>> breakpoints_;  // (time, value)

  void validate() const;
  // Integral of f over one already-smooth segment [u, v].
  double segment_integral(double u, double v, bool squared) const;
};

/// Dense operator on the d^|support| local space, plus an optional Pauli
/// label for qubit systems. Hermiticity is enforced when flagged (Hamiltonian
/// terms), residual tolerance 1e-12.
struct LocalOperator {
  SupportSet support;
  CMatrix matrix;
  std::optional<std::string> pauli_label;  // d = 2 only
  bool hermitian_flag = false;

  LocalOperator() = default;
  LocalOperator(SupportSet sup, CMatrix m, bool hermitian = false,
                std::optional<std::string> label = std::nullopt);

  void validate_against(const SystemShape& shape) const;
};

/// One strictly k-local generator term: -i[H, .] + sum_mu D[L_mu] with
/// D[X](rho) = 2 X rho X^dag - {X^dag X, rho}, every operator scaled by its
/// schedule, X_t = f(t) X.
struct LindbladTerm {
  SupportSet support;
  std::optional<std::pair<LocalOperator, Schedule>> hamiltonian;
  std::vector<std::pair<LocalOperator, Schedule>> jump_ops;

  void validate_against(const SystemShape& shape) const;
  /// d^|support|, the local Hilbert dimension of this term.
  Index local_dim(const SystemShape& shape) const;
};

/// Sum of strictly k-local Lindblad-form terms over a fixed lattice.
class KLocalLiouvillian {
 public:
  KLocalLiouvillian(SystemShape shape, std::vector<LindbladTerm> terms,
                    std::vector<int> term_order = {});

  const SystemShape& shape() const { return shape_; }
  const std::vector<LindbladTerm>& terms() const { return terms_; }
  /// Permutation defining the product order; defaults to input order.
  const std::vector<int>& term_order() const { return term_order_; }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  /// Construction-time warnings (e.g. K > N^k); never fatal.
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool all_schedules_piecewise_constant() const;

 private:
  SystemShape shape_;
  std::vector<LindbladTerm> terms_;
  std::vector<int> term_order_;
  std::vector<std::string> warnings_;
};

/// Positive unit-trace operator on the full N-site space.
class DensityMatrix {
 public:
  /// Validates trace (1e-10), hermiticity (1e-12) and, when check_positive,
  /// min eigenvalue >= -1e-9.
  explicit DensityMatrix(CMatrix m, bool check_positive = true);

  /// Pure state |psi><psi| from a (normalized on entry) state vector.
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  CMatrix matrix_;
};

// ---------------------------------------------------------------------------
// Operations

/// Embed a local operator into the full space: P^dag (M (x) 1_rest) P for the
/// site-sorting permutation P. Acts as M on the support sites, identity on
/// the complement.
CMatrix embed_local(const LocalOperator& op, const SystemShape& shape);

/// Operators of a term at time t, each scaled by its schedule value.
struct EvaluatedTerm {
  std::optional<CMatrix> hamiltonian;
  std::vector<CMatrix> jumps;
};
EvaluatedTerm evaluate_term(const LindbladTerm& term, double t);

/// a = max over terms and their operators of sup_{t in [t0,t1]} |f(t)| * ||M||_inf.
/// Exact for constant/piecewise-constant schedules; breakpoint+grid scan for
/// sampled-smooth ones (conservative for monotone segments). Empty model: 0.
double term_sup_norm_a(const KLocalLiouvillian& liou, double t0, double t1);

/// Same sup, restricted to a single term.
double term_sup_norm_a(const LindbladTerm& term, double t0, double t1);

// Index bookkeeping shared by embeddings and local channel application:
// splits a global basis index into (local digits on the support, rest digits).
class SupportIndexer {
 public:
  SupportIndexer(const SupportSet& support, const SystemShape& shape);

  Index local_dim() const { return local_dim_; }
  Index rest_dim() const { return rest_dim_; }
  /// Global index from (local part, rest part).
  Index global_index(Index local, Index rest) const { return table_[rest * local_dim_ + local]; }

 private:
  Index local_dim_ = 1;
  Index rest_dim_ = 1;
  std::vector<Index> table_;
};

}  // namespace dissim

#endif  // DISSIM_MODEL_HPP
