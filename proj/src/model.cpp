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

#include "dissim/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dissim {

double spectral_norm(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// SystemShape

SystemShape::SystemShape(int n, int d, int k) : num_sites(n), local_dim(d), locality(k) {
  if (n < 1) throw ValidationError("SystemShape: num_sites must be >= 1");
  if (d < 2) throw ValidationError("SystemShape: local_dim must be >= 2");
  if (k < 1 || k > n) throw ValidationError("SystemShape: locality must satisfy 1 <= k <= N");
  Index dim = 1;
  const Index max_dim = std::numeric_limits<Index>::max();
  for (int i = 0; i < n; ++i) {
    if (dim > max_dim / d) {
      throw ValidationError("SystemShape: d^N overflows the index width");
    }
    dim *= d;
  }
  dim_ = dim;
}

// ---------------------------------------------------------------------------
// SupportSet

void SupportSet::validate_order() const {
  for (std::size_t i = 0; i + 1 < sites.size(); ++i) {
    if (sites[i] >= sites[i + 1]) {
      throw ValidationError("SupportSet: sites must be strictly increasing (no duplicates)");
    }
  }
}

bool SupportSet::disjoint_from(const SupportSet& other) const {
  for (int s : sites) {
    if (std::binary_search(other.sites.begin(), other.sites.end(), s)) return false;
  }
  return true;
}

void SupportSet::validate_against(const SystemShape& shape) const {
  validate_order();
  for (int s : sites) {
    if (s < 0 || s >= shape.num_sites) {
      throw ValidationError("SupportSet: site " + std::to_string(s) + " outside [0, " +
                            std::to_string(shape.num_sites) + ")");
    }
  }
}

// ---------------------------------------------------------------------------
// Schedule

Schedule Schedule::constant(double value) {
  Schedule s;
  s.kind_ = Kind::Constant;
  s.breakpoints_ = {{0.0, value}};
  return s;
}

Schedule Schedule::piecewise_constant(std::vector<std::pair<double, double>> breakpoints) {
  Schedule s;
  s.kind_ = Kind::PiecewiseConstant;
  s.breakpoints_ = std::move(breakpoints);
  s.validate();
  return s;
}

Schedule Schedule::sampled_smooth(std::vector<std::pair<double, double>> breakpoints) {
  Schedule s;
  s.kind_ = Kind::SampledSmooth;
  s.breakpoints_ = std::move(breakpoints);
  s.validate();
  return s;
}

void Schedule::validate() const {
  if (breakpoints_.empty()) throw ValidationError("Schedule: needs at least one breakpoint");
  double prev = -1.0;
  for (const auto& [t, v] : breakpoints_) {
    (void)v;
    if (t < 0.0) throw ValidationError("Schedule: breakpoint times must be non-negative");
    if (t <= prev) throw ValidationError("Schedule: breakpoint times must be strictly increasing");
    prev = t;
  }
}

double Schedule::value_at(double t) const {
  if (kind_ == Kind::Constant) return breakpoints_.front().second;
  if (t <= breakpoints_.front().first) return breakpoints_.front().second;
  if (kind_ == Kind::PiecewiseConstant) {
    // Last breakpoint with time <= t.
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                               [](double x, const auto& bp) { return x < bp.first; });
    return std::prev(it)->second;
  }
  // Linear interpolation, clamped past the last breakpoint.
  if (t >= breakpoints_.back().first) return breakpoints_.back().second;
  auto hi = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                             [](double x, const auto& bp) { return x < bp.first; });
  auto lo = std::prev(hi);
  const double w = (t - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

double Schedule::sup_abs(double t0, double t1) const {
  if (t1 < t0) throw ValidationError("Schedule::sup_abs: needs t1 >= t0");
  double m = std::max(std::abs(value_at(t0)), std::abs(value_at(t1)));
  for (const auto& [t, v] : breakpoints_) {
    (void)v;
    if (t > t0 && t < t1) m = std::max(m, std::abs(value_at(t)));
  }
  if (kind_ == Kind::SampledSmooth && t1 > t0) {
    for (int i = 1; i < 1000; ++i) {
      const double t = t0 + (t1 - t0) * i / 1000.0;
      m = std::max(m, std::abs(value_at(t)));
    }
  }
  return m;
}

std::vector<double> Schedule::interior_breakpoints(double s, double t) const {
  std::vector<double> out;
  if (kind_ == Kind::Constant) return out;
  for (const auto& [bt, v] : breakpoints_) {
    (void)v;
    if (bt > s && bt < t) out.push_back(bt);
  }
  return out;
}

double Schedule::segment_integral(double u, double v, bool squared) const {
  // The schedule restricted to [u, v] is a single constant or linear piece.
  if (kind_ != Kind::SampledSmooth) {
    const double f = value_at(0.5 * (u + v));
    return (squared ? f * f : f) * (v - u);
  }
  const double fa = value_at(u);
  const double fb = value_at(v);
  if (!squared) return 0.5 * (fa + fb) * (v - u);
  // Integral of a linear function squared.
  return (fa * fa + fa * fb + fb * fb) / 3.0 * (v - u);
}

double Schedule::mean(double s, double t) const {
  if (t <= s) throw ValidationError("Schedule::mean: needs t > s");
  const std::vector<double> inner = interior_breakpoints(s, t);
  // A single constant segment averages to its value exactly.
  if (inner.empty() && kind_ != Kind::SampledSmooth) return value_at(0.5 * (s + t));
  double acc = 0.0;
  double prev = s;
  for (double b : inner) {
    acc += segment_integral(prev, b, false);
    prev = b;
  }
  acc += segment_integral(prev, t, false);
  return acc / (t - s);
}

double Schedule::mean_sq(double s, double t) const {
  if (t <= s) throw ValidationError("Schedule::mean_sq: needs t > s");
  const std::vector<double> inner = interior_breakpoints(s, t);
  if (inner.empty() && kind_ != Kind::SampledSmooth) {
    const double f = value_at(0.5 * (s + t));
    return f * f;
  }
  double acc = 0.0;
  double prev = s;
  for (double b : inner) {
    acc += segment_integral(prev, b, true);
    prev = b;
  }
  acc += segment_integral(prev, t, true);
  return acc / (t - s);
}

// ---------------------------------------------------------------------------
// LocalOperator / LindbladTerm

LocalOperator::LocalOperator(SupportSet sup, CMatrix m, bool hermitian,
                             std::optional<std::string> label)
    : support(std::move(sup)), matrix(std::move(m)), pauli_label(std::move(label)),
      hermitian_flag(hermitian) {
  if (matrix.rows() != matrix.cols()) {
    throw ValidationError("LocalOperator: matrix must be square");
  }
  if (hermitian_flag) {
    const double res = spectral_norm(matrix - matrix.adjoint());
    if (res > 1e-12) {
      throw ValidationError("LocalOperator: flagged hermitian but ||M - M^dag|| = " +
                            std::to_string(res));
    }
  }
}

void LocalOperator::validate_against(const SystemShape& shape) const {
  support.validate_against(shape);
  Index expect = 1;
  for (int i = 0; i < support.size(); ++i) expect *= shape.local_dim;
  if (matrix.rows() != expect) {
    throw ValidationError("LocalOperator: matrix dimension " + std::to_string(matrix.rows()) +
                          " does not match d^|support| = " + std::to_string(expect));
  }
}

void LindbladTerm::validate_against(const SystemShape& shape) const {
  support.validate_against(shape);
  if (support.size() > shape.locality) {
    throw ValidationError("LindbladTerm: support size " + std::to_string(support.size()) +
                          " exceeds locality k = " + std::to_string(shape.locality));
  }
  const Index dloc = local_dim(shape);
  if (hamiltonian) {
    if (hamiltonian->first.support.sites != support.sites) {
      throw ValidationError("LindbladTerm: hamiltonian support differs from term support");
    }
    if (!hamiltonian->first.hermitian_flag) {
      throw ValidationError("LindbladTerm: hamiltonian operator must be flagged hermitian");
    }
    hamiltonian->first.validate_against(shape);
  }
  // Up to the general Lindblad maximum d^(2|support|); the d^k normal-form
  // cap is reported by callers, not enforced here.
  if (static_cast<Index>(jump_ops.size()) > dloc * dloc) {
    throw ValidationError("LindbladTerm: more than d^(2|support|) jump operators");
  }
  for (const auto& [op, sched] : jump_ops) {
    (void)sched;
    if (op.support.sites != support.sites) {
      throw ValidationError("LindbladTerm: jump operator support differs from term support");
    }
    op.validate_against(shape);
  }
}

Index LindbladTerm::local_dim(const SystemShape& shape) const {
  Index d = 1;
  for (int i = 0; i < support.size(); ++i) d *= shape.local_dim;
  return d;
}

// ---------------------------------------------------------------------------
// KLocalLiouvillian

KLocalLiouvillian::KLocalLiouvillian(SystemShape shape, std::vector<LindbladTerm> terms,
                                     std::vector<int> term_order)
    : shape_(shape), terms_(std::move(terms)), term_order_(std::move(term_order)) {
  for (const auto& t : terms_) t.validate_against(shape_);
  if (term_order_.empty()) {
    term_order_.resize(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) term_order_[i] = static_cast<int>(i);
  }
  if (term_order_.size() != terms_.size()) {
    throw ValidationError("KLocalLiouvillian: term_order size mismatch");
  }
  std::vector<bool> seen(terms_.size(), false);
  for (int i : term_order_) {
    if (i < 0 || i >= static_cast<int>(terms_.size()) || seen[i]) {
      throw ValidationError("KLocalLiouvillian: term_order is not a permutation");
    }
    seen[i] = true;
  }
  const double max_terms = std::pow(static_cast<double>(shape_.num_sites), shape_.locality);
  if (static_cast<double>(terms_.size()) > max_terms) {
    warnings_.push_back("number of terms K = " + std::to_string(terms_.size()) +
                        " exceeds N^k = " + std::to_string(max_terms));
  }
  // The Lindblad normal form needs at most d^k jump operators per strictly
  // k-local term; redundant sets stay valid generators but are flagged.
  const double dk = std::pow(static_cast<double>(shape_.local_dim), shape_.locality);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (static_cast<double>(terms_[i].jump_ops.size()) > dk) {
      warnings_.push_back("term " + std::to_string(i) + " has " +
                          std::to_string(terms_[i].jump_ops.size()) +
                          " jump operators, above the d^k normal-form count");
    }
  }
}

bool KLocalLiouvillian::all_schedules_piecewise_constant() const {
  for (const auto& term : terms_) {
    if (term.hamiltonian && !term.hamiltonian->second.piecewise_const()) return false;
    for (const auto& [op, sched] : term.jump_ops) {
      (void)op;
      if (!sched.piecewise_const()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(CMatrix m, bool check_positive) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ValidationError("DensityMatrix: matrix must be square");
  }
  const double trace_res = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_res > 1e-10) {
    throw ValidationError("DensityMatrix: |trace - 1| = " + std::to_string(trace_res));
  }
  const double herm_res = max_abs(matrix_ - matrix_.adjoint());
  if (herm_res > 1e-12) {
    throw ValidationError("DensityMatrix: hermiticity residual " + std::to_string(herm_res));
  }
  if (check_positive) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (matrix_ + matrix_.adjoint()),
                                              Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-9) {
      throw ValidationError("DensityMatrix: min eigenvalue " + std::to_string(min_eig));
    }
  }
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    throw ValidationError("DensityMatrix::pure: state vector not normalized");
  }
  return DensityMatrix(psi * psi.adjoint(), false);
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  CMatrix m = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityMatrix(std::move(m), false);
}

// ---------------------------------------------------------------------------
// SupportIndexer

SupportIndexer::SupportIndexer(const SupportSet& support, const SystemShape& shape) {
  support.validate_against(shape);
  const int n = shape.num_sites;
  const int d = shape.local_dim;
  const Index dim = shape.dim();
  for (int i = 0; i < support.size(); ++i) local_dim_ *= d;
  rest_dim_ = dim / local_dim_;

  // Site digit weights, site 0 most significant.
  std::vector<Index> weight(n);
  Index w = 1;
  for (int s = n - 1; s >= 0; --s) {
    weight[s] = w;
    w *= d;
  }
  std::vector<int> in_support(n, -1);
  for (int i = 0; i < support.size(); ++i) in_support[support.sites[i]] = i;

  table_.assign(static_cast<std::size_t>(dim), 0);
  for (Index local = 0; local < local_dim_; ++local) {
    // Local digits in support order, first support site most significant.
    std::vector<int> ldig(support.size());
    Index tmp = local;
    for (int i = support.size() - 1; i >= 0; --i) {
      ldig[i] = static_cast<int>(tmp % d);
      tmp /= d;
    }
    for (Index rest = 0; rest < rest_dim_; ++rest) {
      Index rtmp = rest;
      Index g = 0;
      // Rest digits fill the non-support sites left to right; the last
      // non-support site is least significant within the rest part.
      std::vector<int> rdig;
      rdig.reserve(n - support.size());
      for (int s = n - 1; s >= 0; --s) {
        if (in_support[s] < 0) {
          rdig.push_back(static_cast<int>(rtmp % d));
          rtmp /= d;
        }
      }
      int rpos = static_cast<int>(rdig.size()) - 1;
      for (int s = 0; s < n; ++s) {
        const int dig = (in_support[s] >= 0) ? ldig[in_support[s]] : rdig[rpos--];
        g += weight[s] * dig;
      }
      table_[static_cast<std::size_t>(rest * local_dim_ + local)] = g;
    }
  }
}

// ---------------------------------------------------------------------------
// Operations

CMatrix embed_local(const LocalOperator& op, const SystemShape& shape) {
  op.validate_against(shape);
  const SupportIndexer idx(op.support, shape);
  const Index dim = shape.dim();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (Index rest = 0; rest < idx.rest_dim(); ++rest) {
    for (Index lrow = 0; lrow < idx.local_dim(); ++lrow) {
      const Index grow = idx.global_index(lrow, rest);
      for (Index lcol = 0; lcol < idx.local_dim(); ++lcol) {
        const Complex v = op.matrix(lrow, lcol);
        if (v != Complex(0.0, 0.0)) out(grow, idx.global_index(lcol, rest)) = v;
      }
    }
  }
  return out;
}

EvaluatedTerm evaluate_term(const LindbladTerm& term, double t) {
  if (t < 0.0) throw ValidationError("evaluate_term: t must be >= 0");
  EvaluatedTerm out;
  if (term.hamiltonian) {
    out.hamiltonian = term.hamiltonian->second.value_at(t) * term.hamiltonian->first.matrix;
  }
  out.jumps.reserve(term.jump_ops.size());
  for (const auto& [op, sched] : term.jump_ops) {
    out.jumps.push_back(sched.value_at(t) * op.matrix);
  }
  return out;
}

double term_sup_norm_a(const LindbladTerm& term, double t0, double t1) {
  if (t0 < 0.0 || t1 < t0) throw ValidationError("term_sup_norm_a: needs 0 <= t0 <= t1");
  double a = 0.0;
  if (term.hamiltonian) {
    a = std::max(a, term.hamiltonian->second.sup_abs(t0, t1) *
                        spectral_norm(term.hamiltonian->first.matrix));
  }
  for (const auto& [op, sched] : term.jump_ops) {
    a = std::max(a, sched.sup_abs(t0, t1) * spectral_norm(op.matrix));
  }
  return a;
}

double term_sup_norm_a(const KLocalLiouvillian& liou, double t0, double t1) {
  double a = 0.0;
  for (const auto& term : liou.terms()) a = std::max(a, term_sup_norm_a(term, t0, t1));
  return a;
}

}  // namespace dissim
