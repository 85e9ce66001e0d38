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

#ifndef DISSIM_TROTTER_HPP
#define DISSIM_TROTTER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "dissim/norms.hpp"
#include "dissim/superop.hpp"

namespace dissim {

enum class StepMode { ExactLocal, AverageLiouvillian };

struct TermOrdering {
  enum class Kind { InputOrder, Reversed, Explicit };
  Kind kind = Kind::InputOrder;
  std::vector<int> permutation;  // used when kind == Explicit

  static TermOrdering input_order() { return {}; }
  static TermOrdering reversed() { return {Kind::Reversed, {}}; }
  static TermOrdering explicit_order(std::vector<int> perm) {
    return {Kind::Explicit, std::move(perm)};
  }
};

/// m = ceil(max(2 c K^2 tau^2 / eps, tau b / ln 2)); 0 only when both branches
/// vanish (tau = 0 or a zero generator).
long step_count(double c, double b, long K, double tau, double epsilon);

struct TrotterPlan {
  double tau = 0.0;
  long m = 1;
  StepMode step_mode = StepMode::ExactLocal;
  TermOrdering ordering;
  std::optional<double> epsilon_target;

  TrotterPlan() = default;
  TrotterPlan(double tau_, long m_, StepMode mode = StepMode::ExactLocal,
              TermOrdering order = {});

  /// Resolves m from a target accuracy via step_count (c, b, K as in the
  /// step-count formula).
  static TrotterPlan for_epsilon(double tau, double epsilon, double c, double b, long K,
                                 StepMode mode = StepMode::ExactLocal, TermOrdering order = {});

  double step_length() const { return tau / static_cast<double>(m); }
};

/// One strictly local channel of the decomposition, on the d^{2|supp|}
/// operator space of its term.
struct LocalChannel {
  SupportSet support;
  SuperOp superop;  // local
  long step_index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
};

/// Channel of one term over [t0, t1]; exact-local propagates the local term
/// generator, average-liouvillian exponentiates (t1-t0) times the averaged
/// generator. Both are CPT-validated at tolerance 1e-9.
LocalChannel build_local_channel(const LindbladTerm& term, const SystemShape& shape,
                                 double t0, double t1, StepMode mode, long step_index = 0);

/// Ordered dense product prod_{j=1..m} prod_terms of embedded local channels,
/// step j applied after step j-1. Guard: D^2 <= 4096.
SuperOp trotter_propagator(const KLocalLiouvillian& liou, const TrotterPlan& plan);

struct StepLog {
  struct Entry {
    long step = 0;
    double time = 0.0;
    double trace_residual = 0.0;
    std::optional<double> min_eigenvalue;  // spot checks every ceil(m/10) steps
  };
  std::vector<Entry> entries;
};

struct EvolveResult {
  DensityMatrix state;
  StepLog log;
};

/// Called after every completed step with the current (unvalidated) state.
using StepObserver =
    std::function<void(long step, double time, const CMatrix& rho, const StepLog::Entry& entry)>;

/// State-level evolution: applies each local channel by tensor-index
/// contraction on its support (cost d^{2|supp|} D^2 per channel); never forms
/// the global superoperator product. Guard: D <= 1024. Aborts if the running
/// trace residual exceeds 1e-8.
EvolveResult trotter_evolve(const KLocalLiouvillian& liou, const DensityMatrix& rho0,
                            const TrotterPlan& plan, const StepObserver& observer = {});

/// Hermitian (1->1) estimate of exact_propagator - trotter_propagator.
NormEstimate measured_trotter_error(const KLocalLiouvillian& liou, const TrotterPlan& plan,
                                    const NormOptions& opts = {});

/// Term indices in the order the plan applies them within each step.
std::vector<int> resolve_ordering(const KLocalLiouvillian& liou, const TermOrdering& ordering);

}  // namespace dissim

#endif  // DISSIM_TROTTER_HPP
