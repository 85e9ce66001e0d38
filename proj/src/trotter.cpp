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

#include "dissim/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <set>

#include <Eigen/Eigenvalues>

namespace dissim {

long step_count(double c, double b, long K, double tau, double epsilon) {
  if (epsilon <= 0.0) throw ValidationError("step_count: epsilon must be positive");
  if (c < 0.0 || b < 0.0) throw ValidationError("step_count: constants must be non-negative");
  if (K < 1) throw ValidationError("step_count: K must be >= 1");
  if (tau < 0.0) throw ValidationError("step_count: tau must be non-negative");
  const double kk = static_cast<double>(K);
  const double branch1 = 2.0 * c * kk * kk * tau * tau / epsilon;
  const double branch2 = tau * b / std::log(2.0);
  return static_cast<long>(std::ceil(std::max(branch1, branch2)));
}

TrotterPlan::TrotterPlan(double tau_, long m_, StepMode mode, TermOrdering order)
    : tau(tau_), m(m_), step_mode(mode), ordering(std::move(order)) {
  if (tau < 0.0) throw ValidationError("TrotterPlan: tau must be non-negative");
  if (m < 1) throw ValidationError("TrotterPlan: m must be >= 1");
}

TrotterPlan TrotterPlan::for_epsilon(double tau, double epsilon, double c, double b, long K,
                                     StepMode mode, TermOrdering order) {
  const long m = std::max<long>(1, step_count(c, b, K, tau, epsilon));
  TrotterPlan plan(tau, m, mode, std::move(order));
  plan.epsilon_target = epsilon;
  return plan;
}

std::vector<int> resolve_ordering(const KLocalLiouvillian& liou, const TermOrdering& ordering) {
  std::vector<int> order = liou.term_order();
  switch (ordering.kind) {
    case TermOrdering::Kind::InputOrder:
      break;
    case TermOrdering::Kind::Reversed:
      std::reverse(order.begin(), order.end());
      break;
    case TermOrdering::Kind::Explicit: {
      if (ordering.permutation.size() != order.size()) {
        throw ValidationError("TermOrdering: permutation size mismatch");
      }
      std::vector<bool> seen(order.size(), false);
      for (int i : ordering.permutation) {
        if (i < 0 || i >= static_cast<int>(order.size()) || seen[i]) {
          throw ValidationError("TermOrdering: not a permutation");
        }
        seen[i] = true;
      }
      order = ordering.permutation;
      break;
    }
  }
  return order;
}

namespace {

// A term re-seated on its own local lattice, so the single-term propagator
// machinery can run on the d^|supp| space.
KLocalLiouvillian localized_term(const LindbladTerm& term, const SystemShape& shape) {
  const int nloc = std::max(1, term.support.size());
  SystemShape local_shape(nloc, shape.local_dim, nloc);
  std::vector<int> sites(static_cast<std::size_t>(term.support.size()));
  for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = static_cast<int>(i);
  SupportSet local_support(sites);

  LindbladTerm local;
  local.support = local_support;
  if (term.hamiltonian) {
    local.hamiltonian = {LocalOperator(local_support, term.hamiltonian->first.matrix, true,
                                       term.hamiltonian->first.pauli_label),
                         term.hamiltonian->second};
  }
  for (const auto& [op, sched] : term.jump_ops) {
    local.jump_ops.push_back({LocalOperator(local_support, op.matrix, false, op.pauli_label),
                              sched});
  }
  return KLocalLiouvillian(local_shape, {local});
}

}  // namespace

LocalChannel build_local_channel(const LindbladTerm& term, const SystemShape& shape,
                                 double t0, double t1, StepMode mode, long step_index) {
  if (t1 < t0) throw ValidationError("build_local_channel: needs t1 >= t0");
  const Index dloc = term.local_dim(shape);
  LocalChannel ch;
  ch.support = term.support;
  ch.step_index = step_index;
  ch.t_start = t0;
  ch.t_end = t1;

  if (t1 == t0) {
    ch.superop = SuperOp::identity(dloc);
    return ch;
  }
  if (mode == StepMode::ExactLocal) {
    ch.superop = exact_propagator(localized_term(term, shape), t0, t1).superop;
  } else {
    const AverageLiouvillian av = average_liouvillian(term, shape, t0, t1, /*validate=*/false);
    ch.superop = SuperOp(matrix_exponential((t1 - t0) * av.matrix.mat));
  }
  const CptDiagnostics diag = check_cpt(ch.superop, 1e-9);
  if (!diag.ok) {
    throw ValidationError(
        "build_local_channel: channel failed the CPT check (choi_min_eig = " +
        std::to_string(diag.choi_min_eig) +
        ", tp_residual = " + std::to_string(diag.trace_preservation_residual) +
        "); this signals a schedule or operator bug");
  }
  return ch;
}

namespace {

struct StepClassifier {
  // region[j]: index of the schedule constancy region fully containing step j,
  // or -1 if the step straddles a breakpoint (or schedules are not piecewise
  // constant).
  std::vector<long> region;

  StepClassifier(const KLocalLiouvillian& liou, const TrotterPlan& plan) {
    const long m = plan.m;
    region.assign(static_cast<std::size_t>(m), -1);
    if (!liou.all_schedules_piecewise_constant()) return;

    std::set<double> pts;
    for (const auto& term : liou.terms()) {
      if (term.hamiltonian) {
        for (double b : term.hamiltonian->second.interior_breakpoints(0.0, plan.tau)) {
          pts.insert(b);
        }
      }
      for (const auto& [op, sched] : term.jump_ops) {
        (void)op;
        for (double b : sched.interior_breakpoints(0.0, plan.tau)) pts.insert(b);
      }
    }
    const std::vector<double> bks(pts.begin(), pts.end());
    const double dt = plan.step_length();
    for (long j = 0; j < m; ++j) {
      const double t0 = static_cast<double>(j) * dt;
      const double t1 = static_cast<double>(j + 1) * dt;
      // Region id = number of breakpoints at or before t0; the step is clean
      // if no breakpoint lies strictly inside (t0, t1).
      const auto lo = std::upper_bound(bks.begin(), bks.end(), t0);
      const auto hi = std::lower_bound(bks.begin(), bks.end(), t1);
      if (lo == hi) region[static_cast<std::size_t>(j)] = lo - bks.begin();
    }
  }
};

struct ChannelKey {
  int term = 0;
  long region = -1;   // >= 0 when keyed by constancy region
  std::uint64_t t0_bits = 0, t1_bits = 0;  // bit-exact endpoints otherwise

  bool operator<(const ChannelKey& o) const {
    return std::tie(term, region, t0_bits, t1_bits) <
           std::tie(o.term, o.region, o.t0_bits, o.t1_bits);
  }
};

std::uint64_t double_bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof(b));
  return b;
}

class ChannelProvider {
 public:
  ChannelProvider(const KLocalLiouvillian& liou, const TrotterPlan& plan)
      : liou_(liou), plan_(plan), classifier_(liou, plan) {}

  const SuperOp& channel(int term_idx, long step_j) {
    const double dt = plan_.step_length();
    const double t0 = static_cast<double>(step_j) * dt;
    const double t1 = static_cast<double>(step_j + 1) * dt;
    ChannelKey key;
    key.term = term_idx;
    key.region = classifier_.region[static_cast<std::size_t>(step_j)];
    if (key.region < 0) {
      key.t0_bits = double_bits(t0);
      key.t1_bits = double_bits(t1);
    }
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      LocalChannel ch = build_local_channel(liou_.terms()[static_cast<std::size_t>(term_idx)],
                                            liou_.shape(), t0, t1, plan_.step_mode, step_j + 1);
      it = cache_.emplace(key, std::move(ch.superop)).first;
    }
    return it->second;
  }

  long step_region(long step_j) const { return classifier_.region[static_cast<std::size_t>(step_j)]; }

 private:
  const KLocalLiouvillian& liou_;
  const TrotterPlan& plan_;
  StepClassifier classifier_;
  std::map<ChannelKey, SuperOp> cache_;
};

CMatrix matrix_power(CMatrix base, long e) {
  CMatrix result = CMatrix::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) result = base * result;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace

SuperOp trotter_propagator(const KLocalLiouvillian& liou, const TrotterPlan& plan) {
  const Index dim = liou.shape().dim();
  if (dim * dim > 4096) {
    throw GuardError("trotter_propagator: D^2 = " + std::to_string(dim * dim) +
                     " exceeds the dense product guard (4096); use trotter_evolve");
  }
  const std::vector<int> order = resolve_ordering(liou, plan.ordering);
  if (plan.tau == 0.0 || order.empty()) return SuperOp::identity(dim);

  ChannelProvider provider(liou, plan);

  // Embedded product of one step's channels, in plan order.
  auto step_product = [&](long j) {
    CMatrix acc = CMatrix::Identity(dim * dim, dim * dim);
    for (int t : order) {
      const SuperOp& local = provider.channel(t, j);
      const SuperOp embedded =
          embed_superop(local.mat, liou.terms()[static_cast<std::size_t>(t)].support,
                        liou.shape());
      acc = embedded.mat * acc;
    }
    return acc;
  };

  // Steps inside one schedule constancy region share their product; runs of
  // such steps are raised to a power instead of multiplied out.
  CMatrix total = CMatrix::Identity(dim * dim, dim * dim);
  long j = 0;
  while (j < plan.m) {
    const long region = provider.step_region(j);
    long run = 1;
    if (region >= 0) {
      while (j + run < plan.m && provider.step_region(j + run) == region) ++run;
    }
    const CMatrix p = step_product(j);
    total = (run == 1) ? CMatrix(p * total) : CMatrix(matrix_power(p, run) * total);
    j += run;
  }
  return SuperOp(std::move(total));
}

namespace {

// rho' on the support block: gathers the local operator slice, applies the
// local superoperator, scatters back. Touches d^{2|supp|} * D^2 entries.
void apply_local_channel(CMatrix& rho, const SuperOp& local, const SupportIndexer& idx) {
  const Index dloc = idx.local_dim();
  const Index drest = idx.rest_dim();
  const Index ldim = dloc * dloc;
  CVector g(ldim), y(ldim);
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (Index rr = 0; rr < drest; ++rr) {
    for (Index rc = 0; rc < drest; ++rc) {
      for (Index lic = 0; lic < dloc; ++lic) {
        const Index gc = idx.global_index(lic, rc);
        for (Index lir = 0; lir < dloc; ++lir) {
          g(lir + dloc * lic) = rho(idx.global_index(lir, rr), gc);
        }
      }
      y.noalias() = local.mat * g;
      for (Index lc = 0; lc < dloc; ++lc) {
        const Index gc = idx.global_index(lc, rc);
        for (Index lr = 0; lr < dloc; ++lr) {
          out(idx.global_index(lr, rr), gc) = y(lr + dloc * lc);
        }
      }
    }
  }
  rho = std::move(out);
}

}  // namespace

EvolveResult trotter_evolve(const KLocalLiouvillian& liou, const DensityMatrix& rho0,
                            const TrotterPlan& plan, const StepObserver& observer) {
  const Index dim = liou.shape().dim();
  if (dim > 1024) {
    throw GuardError("trotter_evolve: D = " + std::to_string(dim) +
                     " exceeds the dense state guard (1024)");
  }
  if (rho0.dim() != dim) throw ValidationError("trotter_evolve: state dimension mismatch");

  const std::vector<int> order = resolve_ordering(liou, plan.ordering);
  StepLog log;
  CMatrix rho = rho0.matrix();
  if (plan.tau == 0.0 || order.empty()) {
    return EvolveResult{DensityMatrix(rho), std::move(log)};
  }

  ChannelProvider provider(liou, plan);
  std::vector<SupportIndexer> indexers;
  indexers.reserve(liou.terms().size());
  for (const auto& term : liou.terms()) indexers.emplace_back(term.support, liou.shape());

  const long spot_stride = (plan.m + 9) / 10;
  const double dt = plan.step_length();
  for (long j = 0; j < plan.m; ++j) {
    for (int t : order) {
      apply_local_channel(rho, provider.channel(t, j), indexers[static_cast<std::size_t>(t)]);
    }
    StepLog::Entry entry;
    entry.step = j + 1;
    entry.time = static_cast<double>(j + 1) * dt;
    entry.trace_residual = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (spot_stride > 0 && ((j + 1) % spot_stride == 0 || j + 1 == plan.m)) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()),
                                                Eigen::EigenvaluesOnly);
      entry.min_eigenvalue = es.eigenvalues().minCoeff();
    }
    if (entry.trace_residual > 1e-8) {
      log.entries.push_back(entry);
      throw ValidationError("trotter_evolve: trace residual " +
                            std::to_string(entry.trace_residual) + " at step " +
                            std::to_string(j + 1) + " exceeds 1e-8");
    }
    if (observer) observer(j + 1, entry.time, rho, entry);
    log.entries.push_back(std::move(entry));
  }
  rho = 0.5 * (rho + rho.adjoint().eval());
  return EvolveResult{DensityMatrix(std::move(rho)), std::move(log)};
}

NormEstimate measured_trotter_error(const KLocalLiouvillian& liou, const TrotterPlan& plan,
                                    const NormOptions& opts) {
  const Index dim = liou.shape().dim();
  if (dim * dim > 4096) {
    throw GuardError("measured_trotter_error: D^2 exceeds the dense product guard (4096)");
  }
  const SuperOp exact = exact_propagator(liou, 0.0, plan.tau).superop;
  const SuperOp trot = trotter_propagator(liou, plan);
  return one_to_one_norm_hermitian(SuperOp(exact.mat - trot.mat), opts);
}

}  // namespace dissim
