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

#include <doctest.h>

#include "dissim/bounds.hpp"
#include "test_models.hpp"

using namespace dissim;
using namespace dissim::testing;

TEST_SUITE("trotter") {

TEST_CASE("step count follows the two-branch ceiling") {
  CHECK(step_count(82.0, 20.0, 3, 0.0, 0.1) == 0);
  CHECK(step_count(82.0, 20.0, 3, 1.0, 0.1) == 14760);
  CHECK(step_count(1.0, 20.0, 1, 10.0, 100.0) == 289);  // second branch: 200/ln2
  CHECK(step_count(0.0, 0.0, 1, 5.0, 0.1) == 0);        // zero generator
  CHECK_THROWS_AS(step_count(1.0, 1.0, 1, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(step_count(1.0, 1.0, 0, 1.0, 0.1), ValidationError);

  const TrotterPlan plan = TrotterPlan::for_epsilon(1.0, 0.1, 82.0, 20.0, 3);
  CHECK(plan.m == 14760);
  CHECK(plan.epsilon_target == 0.1);
  CHECK_THROWS_AS(TrotterPlan(1.0, 0), ValidationError);
}

TEST_CASE("local channels: zero term, mode agreement, averaged dephasing") {
  SystemShape shape(1, 2, 1);
  LindbladTerm zero_term;
  zero_term.support = SupportSet{0};
  const LocalChannel idc = build_local_channel(zero_term, shape, 0.0, 0.3, StepMode::ExactLocal);
  CHECK(max_abs(idc.superop.mat - CMatrix::Identity(4, 4)) == 0.0);

  // Constant term: the averaged generator is the generator, so both modes
  // produce the same exponential.
  const LindbladTerm damp = jump_term(SupportSet{0}, sigma_minus());
  const LocalChannel exact = build_local_channel(damp, shape, 0.0, 0.25, StepMode::ExactLocal);
  const LocalChannel avg =
      build_local_channel(damp, shape, 0.0, 0.25, StepMode::AverageLiouvillian);
  CHECK(max_abs(exact.superop.mat - avg.superop.mat) < 1e-12);

  // Scheduled dephasing with mean f^2 = 0.5 over the step.
  const LindbladTerm deph = jump_term(
      SupportSet{0}, pauli_z(), Schedule::piecewise_constant({{0.0, 0.0}, {0.05, 1.0}}));
  const LocalChannel ch = build_local_channel(deph, shape, 0.0, 0.1, StepMode::AverageLiouvillian);
  CMatrix rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;
  const CMatrix out = apply_superop(ch.superop, rho);
  CHECK(out(0, 1).real() == doctest::Approx(0.5 * std::exp(-0.2)).epsilon(1e-12));
}

TEST_CASE("single-term and commuting products are exact") {
  NormOptions opts;
  opts.seed = 3;
  for (long m : {1L, 7L, 50L}) {
    const TrotterPlan plan(0.8, m);
    CHECK(measured_trotter_error(amplitude_damping(), plan, opts).value <= 1e-9);
  }
  // Disjoint supports commute exactly.
  const KLocalLiouvillian chain = chain_dephasing(2);
  for (long m : {1L, 10L}) {
    CHECK(measured_trotter_error(chain, TrotterPlan(0.5, m), opts).value <= 1e-9);
  }
}

TEST_CASE("error decays like 1/m for a non-commuting model") {
  NormOptions opts;
  opts.seed = 13;
  const KLocalLiouvillian model = damping_with_field();
  const double e10 = measured_trotter_error(model, TrotterPlan(1.0, 10), opts).value;
  const double e100 = measured_trotter_error(model, TrotterPlan(1.0, 100), opts).value;
  CHECK(e10 > 0.0);
  const double ratio = e10 / e100;
  CHECK(ratio >= 8.0);
  CHECK(ratio <= 12.0);
}

TEST_CASE("1/m convergence slope over a dyadic ladder") {
  NormOptions opts;
  opts.seed = 17;
  const KLocalLiouvillian model = damping_with_field();
  std::vector<double> log_m, log_e;
  for (long m = 16; m <= 1024; m *= 2) {
    const double e = measured_trotter_error(model, TrotterPlan(1.0, m), opts).value;
    log_m.push_back(std::log(static_cast<double>(m)));
    log_e.push_back(std::log(e));
  }
  // Least squares slope.
  const auto n = static_cast<double>(log_m.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_m.size(); ++i) {
    sx += log_m[i];
    sy += log_e[i];
    sxx += log_m[i] * log_m[i];
    sxy += log_m[i] * log_e[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope >= -1.25);
  CHECK(slope <= -0.75);
}

TEST_CASE("channels are CPT and the state evolution preserves trace") {
  const KLocalLiouvillian model = damping_with_field();
  const TrotterPlan plan(1.0, 50);
  const EvolveResult result = trotter_evolve(model, DensityMatrix::maximally_mixed(2), plan);
  for (const auto& entry : result.log.entries) {
    CHECK(entry.trace_residual <= 1e-10);
    if (entry.min_eigenvalue) CHECK(*entry.min_eigenvalue >= -1e-9);
  }
  CHECK(result.log.entries.size() == 50);
}

TEST_CASE("state evolution reproduces analytic damping and commuting dephasing") {
  // Amplitude damping from the excited state.
  CVector e1 = CVector::Zero(2);
  e1(1) = 1.0;
  const double tau = std::log(2.0) / 2.0;
  const EvolveResult damped =
      trotter_evolve(amplitude_damping(), DensityMatrix::pure(e1), TrotterPlan(tau, 1000));
  CHECK(damped.state.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-3));

  // Identity plan returns the state unchanged.
  const KLocalLiouvillian empty(SystemShape(1, 2, 1), {});
  const DensityMatrix rho0 = DensityMatrix::maximally_mixed(2);
  const EvolveResult same = trotter_evolve(empty, rho0, TrotterPlan(1.0, 3));
  CHECK(max_abs(same.state.matrix() - rho0.matrix()) == 0.0);

  // Three-qubit chain dephasing of |+++>: every coherence scales by exp(-1)
  // at tau = 1/4 (commuting terms, so any m is exact).
  const int n = 3;
  CVector plus = CVector::Ones(8) / std::sqrt(8.0);
  const EvolveResult dephased =
      trotter_evolve(chain_dephasing(n), DensityMatrix::pure(plus), TrotterPlan(0.25, 16));
  const CMatrix& out = dephased.state.matrix();
  // Entry (0, 7) differs in all three sites: factor exp(-3 * 4 * 0.25 / 3)...
  // each differing site contributes exp(-4 * tau) per the diag(0,-4,-4,0)
  // generator; (0,1) differs on one site only.
  CHECK(out(0, 1).real() == doctest::Approx(std::exp(-1.0) / 8.0).epsilon(1e-6));
  CHECK(out(0, 7).real() == doctest::Approx(std::exp(-3.0) / 8.0).epsilon(1e-6));
}

TEST_CASE("dense product and state application agree") {
  Rng rng(29);
  RandomModelSpec spec;
  spec.num_sites = 2;
  spec.locality = 2;
  spec.num_terms = 3;
  spec.piecewise_schedules = true;
  const KLocalLiouvillian model = random_model(rng, spec);
  const TrotterPlan plan(0.6, 37, StepMode::ExactLocal, TermOrdering::reversed());

  const SuperOp product = trotter_propagator(model, plan);
  const DensityMatrix rho0 = random_density(rng, 4);
  const CMatrix via_product = apply_superop(product, rho0.matrix());
  const EvolveResult via_state = trotter_evolve(model, rho0, plan);
  CHECK(max_abs(via_product - via_state.state.matrix()) < 1e-11);
}

TEST_CASE("orderings permute the factors but stay under the one bound") {
  const KLocalLiouvillian model = damping_with_field();
  const LocalConstants consts = local_constants(model, 0.0, 1.0);
  const double bound = theorem1_bound(consts, model.num_terms(), 1.0, 40);
  NormOptions opts;
  opts.seed = 19;
  const std::vector<TermOrdering> orderings = {
      TermOrdering::input_order(), TermOrdering::reversed(),
      TermOrdering::explicit_order({1, 0})};
  for (const auto& ord : orderings) {
    const TrotterPlan plan(1.0, 40, StepMode::ExactLocal, ord);
    CHECK(measured_trotter_error(model, plan, opts).value <= bound);
  }
  CHECK_THROWS_AS((void)resolve_ordering(model, TermOrdering::explicit_order({0, 0})),
                  ValidationError);
}

TEST_CASE("average-liouvillian mode stays near exact-local mode") {
  const Schedule steps = Schedule::piecewise_constant({{0.0, 0.3}, {0.37, 1.0}});
  SystemShape shape(1, 2, 1);
  const KLocalLiouvillian model(
      shape, {hamiltonian_term(SupportSet{0}, pauli_x(), steps),
              jump_term(SupportSet{0}, sigma_minus())});
  NormOptions opts;
  opts.seed = 23;
  const long m = 20;
  const double tau = 1.0;
  const double e_exact =
      measured_trotter_error(model, TrotterPlan(tau, m, StepMode::ExactLocal), opts).value;
  const double e_avg =
      measured_trotter_error(model, TrotterPlan(tau, m, StepMode::AverageLiouvillian), opts)
          .value;
  const LocalConstants consts = local_constants(model, 0.0, tau);
  const double per_step = avg_liouvillian_bound(consts, 0.0, tau / m);
  const double budget = static_cast<double>(m) * model.num_terms() * per_step;
  CHECK(std::abs(e_exact - e_avg) <= budget + 1e-9);
}

TEST_CASE("guards reject oversized systems") {
  const KLocalLiouvillian big = chain_dephasing(7);  // D = 128, D^2 = 16384
  CHECK_THROWS_AS((void)trotter_propagator(big, TrotterPlan(0.1, 2)), GuardError);
  CHECK_NOTHROW((void)trotter_evolve(big, DensityMatrix::maximally_mixed(128),
                                     TrotterPlan(0.1, 2)));
}

}  // TEST_SUITE
