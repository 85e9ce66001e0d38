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
#include "dissim/norms.hpp"
#include "test_models.hpp"

using namespace dissim;
using namespace dissim::testing;

TEST_SUITE("superop") {

TEST_CASE("dephasing generator matrix is diag(0, -4, -4, 0)") {
  const SuperOp l = liouvillian_matrix(dephasing(), 0.0);
  CMatrix expect = CMatrix::Zero(4, 4);
  expect(1, 1) = -4.0;
  expect(2, 2) = -4.0;
  CHECK(max_abs(l.mat - expect) < 1e-14);
}

TEST_CASE("damping generator acts as the printed dissipator") {
  const SuperOp l = liouvillian_matrix(amplitude_damping(), 0.0);
  CMatrix e11 = CMatrix::Zero(2, 2);
  e11(1, 1) = 1.0;
  CMatrix out = apply_superop(l, e11);
  CMatrix expect(2, 2);
  expect << 2.0, 0.0, 0.0, -2.0;
  CHECK(max_abs(out - expect) < 1e-14);

  CMatrix e01 = CMatrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  out = apply_superop(l, e01);
  CHECK(max_abs(out + e01) < 1e-14);

  const KLocalLiouvillian empty(SystemShape(1, 2, 1), {});
  CHECK(max_abs(liouvillian_matrix(empty, 0.0).mat) == 0.0);
}

TEST_CASE("generator matrix agrees with the direct Lindblad action") {
  Rng rng(11);
  RandomModelSpec spec;
  spec.num_sites = 2;
  spec.locality = 2;
  spec.num_terms = 2;
  spec.jumps_per_term = 2;
  const KLocalLiouvillian liou = random_model(rng, spec);
  const SuperOp l = liouvillian_matrix(liou, 0.3);
  for (int rep = 0; rep < 100; ++rep) {
    const CMatrix rho = random_density(rng, 4).matrix();
    CMatrix expect = CMatrix::Zero(4, 4);
    for (const auto& term : liou.terms()) {
      EvaluatedTerm ops = evaluate_term(term, 0.3);
      if (ops.hamiltonian) {
        ops.hamiltonian =
            embed_local(LocalOperator(term.support, *ops.hamiltonian, false), liou.shape());
      }
      for (auto& j : ops.jumps) {
        j = embed_local(LocalOperator(term.support, j, false), liou.shape());
      }
      expect += direct_lindblad_action(ops, rho);
    }
    CHECK(max_abs(apply_superop(l, rho) - expect) < 1e-12);
  }
}

TEST_CASE("exact propagator: analytic damping factors") {
  const KLocalLiouvillian empty(SystemShape(1, 2, 1), {});
  const Propagator id = exact_propagator(empty, 0.0, 1.0);
  CHECK(max_abs(id.superop.mat - CMatrix::Identity(4, 4)) == 0.0);

  const double t = std::log(2.0) / 2.0;
  const Propagator damp = exact_propagator(amplitude_damping(), 0.0, t);
  CHECK(damp.method == PropagatorMethod::ProductOfExponentials);
  CMatrix rho(2, 2);
  rho << 0.4, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.6;
  const CMatrix out = apply_superop(damp.superop, rho);
  CHECK(out(1, 1).real() == doctest::Approx(0.3).epsilon(1e-10));  // e^{-2t} = 1/2
  CHECK(out(0, 1).real() == doctest::Approx(0.2 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(out(0, 0).real() == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("exact propagator: pure Hamiltonian evolution is the unitary conjugation") {
  SystemShape shape(1, 2, 1);
  const KLocalLiouvillian liou(shape, {hamiltonian_term(SupportSet{0}, pauli_z())});
  const double t = M_PI / 4.0;
  const Propagator prop = exact_propagator(liou, 0.0, t);
  const Complex phase = std::polar(1.0, -t);
  CMatrix u(2, 2);
  u << phase, 0.0, 0.0, std::conj(phase);
  Rng rng(3);
  const CMatrix rho = random_density(rng, 2).matrix();
  CHECK(max_abs(apply_superop(prop.superop, rho) - u * rho * u.adjoint()) < 1e-12);
}

TEST_CASE("smooth schedules go through the ODE path and match closed forms") {
  SystemShape shape(1, 2, 1);
  const Schedule ramp = Schedule::sampled_smooth({{0.0, 0.0}, {1.0, 1.0}});
  const KLocalLiouvillian liou(shape, {hamiltonian_term(SupportSet{0}, pauli_z(), ramp)});
  const Propagator prop = exact_propagator(liou, 0.0, 1.0);
  CHECK(prop.method == PropagatorMethod::OdeRk45);
  // Commuting family: T = exp(mean(f) * L_H) with mean(f) = 1/2.
  const CMatrix expect = matrix_exponential(0.5 * hamiltonian_superop_part(pauli_z()));
  CHECK(max_abs(prop.superop.mat - expect) < 1e-9);

  // Non-commuting smooth model against a fine staircase discretization.
  const KLocalLiouvillian mixed(shape, {hamiltonian_term(SupportSet{0}, pauli_x(), ramp),
                                        jump_term(SupportSet{0}, sigma_minus())});
  const Propagator ode = exact_propagator(mixed, 0.0, 1.0);
  CHECK(ode.method == PropagatorMethod::OdeRk45);
  const int steps = 2000;
  CMatrix stair = CMatrix::Identity(4, 4);
  for (int i = 0; i < steps; ++i) {
    const double mid = (i + 0.5) / steps;
    stair = matrix_exponential(liouvillian_matrix(mixed, mid).mat / steps) * stair;
  }
  CHECK(max_abs(ode.superop.mat - stair) < 1e-6);
}

TEST_CASE("inverse propagator inverts exactly") {
  const KLocalLiouvillian empty(SystemShape(1, 2, 1), {});
  CHECK(max_abs(inverse_propagator(empty, 0.0, 2.0).superop.mat - CMatrix::Identity(4, 4)) ==
        0.0);

  const double t = std::log(2.0) / 2.0;
  const Propagator inv = inverse_propagator(amplitude_damping(), 0.0, t);
  CMatrix e11 = CMatrix::Zero(2, 2);
  e11(1, 1) = 1.0;
  CHECK(apply_superop(inv.superop, e11)(1, 1).real() == doctest::Approx(2.0).epsilon(1e-10));
  CMatrix e01 = CMatrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  CHECK(apply_superop(inv.superop, e01)(0, 1).real() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  // Composition check on a random scheduled two-qubit model.
  Rng rng(23);
  RandomModelSpec spec;
  spec.num_sites = 2;
  spec.locality = 2;
  spec.num_terms = 2;
  spec.piecewise_schedules = true;
  const KLocalLiouvillian liou = random_model(rng, spec);
  const CMatrix fwd = exact_propagator(liou, 0.0, 0.8).superop.mat;
  const CMatrix bwd = inverse_propagator(liou, 0.0, 0.8).superop.mat;
  CHECK(spectral_norm(bwd * fwd - CMatrix::Identity(16, 16)) < 1e-8);
}

TEST_CASE("propagators are CPT and compose") {
  Rng rng(37);
  for (int rep = 0; rep < 6; ++rep) {
    RandomModelSpec spec;
    spec.num_sites = 1 + rep % 2;
    spec.locality = spec.num_sites;
    spec.num_terms = 2;
    spec.piecewise_schedules = rep % 2 == 1;
    const KLocalLiouvillian liou = random_model(rng, spec);
    const double u = 0.2 + 0.5 * rng.uniform01();
    const double t = u + 0.2 + 0.5 * rng.uniform01();

    const SuperOp full = exact_propagator(liou, 0.0, t).superop;
    const CptDiagnostics diag = check_cpt(full, 1e-9);
    CHECK(diag.choi_min_eig >= -1e-9);
    CHECK(diag.trace_preservation_residual <= 1e-10);

    const SuperOp first = exact_propagator(liou, 0.0, u).superop;
    const SuperOp second = exact_propagator(liou, u, t).superop;
    CHECK(spectral_norm(second.mat * first.mat - full.mat) < 1e-8);
  }
}

TEST_CASE("backward propagator norm stays under the certified bound") {
  Rng rng(41);
  NormOptions opts;
  opts.budget = 2000;
  opts.seed = 7;
  for (int rep = 0; rep < 10; ++rep) {
    RandomModelSpec spec;
    spec.num_sites = 1 + rep % 2;
    spec.locality = 1;
    spec.num_terms = spec.num_sites;
    spec.piecewise_schedules = rep % 3 == 0;
    const KLocalLiouvillian liou = random_model(rng, spec);
    const double t = 0.1 + 0.3 * rng.uniform01();
    const Propagator inv = inverse_propagator(liou, 0.0, t);
    const NormEstimate est = one_to_one_norm_hermitian(inv.superop, opts);
    const double bound = backward_norm_bound(liou, 0.0, t);
    CHECK(est.value <= bound * (1.0 + 1e-9));
  }
}

TEST_CASE("average of a constant generator is bit-identical") {
  const KLocalLiouvillian damp = amplitude_damping();
  const AverageLiouvillian av = average_liouvillian(damp, 0.0, 0.7);
  const SuperOp direct = liouvillian_matrix(damp, 0.0);
  CHECK(max_abs(av.matrix.mat - direct.mat) == 0.0);
}

TEST_CASE("averaging weights: schedule squared for jumps, plain for Hamiltonians") {
  const Schedule steps = Schedule::piecewise_constant({{0.0, 0.0}, {0.5, 1.0}});
  const AverageLiouvillian av = average_liouvillian(dephasing(steps), 0.0, 1.0);
  const SuperOp base = liouvillian_matrix(dephasing(), 0.0);
  CHECK(max_abs(av.matrix.mat - 0.5 * base.mat) < 1e-15);
  CHECK(av.term_averages[0].jump_mean_sq[0] == doctest::Approx(0.5).epsilon(1e-15));

  SystemShape shape(1, 2, 1);
  const Schedule ramp = Schedule::sampled_smooth({{0.0, 0.0}, {1.0, 1.0}});
  const KLocalLiouvillian ham(shape, {hamiltonian_term(SupportSet{0}, pauli_z(), ramp)});
  const AverageLiouvillian avh = average_liouvillian(ham, 0.0, 1.0);
  CHECK(max_abs(avh.matrix.mat - 0.5 * hamiltonian_superop_part(pauli_z())) < 1e-14);
  CHECK(avh.term_averages[0].hamiltonian_mean == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("apply_superop basics and the damping fixed point") {
  const SuperOp id = SuperOp::identity(2);
  Rng rng(5);
  const CMatrix rho = random_density(rng, 2).matrix();
  CHECK(max_abs(apply_superop(id, rho) - rho) == 0.0);

  const SuperOp deph = liouvillian_matrix(dephasing(), 0.0);
  CMatrix with_coherence = CMatrix::Zero(2, 2);
  with_coherence(0, 1) = 0.5;
  CHECK(apply_superop(deph, with_coherence)(0, 1).real() ==
        doctest::Approx(-2.0).epsilon(1e-14));

  // |0><0| is stationary under amplitude damping.
  const SuperOp damp = liouvillian_matrix(amplitude_damping(), 0.0);
  CMatrix ground = CMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK(max_abs(apply_superop(damp, ground)) < 1e-12);

  CHECK_THROWS_AS((void)apply_superop(id, CMatrix::Zero(3, 3)), ValidationError);
}

TEST_CASE("choi diagnostics: identity passes, transpose fails") {
  CHECK(check_cpt(SuperOp::identity(2), 1e-9).ok);

  // Transpose map: vec(rho^T) = SWAP vec(rho); its Choi is the swap with a
  // -1 eigenvalue.
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  const CptDiagnostics diag = check_cpt(SuperOp(swap), 1e-9);
  CHECK_FALSE(diag.ok);
  CHECK(diag.choi_min_eig == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(diag.trace_preserving);

  const CptDiagnostics damp =
      check_cpt(exact_propagator(amplitude_damping(), 0.0, 0.9).superop, 1e-9);
  CHECK(damp.ok);
}

TEST_CASE("embedded local superoperators act only on their support") {
  SystemShape shape(2, 2, 1);
  const SuperOp local = liouvillian_matrix(dephasing(), 0.0);
  const SuperOp global = embed_superop(local.mat, SupportSet{1}, shape);
  const KLocalLiouvillian direct(shape, {jump_term(SupportSet{1}, pauli_z())});
  CHECK(max_abs(global.mat - liouvillian_matrix(direct, 0.0).mat) < 1e-14);
}

}  // TEST_SUITE
