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

#ifndef DISSIM_TEST_MODELS_HPP
#define DISSIM_TEST_MODELS_HPP

#include <string>
#include <vector>

#include "dissim/bounds.hpp"
#include "dissim/superop.hpp"
#include "dissim/trotter.hpp"

namespace dissim::testing {

CMatrix pauli_i();
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix sigma_minus();  // |0><1|
CMatrix sigma_plus();   // |1><0|

LindbladTerm hamiltonian_term(SupportSet support, CMatrix h,
                              Schedule sched = Schedule::constant(1.0));
LindbladTerm jump_term(SupportSet support, CMatrix l, Schedule sched = Schedule::constant(1.0));

/// Single qubit, one jump sigma_minus: rho_11 decays as exp(-2t), coherences
/// as exp(-t).
KLocalLiouvillian amplitude_damping(Schedule sched = Schedule::constant(1.0));
/// Single qubit, one jump sigma_z.
KLocalLiouvillian dephasing(Schedule sched = Schedule::constant(1.0));
/// Two non-commuting terms on one qubit: a sigma_x field and the damping jump.
KLocalLiouvillian damping_with_field(double field = 1.0);
/// Independent sigma_z dephasing on every site of an n-qubit chain.
KLocalLiouvillian chain_dephasing(int n);

CMatrix random_hermitian_unit(Rng& rng, Index dim);  // spectral norm 1
CMatrix random_matrix_unit(Rng& rng, Index dim);     // spectral norm 1
DensityMatrix random_density(Rng& rng, Index dim);
CVector random_state(Rng& rng, Index dim);

/// Random CPT channel sampled through a Ginibre Choi matrix.
SuperOp random_cpt_channel(Rng& rng, Index dim, Index rank);

struct RandomModelSpec {
  int num_sites = 1;
  int locality = 1;
  int num_terms = 1;
  bool piecewise_schedules = false;
  double a_max = 1.0;
  bool with_hamiltonians = true;
  int jumps_per_term = 1;
};
KLocalLiouvillian random_model(Rng& rng, const RandomModelSpec& spec);

/// Direct Lindblad action -i[H, rho] + sum(2 L rho L^dag - {L^dag L, rho}),
/// the reference against the vectorized route.
CMatrix direct_lindblad_action(const EvaluatedTerm& ops, const CMatrix& rho);

/// The fixed desk-scale model suite used by the dominance criteria: >= 20
/// models over 1-3 qubits, localities 1-2, a <= 2, constant and
/// piecewise-constant schedules.
struct SuiteEntry {
  std::string name;
  KLocalLiouvillian model;
  double tau = 1.0;
};
std::vector<SuiteEntry> dominance_suite();

}  // namespace dissim::testing

#endif  // DISSIM_TEST_MODELS_HPP
