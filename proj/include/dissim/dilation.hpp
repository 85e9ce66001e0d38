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

#ifndef DISSIM_DILATION_HPP
#define DISSIM_DILATION_HPP

#include <vector>

#include "dissim/superop.hpp"

namespace dissim {

struct KrausSet {
  std::vector<CMatrix> operators;
  double completeness_residual = 0.0;  // ||sum K^dag K - 1||_inf

  Index op_dim() const { return operators.empty() ? 0 : operators.front().rows(); }
};

/// Kraus operators from the Choi eigendecomposition (eigenvalues above
/// rank_tol kept). Requires a CPT input; the reconstruction residual
/// ||S - sum conj(K) (x) K||_inf is checked against 1e-9.
KrausSet kraus_from_superop(const SuperOp& s, double rank_tol = 1e-12);

struct StinespringDilation {
  CMatrix unitary;       // on system (x) ancilla, system the most significant factor
  Index system_dim = 0;
  Index ancilla_dim = 0;
};

/// Isometry V = sum_mu K_mu (x) |mu>, completed to a unitary by deterministic
/// Gram-Schmidt over standard basis columns in index order. The ancilla is
/// padded to (system dim)^2 so any channel on the space fits.
StinespringDilation stinespring(const KrausSet& kraus);

/// tr_anc( U (rho (x) |0><0|) U^dag ): the channel realized by the dilation.
CMatrix dilated_apply(const StinespringDilation& dil, const CMatrix& rho);

struct CensusInputs {
  long num_sites = 2;     // N
  int locality = 1;       // k
  int local_dim = 2;      // d
  double tau = 1.0;
  double epsilon1 = 0.1;  // decomposition accuracy
  double epsilon2 = 0.05; // accumulated gate-synthesis accuracy
  double c_sk = 1.0;      // gate-count prefactor (not pinned by theory; input)
  double alpha = 4.0;     // gate-count exponent
  long n_sk = 3;          // universal gate set cardinality
  double c = 82.0;        // product-decomposition constant
  double b = 0.0;         // generator-norm constant, for the assumption check
};

/// Evaluated counting chain for the number of distinct channel circuits.
struct CensusReport {
  CensusInputs inputs;
  double m = 0.0;                 // ceil(2 c N^{2k} tau^2 / eps1)
  double epsilon_sk = 0.0;        // eps2 / (N^k m)
  double n_sk_gates = 0.0;        // ceil(c_sk log2(1/eps_sk)^alpha)
  double n_sk_gates_ln = 0.0;     // natural-log variant, for sensitivity
  double n_all_gates = 0.0;       // N_SK N^k m
  double log2_n_t_upper = 0.0;    // N_All log2(n_sk)
  double epsilon_total = 0.0;     // eps1 + 2 eps2
  double headline_value = 0.0;    // N^{3k+2} tau^4 / eps_total^5
  bool assumption_holds = true;   // 2 ln2 c N^{2k} tau / eps1 >= b
};

CensusReport census(const CensusInputs& inputs);

}  // namespace dissim

#endif  // DISSIM_DILATION_HPP
