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

#include "dissim/dilation.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace dissim {

KrausSet kraus_from_superop(const SuperOp& s, double rank_tol) {
  const CptDiagnostics diag = check_cpt(s, 1e-9);
  if (!diag.ok) {
    throw ValidationError("kraus_from_superop: input is not CPT (choi_min_eig = " +
                          std::to_string(diag.choi_min_eig) + ")");
  }
  const Index d = s.op_dim();
  const CMatrix choi = choi_matrix(s);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (choi + choi.adjoint()));

  KrausSet kraus;
  // Descending eigenvalue order for a deterministic, dominant-first set.
  for (Index a = d * d - 1; a >= 0; --a) {
    const double lambda = es.eigenvalues()(a);
    if (lambda <= rank_tol) break;
    const CVector v = es.eigenvectors().col(a);
    CMatrix k(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index ip = 0; ip < d; ++ip) k(ip, i) = std::sqrt(lambda) * v(i * d + ip);
    }
    kraus.operators.push_back(std::move(k));
  }

  CMatrix completeness = CMatrix::Zero(d, d);
  CMatrix reconstruction = CMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus.operators) {
    completeness += k.adjoint() * k;
    reconstruction += kron(k.conjugate(), k);
  }
  kraus.completeness_residual = spectral_norm(completeness - CMatrix::Identity(d, d));
  if (kraus.completeness_residual > 1e-9) {
    throw ValidationError("kraus_from_superop: completeness residual " +
                          std::to_string(kraus.completeness_residual));
  }
  const double recon_res = spectral_norm(reconstruction - s.mat);
  if (recon_res > 1e-9) {
    throw ValidationError("kraus_from_superop: reconstruction residual " +
                          std::to_string(recon_res));
  }
  return kraus;
}

StinespringDilation stinespring(const KrausSet& kraus) {
  if (kraus.operators.empty()) throw ValidationError("stinespring: empty Kraus set");
  if (kraus.completeness_residual > 1e-9) {
    throw ValidationError("stinespring: completeness residual " +
                          std::to_string(kraus.completeness_residual) + " too large");
  }
  const Index d = kraus.op_dim();
  const Index anc = d * d;  // padded to the largest possible Kraus rank
  if (static_cast<Index>(kraus.operators.size()) > anc) {
    throw ValidationError("stinespring: more Kraus operators than the padded ancilla holds");
  }
  const Index full = d * anc;

  StinespringDilation dil;
  dil.system_dim = d;
  dil.ancilla_dim = anc;
  dil.unitary = CMatrix::Zero(full, full);

  // Isometry columns sit at composite input indices (j_sys, 0_anc) = j * anc,
  // so that U acting on rho (x) |0><0| realizes the channel.
  for (Index j = 0; j < d; ++j) {
    for (std::size_t mu = 0; mu < kraus.operators.size(); ++mu) {
      for (Index i = 0; i < d; ++i) {
        dil.unitary(i * anc + static_cast<Index>(mu), j * anc) = kraus.operators[mu](i, j);
      }
    }
  }

  std::vector<Index> filled;
  filled.reserve(full);
  for (Index j = 0; j < d; ++j) filled.push_back(j * anc);

  // Orthonormal completion: standard basis columns in index order, doubly
  // orthogonalized, skipping candidates within 1e-8 of the current span.
  Index next_free = 0;
  for (Index cand = 0; cand < full && static_cast<Index>(filled.size()) < full; ++cand) {
    CVector v = CVector::Zero(full);
    v(cand) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index col : filled) {
        const auto u = dil.unitary.col(col);
        v -= u * (u.dot(v));
      }
    }
    const double norm = v.norm();
    if (norm <= 1e-8) continue;
    while (std::find(filled.begin(), filled.end(), next_free) != filled.end()) ++next_free;
    dil.unitary.col(next_free) = v / norm;
    filled.push_back(next_free);
  }
  if (static_cast<Index>(filled.size()) != full) {
    throw ValidationError("stinespring: unitary completion failed");
  }
  return dil;
}

CMatrix dilated_apply(const StinespringDilation& dil, const CMatrix& rho) {
  const Index d = dil.system_dim;
  const Index anc = dil.ancilla_dim;
  if (rho.rows() != d || rho.cols() != d) {
    throw ValidationError("dilated_apply: state dimension mismatch");
  }
  CMatrix full = CMatrix::Zero(d * anc, d * anc);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) full(i * anc, j * anc) = rho(i, j);
  }
  full = dil.unitary * full * dil.unitary.adjoint();
  CMatrix out = CMatrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      Complex acc(0.0, 0.0);
      for (Index mu = 0; mu < anc; ++mu) acc += full(i * anc + mu, j * anc + mu);
      out(i, j) = acc;
    }
  }
  return out;
}

CensusReport census(const CensusInputs& in) {
  if (in.epsilon1 <= 0.0 || in.epsilon2 <= 0.0) {
    throw ValidationError("census: accuracies must be positive");
  }
  if (in.num_sites < 1 || in.locality < 1 || in.local_dim < 2 || in.tau < 0.0 ||
      in.n_sk < 2 || in.c < 0.0) {
    throw ValidationError("census: invalid inputs");
  }
  CensusReport rep;
  rep.inputs = in;
  rep.epsilon_total = in.epsilon1 + 2.0 * in.epsilon2;

  const double nn = static_cast<double>(in.num_sites);
  const double n_pow_k = std::pow(nn, in.locality);
  const double n_pow_2k = n_pow_k * n_pow_k;
  rep.assumption_holds =
      2.0 * std::log(2.0) * in.c * n_pow_2k * in.tau / in.epsilon1 >= in.b;

  rep.headline_value = std::pow(nn, 3.0 * in.locality + 2.0) * std::pow(in.tau, 4.0) /
                       std::pow(rep.epsilon_total, 5.0);

  rep.m = std::ceil(2.0 * in.c * n_pow_2k * in.tau * in.tau / in.epsilon1);
  if (rep.m <= 0.0) {
    // Zero horizon or zero generator: nothing to count.
    return rep;
  }
  rep.epsilon_sk = in.epsilon2 / (n_pow_k * rep.m);
  const double log2_inv = std::log2(1.0 / rep.epsilon_sk);
  rep.n_sk_gates = std::ceil(in.c_sk * std::pow(log2_inv, in.alpha));
  rep.n_sk_gates_ln = std::ceil(in.c_sk * std::pow(std::log(1.0 / rep.epsilon_sk), in.alpha));
  rep.n_all_gates = rep.n_sk_gates * n_pow_k * rep.m;
  rep.log2_n_t_upper = rep.n_all_gates * std::log2(static_cast<double>(in.n_sk));
  return rep;
}

}  // namespace dissim
