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

#ifndef DISSIM_NORMS_HPP
#define DISSIM_NORMS_HPP

#include <cstdint>

#include "dissim/superop.hpp"

namespace dissim {

/// Schatten p-norm ||A||_p = (tr |A|^p)^(1/p) for p in {1, 2, inf};
/// exact via SVD (p = 2 via the Frobenius sum).
double schatten_norm(const CMatrix& a, double p);
inline double trace_norm(const CMatrix& a) { return schatten_norm(a, 1.0); }

/// dist(rho, sigma) = (1/2) ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

struct NormEstimate {
  enum class Kind { Exact, LowerBound };
  enum class Method { Spectral, ExtremePointSearch };

  double value = 0.0;
  Kind kind = Kind::LowerBound;
  Method method = Method::ExtremePointSearch;
  long samples = 0;
  std::uint64_t seed = 0;
  /// Width of the grid certificate (qubit path): the true value lies within
  /// [value, value + certified_slack].
  double certified_slack = 0.0;
};

struct NormOptions {
  long budget = 10000;        // Haar samples (dimension > 2)
  int restarts = 32;          // ascent starts
  double step = 1e-2;         // initial ascent step
  int max_iterations = 500;
  double convergence = 1e-10;
  std::uint64_t seed = 0;
};

/// Induced (1->1)-norm restricted to Hermitian inputs,
/// sup over ||A||_1 = 1, A = A^dag of ||S(A)||_1, attained on +-|psi><psi|.
///
/// For qubit superoperators the pure-state manifold is scanned on a
/// 10^6-point Bloch grid and refined by local ascent; the grid Lipschitz
/// bound is recorded as certified_slack and the result is labeled exact.
/// Larger dimensions use Haar samples plus multi-start projected gradient
/// ascent and are labeled lower-bound. Deterministic given the seed; a
/// larger budget extends the same sample stream (the estimate never drops).
NormEstimate one_to_one_norm_hermitian(const SuperOp& s, const NormOptions& opts = {});

/// CPT test: Choi positivity (min eigenvalue >= -tol) and trace preservation
/// (residual <= tol), with diagnostics.
inline CptDiagnostics is_cpt(const SuperOp& s, double tol) { return check_cpt(s, tol); }

}  // namespace dissim

#endif  // DISSIM_NORMS_HPP
