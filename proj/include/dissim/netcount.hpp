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

#ifndef DISSIM_NETCOUNT_HPP
#define DISSIM_NETCOUNT_HPP

#include <optional>
#include <vector>

#include "dissim/dilation.hpp"

namespace dissim {

/// Every covering-number bound here is log2 of a cardinality of the form
/// slope * 2D + offset in the Hilbert dimension D, with slope and offset
/// ordinary doubles. The affine form never overflows, for D = d^N up to
/// N ~ 10^6; the evaluated double is additionally provided while 2D itself
/// is representable (log2_dim <= ~1020, covering D = 2^1000).
struct AffineInDim {
  double slope_per_2dim = 0.0;
  double offset = 0.0;

  double evaluate(double two_dim) const { return slope_per_2dim * two_dim + offset; }
};

struct NetBounds {
  double log2_dim = 1.0;  // log2 of the Hilbert dimension D (exact for d^N)
  double epsilon = 0.1;
  bool values_evaluated = false;  // plain log2 fields below are finite doubles

  double log2_upper_hs = 0.0;       // state vectors, Hilbert space norm: 2D log2(5/(2 eps))
  double log2_upper_p_1norm = 0.0;  // projectors, any p >= 1: 2D log2(5/eps)
  double log2_lower_hs = 0.0;       // 2 sqrt(pi) G(D+1/2)/G(D) (1/eps)^{2D-1}
  double log2_lower_s_1norm = 0.0;  // density matrices via the projector chain
  double log2_lower_omega_form = 0.0;  // (2D-3) log2(1/(4 eps)), the asymptotic form
  bool lower_bounds_valid = false;     // the sphere-cap argument needs D >= 3

  AffineInDim upper_hs_form;
  AffineInDim upper_p_1norm_form;
  AffineInDim lower_hs_form;
  AffineInDim lower_s_1norm_form;
};

/// log2(Gamma(x + 1/2) / Gamma(x)) for x > 0 given as log2(x). Exact product
/// form for small integer and half-integer x, log-gamma for representable x,
/// leading-order asymptotics beyond.
double log2_gamma_ratio_half(double log2_x);

/// Bounds for an explicitly given dimension.
NetBounds net_bounds(double dim, double epsilon);
/// Bounds for D = d^N, evaluated in log domain.
NetBounds net_bounds_dn(int d, long num_sites, double epsilon);

struct GapRow {
  long num_sites = 0;
  double tau = 0.0;
  double log2_n_t = 0.0;
  double log2_lower_s = 0.0;
  double gap = 0.0;  // log2_n_t - log2_lower_s; negative once the net wins
  bool lower_valid = false;
};

struct GapInputs {
  int locality = 2;
  int local_dim = 2;
  double tau_coeff = 1.0;  // tau(N) = tau_coeff * N^tau_degree
  int tau_degree = 2;
  double epsilon = 0.01;   // total accuracy; split eps1 = eps/2, eps2 = eps/4
  double c = 82.0;
  double b = 0.0;
  double c_sk = 1.0;
  double alpha = 4.0;
  long n_sk = 3;
  long scan_max_sites = 64;   // always scanned at least this far
  long hard_cap_sites = 4096; // adaptive extension limit when hunting the crossover
};

struct GapReport {
  std::vector<GapRow> rows;
  std::optional<long> crossover_sites;  // first N with a negative gap
  bool no_recrossing = true;            // gap never returns to >= 0 afterwards
};

/// Circuit-census growth against the state-space net lower bound, scanned
/// over system sizes. The scan extends past scan_max_sites (doubling, up to
/// hard_cap_sites) until the crossover is found.
GapReport reachability_gap(const GapInputs& inputs);

}  // namespace dissim

#endif  // DISSIM_NETCOUNT_HPP
