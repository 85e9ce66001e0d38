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

#include "dissim/netcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dissim {

double log2_gamma_ratio_half(double log2_x) {
  static const double kLn2 = std::log(2.0);
  if (!(log2_x > -1022.0)) throw ValidationError("log2_gamma_ratio_half: x out of range");

  if (log2_x <= 9.0) {  // x <= 512: representable, maybe closed form
    const double x = std::exp2(log2_x);
    const double twice = 2.0 * x;
    if (std::abs(twice - std::round(twice)) < 1e-12 && x >= 0.5) {
      // Integer or half-integer x: Gamma(x+1/2)/Gamma(x) as an exact product
      // via the recursion Gamma(y+1) = y Gamma(y), anchored at Gamma(1/2) =
      // sqrt(pi) and Gamma(1) = 1.
      double log_num = 0.0;   // log Gamma(x + 1/2) relative to its anchor
      double log_den = 0.0;   // log Gamma(x) relative to its anchor
      const bool x_integer = std::abs(x - std::round(x)) < 1e-12;
      if (x_integer) {
        const long n = static_cast<long>(std::llround(x));
        // Gamma(n + 1/2) = sqrt(pi) * prod_{j=1..n} (j - 1/2); Gamma(n) = (n-1)!
        for (long j = 1; j <= n; ++j) log_num += std::log(j - 0.5);
        log_num += 0.5 * std::log(M_PI);
        for (long j = 2; j <= n - 1; ++j) log_den += std::log(static_cast<double>(j));
      } else {
        // x = n + 1/2: Gamma(n + 1) = n!; Gamma(n + 1/2) = sqrt(pi) prod (j - 1/2)
        const long n = static_cast<long>(std::llround(x - 0.5));
        for (long j = 2; j <= n; ++j) log_num += std::log(static_cast<double>(j));
        for (long j = 1; j <= n; ++j) log_den += std::log(j - 0.5);
        log_den += 0.5 * std::log(M_PI);
      }
      return (log_num - log_den) / kLn2;
    }
    // The lgamma difference keeps ~x * eps absolute error, fine up to here.
    return (std::lgamma(x + 0.5) - std::lgamma(x)) / kLn2;
  }
  // Large x: log Gamma(x+1/2) - log Gamma(x)
  //   = (1/2) log x - 1/(8x) + 1/(192 x^3) + O(x^-5),
  // already at 1e-15 relative accuracy for x > 512.
  const double inv_x = (log2_x > 1060.0) ? 0.0 : std::exp2(-log2_x);
  return 0.5 * log2_x + (-inv_x / 8.0 + inv_x * inv_x * inv_x / 192.0) / kLn2;
}

namespace {

NetBounds bounds_from_log2_dim(double log2_dim, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw ValidationError("net_bounds: epsilon must lie in (0, 1)");
  }
  if (log2_dim < 1.0) throw ValidationError("net_bounds: dimension must be >= 2");
  NetBounds nb;
  nb.log2_dim = log2_dim;
  nb.epsilon = epsilon;

  const double log2_inv_eps = std::log2(1.0 / epsilon);
  const double log2_inv_4eps = std::log2(1.0 / (4.0 * epsilon));
  const double log2_prefactor =
      std::log2(2.0 * std::sqrt(M_PI)) + log2_gamma_ratio_half(log2_dim);
  const double log2_phase_net = std::log2(std::ceil(1.0 / (epsilon * epsilon)));

  // Exact affine-in-2D forms; these never overflow.
  nb.upper_hs_form = {std::log2(5.0 / (2.0 * epsilon)), 0.0};
  nb.upper_p_1norm_form = {std::log2(5.0 / epsilon), 0.0};
  nb.lower_hs_form = {log2_inv_eps, log2_prefactor - log2_inv_eps};
  // Chain for density matrices: the projector net at 2 eps relates to the
  // state-vector net at 4 eps through the phase net of size ceil(1/eps^2).
  nb.lower_s_1norm_form = {log2_inv_4eps,
                           log2_prefactor - log2_inv_4eps - log2_phase_net};

  nb.lower_bounds_valid = log2_dim >= std::log2(3.0) - 1e-12;

  const double dim = std::exp2(log2_dim);
  nb.values_evaluated = std::isfinite(dim) && std::isfinite(2.0 * dim);
  if (nb.values_evaluated) {
    const double two_d = 2.0 * dim;
    nb.log2_upper_hs = nb.upper_hs_form.evaluate(two_d);
    nb.log2_upper_p_1norm = nb.upper_p_1norm_form.evaluate(two_d);
    if (nb.lower_bounds_valid) {
      nb.log2_lower_hs = nb.lower_hs_form.evaluate(two_d);
      nb.log2_lower_s_1norm = nb.lower_s_1norm_form.evaluate(two_d);
      nb.log2_lower_omega_form = (two_d - 3.0) * log2_inv_4eps;
    }
  } else {
    // Saturate: the affine forms carry the exact values.
    const double inf = std::numeric_limits<double>::infinity();
    nb.log2_upper_hs = inf;
    nb.log2_upper_p_1norm = inf;
    if (nb.lower_bounds_valid) {
      nb.log2_lower_hs = inf;
      nb.log2_lower_s_1norm = inf;
      nb.log2_lower_omega_form = inf;
    }
  }
  return nb;
}

}  // namespace

NetBounds net_bounds(double dim, double epsilon) {
  if (!(dim >= 2.0)) throw ValidationError("net_bounds: dimension must be >= 2");
  return bounds_from_log2_dim(std::log2(dim), epsilon);
}

NetBounds net_bounds_dn(int d, long num_sites, double epsilon) {
  if (d < 2 || num_sites < 1) throw ValidationError("net_bounds_dn: invalid (d, N)");
  const double log2_dim = static_cast<double>(num_sites) * std::log2(static_cast<double>(d));
  return bounds_from_log2_dim(log2_dim, epsilon);
}

GapReport reachability_gap(const GapInputs& in) {
  if (in.epsilon <= 0.0 || in.epsilon >= 1.0) {
    throw ValidationError("reachability_gap: epsilon must lie in (0, 1)");
  }
  if (in.scan_max_sites < 2) throw ValidationError("reachability_gap: scan range too small");

  GapReport report;
  auto evaluate = [&](long n) {
    GapRow row;
    row.num_sites = n;
    row.tau = in.tau_coeff * std::pow(static_cast<double>(n), in.tau_degree);
    CensusInputs ci;
    ci.num_sites = n;
    ci.locality = in.locality;
    ci.local_dim = in.local_dim;
    ci.tau = row.tau;
    ci.epsilon1 = in.epsilon / 2.0;
    ci.epsilon2 = in.epsilon / 4.0;
    ci.c_sk = in.c_sk;
    ci.alpha = in.alpha;
    ci.n_sk = in.n_sk;
    ci.c = in.c;
    ci.b = in.b;
    row.log2_n_t = census(ci).log2_n_t_upper;

    const NetBounds nb = net_bounds_dn(in.local_dim, n, in.epsilon);
    row.lower_valid = nb.lower_bounds_valid;
    if (row.lower_valid) {
      row.log2_lower_s = nb.log2_lower_s_1norm;
      row.gap = row.log2_n_t - row.log2_lower_s;
    }
    return row;
  };

  long scan_to = in.scan_max_sites;
  for (long n = 1; n <= scan_to; ++n) {
    GapRow row = evaluate(n);
    if (row.lower_valid && row.gap < 0.0 && !report.crossover_sites) {
      report.crossover_sites = n;
      // Scan a margin past the crossover to witness no re-crossing.
      scan_to = std::max(scan_to, std::min(2 * n, in.hard_cap_sites));
    } else if (report.crossover_sites && row.lower_valid && row.gap >= 0.0) {
      report.no_recrossing = false;
    }
    report.rows.push_back(row);
    // The crossover may lie past the requested range; keep hunting.
    if (n == scan_to && !report.crossover_sites && scan_to < in.hard_cap_sites) {
      scan_to = std::min(2 * scan_to, in.hard_cap_sites);
    }
  }
  return report;
}

}  // namespace dissim
