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

#include "dissim/netcount.hpp"

using namespace dissim;

TEST_SUITE("netcount") {

TEST_CASE("upper bounds at small dimension") {
  const NetBounds nb = net_bounds(2.0, 0.1);
  CHECK(nb.log2_upper_hs == doctest::Approx(4.0 * std::log2(25.0)).epsilon(1e-14));
  CHECK(nb.log2_upper_hs == doctest::Approx(18.5754).epsilon(1e-5));
  CHECK(nb.log2_upper_p_1norm == doctest::Approx(4.0 * std::log2(50.0)).epsilon(1e-14));
  CHECK_FALSE(nb.lower_bounds_valid);  // D = 2 < 3

  CHECK_THROWS_AS((void)net_bounds(2.0, 1.5), ValidationError);
  CHECK_THROWS_AS((void)net_bounds(1.0, 0.1), ValidationError);
}

TEST_CASE("sphere-count lower bound matches the closed form at D = 3") {
  const NetBounds nb = net_bounds(3.0, 0.1);
  CHECK(nb.lower_bounds_valid);
  const double expect = std::log2(15.0 * M_PI / 8.0 * 1e5);
  CHECK(nb.log2_lower_hs == doctest::Approx(expect).epsilon(1e-13));
  CHECK(nb.log2_lower_hs == doctest::Approx(19.168).epsilon(1e-4));

  // The gamma-ratio prefactor grows with D, so 15 pi / 8 is its floor.
  for (double dim : {3.0, 4.0, 7.0, 16.0}) {
    const NetBounds b = net_bounds(dim, 0.1);
    const double prefactor =
        b.log2_lower_hs - (2.0 * dim - 1.0) * std::log2(10.0);
    CHECK(prefactor >= std::log2(15.0 * M_PI / 8.0) - 1e-12);
  }

  // Lower exponent 2D-1 sits below the upper exponent 2D.
  CHECK(nb.log2_lower_hs < nb.log2_upper_hs);
}

TEST_CASE("gamma ratio: closed form, lgamma and asymptotics agree") {
  // Half-integer argument.
  CHECK(log2_gamma_ratio_half(std::log2(3.5)) ==
        doctest::Approx((std::lgamma(4.0) - std::lgamma(3.5)) / std::log(2.0)).epsilon(1e-13));
  // Continuity across the representable/asymptotic switch.
  const double at_50 = log2_gamma_ratio_half(50.0);
  CHECK(at_50 == doctest::Approx(0.5 * 50.0).epsilon(1e-10));
  const double at_51 = log2_gamma_ratio_half(51.0);
  CHECK(at_51 == doctest::Approx(25.5).epsilon(1e-10));
  // Huge log-domain arguments stay finite.
  CHECK(log2_gamma_ratio_half(1000.0) == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("log-domain evaluation survives astronomically large dimensions") {
  // D = 2^1000: all outputs finite, dominated by (2D) log2(1/eps) terms.
  const NetBounds nb = net_bounds_dn(2, 1000, 0.01);
  CHECK(std::isfinite(nb.log2_upper_hs));
  CHECK(std::isfinite(nb.log2_lower_hs));
  CHECK(std::isfinite(nb.log2_lower_s_1norm));
  CHECK(nb.lower_bounds_valid);
  const double two_d = 2.0 * std::exp2(1000.0);
  CHECK(nb.log2_upper_hs == doctest::Approx(two_d * std::log2(250.0)).epsilon(1e-12));
  CHECK(nb.log2_lower_hs > 0.99 * two_d * std::log2(100.0));

  // Reproducible: identical inputs, identical outputs.
  const NetBounds nb2 = net_bounds_dn(2, 1000, 0.01);
  CHECK(nb.log2_lower_s_1norm == nb2.log2_lower_s_1norm);

  // A qutrit lattice with 500 sites still evaluates directly.
  const NetBounds qutrit = net_bounds_dn(3, 500, 0.1);
  CHECK(std::isfinite(qutrit.log2_lower_s_1norm));

  // A million sites: evaluated doubles saturate, the affine forms stay exact.
  const NetBounds million = net_bounds_dn(2, 1000000, 0.01);
  CHECK_FALSE(million.values_evaluated);
  CHECK(million.log2_dim == 1000000.0);
  CHECK(std::isfinite(million.lower_s_1norm_form.slope_per_2dim));
  CHECK(std::isfinite(million.lower_s_1norm_form.offset));
  CHECK(million.lower_s_1norm_form.slope_per_2dim ==
        doctest::Approx(std::log2(25.0)).epsilon(1e-14));
}

TEST_CASE("density-matrix chain stays under the projector construction") {
  for (double dim : {3.0, 5.0, 9.0}) {
    for (double eps : {0.2, 0.05, 0.01}) {
      const NetBounds nb = net_bounds(dim, eps);
      // The chain subtracts the phase-net cost from the 4eps state-vector
      // count, so it sits below the plain projector lower bound at 2eps.
      const double projector_lower =
          nb.log2_lower_hs - (2.0 * dim - 1.0) * std::log2(1.0 / eps) +
          (2.0 * dim - 1.0) * std::log2(1.0 / (4.0 * eps));
      CHECK(nb.log2_lower_s_1norm <= projector_lower + 1e-9);
      // And below the upper bounds.
      CHECK(nb.log2_lower_hs <= nb.log2_upper_hs);
      CHECK(nb.log2_lower_s_1norm <= nb.log2_upper_p_1norm);
    }
  }
}

TEST_CASE("reachability gap: finite crossover, no re-crossing") {
  GapInputs in;
  in.locality = 2;
  in.local_dim = 2;
  in.tau_coeff = 1.0;
  in.tau_degree = 2;
  in.epsilon = 0.01;
  in.c = 290.0;  // constants at a = 1, d = 2, k = 2
  in.b = 36.0;
  in.scan_max_sites = 64;
  const GapReport report = reachability_gap(in);
  REQUIRE(report.crossover_sites.has_value());
  CHECK(report.no_recrossing);
  // N = 1 has D = 2 < 3: flagged, no claim.
  CHECK_FALSE(report.rows.front().lower_valid);
  // The gap is positive through the base range and negative at the end.
  for (const auto& row : report.rows) {
    if (row.lower_valid && row.num_sites < *report.crossover_sites) CHECK(row.gap >= 0.0);
    if (row.num_sites > *report.crossover_sites) CHECK(row.gap < 0.0);
  }
  // Doubling N grows the net lower bound monotonically.
  double prev = -1.0;
  for (const auto& row : report.rows) {
    if (!row.lower_valid) continue;
    CHECK(row.log2_lower_s > prev);
    prev = row.log2_lower_s;
  }
}

}  // TEST_SUITE
