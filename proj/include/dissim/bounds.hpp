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

#ifndef DISSIM_BOUNDS_HPP
#define DISSIM_BOUNDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dissim/model.hpp"

namespace dissim {

/// Local norm constants over a time window. Two published forms of b exist
/// (4a + 8 d^k a^2 and 4a^2 + 8 a^2 d^k); they agree only at a = 1, so the
/// certified bound uses their maximum and reports both.
struct LocalConstants {
  double a = 0.0;
  double b_lemma = 0.0;   // 4a + 8 d^k a^2
  double b_thm2 = 0.0;    // 2a^2 (2 + 4 d^k)
  double b_used = 0.0;    // max of the two
  double c = 0.0;         // 2a^2 + 8a^3 d^k + 16 a^4 d^{2k}
  int d = 2;
  int k = 1;
  double t0 = 0.0;
  double t1 = 0.0;
};

LocalConstants local_constants(const KLocalLiouvillian& liou, double t0, double t1);
/// Constants from a given a (formula evaluation without a model).
LocalConstants constants_from_a(double a, int d, int k, double t0 = 0.0, double t1 = 0.0);

/// b_v = 4 a_v + 8 d^k a_v^2 evaluated at a pointwise a value.
double b_of_a(double a, int d, int k);
/// c_{r,u} = 2 a_r a_u + 4 (a_r a_u^2 + a_r^2 a_u) d^k + 16 a_r^2 a_u^2 d^{2k}.
double c_of_a(double a_r, double a_u, int d, int k);

/// c K^2 tau^2 exp(b tau / m) / m with b = b_used.
double theorem1_bound(const LocalConstants& consts, long K, double tau, long m);

/// Single split-off step: (t-s)^2 exp(b (t-s)) c K.
double product_step_bound(const LocalConstants& consts, long K, double s, double t);

/// (1/3) b_used (t-s)^2.
double avg_liouvillian_bound(const LocalConstants& consts, double s, double t);

struct GeneralBound {
  double tight = 0.0;   // iterated integrals of the formula integrands
  double coarse = 0.0;  // sup-based form; tight <= coarse always
};

/// Split error bound for a strictly local part (single term) against a sum of
/// K strictly local terms, with the commutator and generator norms replaced
/// by their formula bounds 2 c_{r,u} K and b_v / 2 so the result stays an
/// a-priori certificate. Exact segment sums for piecewise-constant schedules;
/// Gauss-Legendre quadrature (quadrature_nodes per smooth segment per axis)
/// otherwise.
GeneralBound general_trotter_bound(const KLocalLiouvillian& strictly_local_part,
                                   const KLocalLiouvillian& k_local_part, double s, double t,
                                   int quadrature_nodes = 32);

/// exp(integral of sum_terms b(a_term(v))/2 dv): certified bound on the
/// backward propagator norm.
double backward_norm_bound(const KLocalLiouvillian& liou, double s, double t,
                           int quadrature_nodes = 32);

struct BoundReport {
  LocalConstants constants;
  long K = 0;
  double tau = 0.0;
  long m = 0;
  std::optional<double> epsilon_target;
  double theorem1_value = 0.0;
  double per_step_product_value = 0.0;
  std::optional<double> general_bound_value;
  double avg_step_value = 0.0;
  std::vector<std::pair<std::string, std::string>> provenance;
};

/// Assembles constants, resolves m (given directly), and evaluates every
/// bound, with a formula provenance string per value.
BoundReport full_report(const KLocalLiouvillian& liou, double tau, long m);
/// Resolves m from a target accuracy first.
BoundReport full_report_for_epsilon(const KLocalLiouvillian& liou, double tau, double epsilon);

}  // namespace dissim

#endif  // DISSIM_BOUNDS_HPP
