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

#include "dissim/dilation.hpp"
#include "dissim/norms.hpp"
#include "test_models.hpp"

using namespace dissim;
using namespace dissim::testing;

TEST_SUITE("dilation") {

TEST_CASE("kraus extraction: identity, damping, depolarizing") {
  const KrausSet id = kraus_from_superop(SuperOp::identity(2));
  REQUIRE(id.operators.size() == 1);
  CHECK(max_abs(id.operators[0] - CMatrix::Identity(2, 2)) < 1e-12);
  CHECK(id.completeness_residual <= 1e-12);

  // Damping at time t: diag(1, e^{-t}) and sqrt(1 - e^{-2t}) |0><1|.
  const double t = 0.7;
  const KrausSet damp = kraus_from_superop(exact_propagator(amplitude_damping(), 0.0, t).superop);
  REQUIRE(damp.operators.size() == 2);
  const double decay = std::exp(-t);
  const double leak = std::sqrt(1.0 - decay * decay);
  // Eigendecomposition fixes phases arbitrarily; compare |entries|.
  for (const auto& k : damp.operators) {
    const double top_left = std::abs(k(0, 0));
    if (top_left > 0.5) {
      CHECK(std::abs(k(1, 1)) == doctest::Approx(decay).epsilon(1e-10));
      CHECK(top_left == doctest::Approx(1.0).epsilon(1e-10));
    } else {
      CHECK(std::abs(k(0, 1)) == doctest::Approx(leak).epsilon(1e-10));
      CHECK(max_abs(k) == doctest::Approx(leak).epsilon(1e-10));
    }
  }

  // Completely depolarizing qubit channel: A -> tr(A)/2 * 1.
  CMatrix dep = CMatrix::Zero(4, 4);
  dep(0, 0) = dep(0, 3) = dep(3, 0) = dep(3, 3) = 0.5;
  const KrausSet kdep = kraus_from_superop(SuperOp(dep));
  CHECK(kdep.operators.size() == 4);
  CHECK(kdep.completeness_residual <= 1e-12);
  CMatrix recon = CMatrix::Zero(4, 4);
  for (const auto& k : kdep.operators) recon += kron(k.conjugate(), k);
  CHECK(spectral_norm(recon - dep) <= 1e-12);

  // Non-CPT input is rejected.
  CMatrix swap = CMatrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CHECK_THROWS_AS((void)kraus_from_superop(SuperOp(swap)), ValidationError);
}

TEST_CASE("stinespring dilation: isometry, unitarity, roundtrip") {
  const KrausSet id = kraus_from_superop(SuperOp::identity(2));
  const StinespringDilation udil = stinespring(id);
  CHECK(udil.ancilla_dim == 4);
  CHECK(spectral_norm(udil.unitary.adjoint() * udil.unitary -
                      CMatrix::Identity(8, 8)) <= 1e-10);
  Rng rng(3);
  const CMatrix rho = random_density(rng, 2).matrix();
  CHECK(max_abs(dilated_apply(udil, rho) - rho) < 1e-10);

  // Damping at t = ln 2: populations quarter, coherences halve.
  const double t = std::log(2.0);
  const SuperOp damp_chan = exact_propagator(amplitude_damping(), 0.0, t).superop;
  const StinespringDilation damp = stinespring(kraus_from_superop(damp_chan));
  CMatrix mix(2, 2);
  mix << 0.5, 0.5, 0.5, 0.5;
  const CMatrix out = dilated_apply(damp, mix);
  CHECK(out(1, 1).real() == doctest::Approx(0.5 / 4.0).epsilon(1e-10));
  CHECK(out(0, 1).real() == doctest::Approx(0.5 / 2.0).epsilon(1e-10));
}

TEST_CASE("dilation roundtrip over random channels and states") {
  Rng rng(101);
  NormOptions opts;
  for (int rep = 0; rep < 10; ++rep) {
    const Index rank = 1 + static_cast<Index>(rng.uniform01() * 4.0);
    const SuperOp channel = random_cpt_channel(rng, 2, rank);
    const KrausSet kraus = kraus_from_superop(channel);
    CHECK(kraus.completeness_residual <= 1e-9);

    // V^dag V = 1 in the top-left block sense: the dilation is unitary.
    const StinespringDilation dil = stinespring(kraus);
    CHECK(spectral_norm(dil.unitary.adjoint() * dil.unitary -
                        CMatrix::Identity(8, 8)) <= 1e-10);

    for (int srep = 0; srep < 100; ++srep) {
      const CMatrix rho = random_density(rng, 2).matrix();
      const CMatrix via_dilation = dilated_apply(dil, rho);
      const CMatrix direct = apply_superop(channel, rho);
      CHECK(0.5 * trace_norm(via_dilation - direct) <= 1e-9);
    }
  }
}

TEST_CASE("census: worked chain, zero horizon, scaling") {
  CensusInputs in;
  in.num_sites = 2;
  in.locality = 1;
  in.local_dim = 2;
  in.tau = 1.0;
  in.epsilon1 = 0.1;
  in.epsilon2 = 0.05;
  in.c_sk = 1.0;
  in.alpha = 4.0;
  in.n_sk = 3;
  in.c = 82.0;
  in.b = 20.0;
  const CensusReport rep = census(in);
  CHECK(rep.m == 6560.0);
  CHECK(rep.epsilon_sk == doctest::Approx(0.05 / 13120.0).epsilon(1e-12));
  // log2(1/eps_sk) = log2(262400) ~ 18.0014; its fourth power ceils to 105009.
  CHECK(rep.n_sk_gates == doctest::Approx(105009.0).epsilon(1e-12));
  CHECK(rep.n_all_gates == doctest::Approx(105009.0 * 13120.0).epsilon(1e-12));
  CHECK(rep.log2_n_t_upper ==
        doctest::Approx(rep.n_all_gates * std::log2(3.0)).epsilon(1e-12));
  CHECK(rep.epsilon_total == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(rep.assumption_holds);

  CensusInputs zero = in;
  zero.tau = 0.0;
  const CensusReport zrep = census(zero);
  CHECK(zrep.m == 0.0);
  CHECK(zrep.log2_n_t_upper == 0.0);

  // Homogeneity of the headline form: doubling tau multiplies it by 16.
  CensusInputs twice = in;
  twice.tau = 2.0;
  CHECK(census(twice).headline_value == doctest::Approx(16.0 * rep.headline_value).epsilon(1e-12));
}

TEST_CASE("census is deterministic and monotone") {
  CensusInputs in;
  in.num_sites = 4;
  in.locality = 2;
  in.tau = 2.0;
  in.epsilon1 = 0.05;
  in.epsilon2 = 0.02;
  in.c = 290.0;
  const CensusReport base = census(in);
  CHECK(census(in).log2_n_t_upper == base.log2_n_t_upper);  // bit-identical

  CensusInputs more_sites = in;
  more_sites.num_sites = 5;
  CHECK(census(more_sites).log2_n_t_upper >= base.log2_n_t_upper);
  CensusInputs longer = in;
  longer.tau = 3.0;
  CHECK(census(longer).log2_n_t_upper >= base.log2_n_t_upper);
  CensusInputs tighter1 = in;
  tighter1.epsilon1 = 0.02;
  CHECK(census(tighter1).log2_n_t_upper >= base.log2_n_t_upper);
  CensusInputs tighter2 = in;
  tighter2.epsilon2 = 0.01;
  CHECK(census(tighter2).log2_n_t_upper >= base.log2_n_t_upper);

  CHECK_THROWS_AS((void)census(CensusInputs{.epsilon1 = 0.0}), ValidationError);
}

}  // TEST_SUITE
