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

#ifndef DISSIM_CONFIG_HPP
#define DISSIM_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "dissim/dilation.hpp"
#include "dissim/netcount.hpp"
#include "dissim/trotter.hpp"

namespace dissim {

struct ObservableSpec {
  std::string name;
  LocalOperator op;
};

struct PlanSettings {
  double tau = 1.0;
  std::optional<long> m;
  std::optional<double> epsilon;
  StepMode step_mode = StepMode::ExactLocal;
  TermOrdering ordering;
};

struct VerifySettings {
  bool oracle = true;
  long norm_budget = 10000;
  std::uint64_t seed = 12345;
  std::vector<long> m_values;                 // defaults to the plan's m
  std::vector<TermOrdering> orderings;        // defaults to the plan's ordering
};

struct NetsSettings {
  double epsilon = 0.01;
  std::optional<double> dimension;  // explicit D; defaults to the model's d^N
  std::optional<GapInputs> gap;
};

/// Fully validated run configuration. Parsed from a JSON document with a
/// strict schema: unknown keys are rejected with their key path.
struct RunConfig {
  std::optional<KLocalLiouvillian> model;
  PlanSettings plan;
  /// Initial state for simulate: an explicit ket, the maximally mixed state,
  /// or (default) the all-zero product state.
  std::optional<CVector> initial_ket;
  bool initial_maximally_mixed = false;
  std::vector<ObservableSpec> observables;
  long output_stride = 1;
  VerifySettings verification;
  std::optional<CensusInputs> census_inputs;
  bool census_constants_from_model = false;
  std::optional<NetsSettings> nets;
};

/// Parse and validate a configuration document (UTF-8 JSON text).
RunConfig parse_config(const std::string& text);

/// Canonical serialization; parse -> serialize is idempotent after one
/// normalization pass.
std::string serialize_config(const RunConfig& config);

/// Pauli expression parser for d = 2 operators: sums of terms
/// `coeff * [IXYZ+-]{n}` where `+`/`-` denote the raising |1><0| and
/// lowering |0><1| operators and coeff is a real literal, an `i` form
/// (e.g. `0.5i`), or a complex pair `(re,im)`.
CMatrix parse_pauli_expression(const std::string& text, int num_sites_in_support);

}  // namespace dissim

#endif  // DISSIM_CONFIG_HPP
