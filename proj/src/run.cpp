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

#include "dissim/run.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "dissim/bounds.hpp"
#include "dissim/norms.hpp"

namespace dissim {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file " + path.string());
  out << text;
}

TrotterPlan resolve_plan(const RunConfig& config, const RunOverrides& overrides) {
  if (!config.model) throw ValidationError("this subcommand requires a model");
  PlanSettings ps = config.plan;
  if (overrides.m) {
    ps.m = *overrides.m;
    ps.epsilon.reset();
  }
  if (overrides.epsilon) {
    ps.epsilon = *overrides.epsilon;
    ps.m.reset();
  }
  if (ps.m) return TrotterPlan(ps.tau, *ps.m, ps.step_mode, ps.ordering);
  const LocalConstants consts = local_constants(*config.model, 0.0, ps.tau);
  const long K = std::max(1, config.model->num_terms());
  TrotterPlan plan = TrotterPlan::for_epsilon(ps.tau, *ps.epsilon, consts.c, consts.b_used, K,
                                              ps.step_mode, ps.ordering);
  return plan;
}

json constants_to_json(const LocalConstants& c) {
  return json{{"a", c.a},           {"b_lemma", c.b_lemma}, {"b_thm2", c.b_thm2},
              {"b_used", c.b_used}, {"c", c.c},             {"d", c.d},
              {"k", c.k},           {"interval", json::array({c.t0, c.t1})}};
}

json bound_report_to_json(const BoundReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bounds";
  j["constants"] = constants_to_json(r.constants);
  j["K"] = r.K;
  j["tau"] = r.tau;
  j["m"] = r.m;
  if (r.epsilon_target) j["epsilon_target"] = *r.epsilon_target;
  j["theorem1_value"] = r.theorem1_value;
  j["per_step_product_value"] = r.per_step_product_value;
  if (r.general_bound_value) j["general_bound_value"] = *r.general_bound_value;
  j["avg_step_value"] = r.avg_step_value;
  json prov;
  for (const auto& [field, note] : r.provenance) prov[field] = note;
  j["provenance"] = std::move(prov);
  return j;
}

json census_to_json(const CensusReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "census";
  j["inputs"] = {{"num_sites", r.inputs.num_sites},
                 {"locality", r.inputs.locality},
                 {"local_dim", r.inputs.local_dim},
                 {"tau", r.inputs.tau},
                 {"epsilon1", r.inputs.epsilon1},
                 {"epsilon2", r.inputs.epsilon2},
                 {"c_sk", r.inputs.c_sk},
                 {"alpha", r.inputs.alpha},
                 {"n_sk", r.inputs.n_sk},
                 {"c", r.inputs.c},
                 {"b", r.inputs.b}};
  j["m"] = r.m;
  j["epsilon_sk"] = r.epsilon_sk;
  j["n_sk_gates"] = r.n_sk_gates;
  j["n_sk_gates_ln"] = r.n_sk_gates_ln;
  j["n_all_gates"] = r.n_all_gates;
  j["log2_n_t_upper"] = r.log2_n_t_upper;
  j["epsilon_total"] = r.epsilon_total;
  j["headline_value"] = r.headline_value;
  j["assumption_holds"] = r.assumption_holds;
  j["provenance"] = {
      {"m", "ceil(2 c N^{2k} tau^2 / epsilon1)"},
      {"epsilon_sk", "epsilon2 / (N^k m)"},
      {"n_sk_gates", "ceil(c_sk * log2(1/epsilon_sk)^alpha); _ln uses the natural log"},
      {"n_all_gates", "n_sk_gates * N^k * m"},
      {"log2_n_t_upper", "n_all_gates * log2(n_sk)"},
      {"headline_value", "N^{3k+2} tau^4 / epsilon_total^5 (asymptotic form, constant 1)"},
      {"assumption_holds", "2 ln(2) c N^{2k} tau / epsilon1 >= b"}};
  return j;
}

json nets_to_json(const NetBounds& nb) {
  return json{{"log2_dim", nb.log2_dim},
              {"epsilon", nb.epsilon},
              {"log2_upper_hs", nb.log2_upper_hs},
              {"log2_upper_p_1norm", nb.log2_upper_p_1norm},
              {"log2_lower_hs", nb.log2_lower_hs},
              {"log2_lower_s_1norm", nb.log2_lower_s_1norm},
              {"log2_lower_omega_form", nb.log2_lower_omega_form},
              {"lower_bounds_valid", nb.lower_bounds_valid}};
}

int run_simulate(const RunConfig& config, const std::filesystem::path& out_dir,
                 const RunOverrides& overrides, std::ostream* log) {
  const TrotterPlan plan = resolve_plan(config, overrides);
  const KLocalLiouvillian& model = *config.model;
  const Index dim = model.shape().dim();

  std::vector<CMatrix> embedded;
  embedded.reserve(config.observables.size());
  for (const auto& o : config.observables) embedded.push_back(embed_local(o.op, model.shape()));

  const DensityMatrix rho0 = [&] {
    if (config.initial_ket) return DensityMatrix::pure(*config.initial_ket);
    if (config.initial_maximally_mixed) return DensityMatrix::maximally_mixed(dim);
    CVector psi0 = CVector::Zero(dim);  // |0...0>
    psi0(0) = 1.0;
    return DensityMatrix::pure(psi0);
  }();

  std::string csv;
  csv += "time";
  for (const auto& o : config.observables) csv += "," + o.name;
  csv += ",trace_residual,min_eig_spotcheck\n";

  auto emit_row = [&](double time, const CMatrix& rho, double trace_residual,
                      const std::optional<double>& min_eig) {
    csv += format_double(time);
    for (const auto& e : embedded) {
      csv += "," + format_double((e * rho).trace().real());
    }
    csv += "," + format_double(trace_residual);
    csv += ",";
    if (min_eig) csv += format_double(*min_eig);
    csv += "\n";
  };

  emit_row(0.0, rho0.matrix(), 0.0, std::nullopt);
  const long stride = config.output_stride;
  long last_logged = 0;
  EvolveResult result = trotter_evolve(
      model, rho0, plan, [&](long step, double time, const CMatrix& rho, const StepLog::Entry& e) {
        if (step % stride == 0 || step == plan.m) {
          emit_row(time, rho, e.trace_residual, e.min_eigenvalue);
          last_logged = step;
        }
      });
  (void)last_logged;
  write_text(out_dir / "trajectory.csv", csv);
  if (log) {
    *log << "simulate: wrote " << (out_dir / "trajectory.csv").string() << " (m = " << plan.m
         << ", tau = " << plan.tau << ")\n";
  }
  // Optional end-of-run cross-check against the dense oracle propagator.
  if (config.verification.oracle) {
    if (dim * dim <= 4096) {
      const SuperOp oracle = exact_propagator(model, 0.0, plan.tau).superop;
      CMatrix expect = apply_superop(oracle, rho0.matrix());
      expect = 0.5 * (expect + expect.adjoint().eval());
      const double dist = 0.5 * schatten_norm(expect - result.state.matrix(), 1.0);
      if (log) {
        *log << "simulate: oracle cross-check, final-state trace distance = "
             << format_double(dist) << "\n";
      }
    } else if (log) {
      *log << "simulate: oracle cross-check skipped (D^2 above the dense guard)\n";
    }
  }
  return kExitOk;
}

int run_bounds(const RunConfig& config, const std::filesystem::path& out_dir,
               const RunOverrides& overrides, std::ostream* log) {
  if (!config.model) throw ValidationError("bounds requires a model");
  PlanSettings ps = config.plan;
  if (overrides.m) {
    ps.m = *overrides.m;
    ps.epsilon.reset();
  }
  if (overrides.epsilon) {
    ps.epsilon = *overrides.epsilon;
    ps.m.reset();
  }
  const BoundReport report = ps.m ? full_report(*config.model, ps.tau, *ps.m)
                                  : full_report_for_epsilon(*config.model, ps.tau, *ps.epsilon);
  write_text(out_dir / "bounds_report.json", bound_report_to_json(report).dump(2) + "\n");
  if (log) {
    *log << "bounds: theorem1_value = " << format_double(report.theorem1_value)
         << " (m = " << report.m << ")\n";
  }
  return kExitOk;
}

int run_verify(const RunConfig& config, const std::filesystem::path& out_dir,
               const RunOverrides& overrides, std::ostream* log) {
  const KLocalLiouvillian& model = *config.model;
  const TrotterPlan base_plan = resolve_plan(config, overrides);

  std::vector<long> m_values = config.verification.m_values;
  if (overrides.m) m_values = {*overrides.m};
  if (m_values.empty()) m_values = {base_plan.m};
  std::vector<TermOrdering> orderings = config.verification.orderings;
  if (orderings.empty()) orderings = {base_plan.ordering};

  NormOptions nopts;
  nopts.budget = config.verification.norm_budget;
  nopts.seed = config.verification.seed;

  json rows = json::array();
  bool all_ok = true;
  for (long m : m_values) {
    const BoundReport bounds = full_report(model, base_plan.tau, m);
    for (std::size_t oi = 0; oi < orderings.size(); ++oi) {
      TrotterPlan plan(base_plan.tau, m, base_plan.step_mode, orderings[oi]);
      const NormEstimate measured = measured_trotter_error(model, plan, nopts);
      const bool ok = measured.value <= bounds.theorem1_value;
      all_ok = all_ok && ok;
      json row = {{"m", m},
                  {"ordering_index", oi},
                  {"step_mode", plan.step_mode == StepMode::ExactLocal
                                    ? "exact-local"
                                    : "average-liouvillian"},
                  {"measured", measured.value},
                  {"measured_kind",
                   measured.kind == NormEstimate::Kind::Exact ? "exact" : "lower-bound"},
                  {"bound", bounds.theorem1_value},
                  {"ok", ok}};
      // The certified bounds normally carry an order of magnitude of slack;
      // a tight case is worth a flag.
      if (ok && measured.value > 0.5 * bounds.theorem1_value) {
        row["note"] = "bound within 2x of the measured error";
      }
      rows.push_back(std::move(row));
      if (log) {
        *log << "verify: m = " << m << " ordering " << oi
             << " measured = " << format_double(measured.value)
             << " bound = " << format_double(bounds.theorem1_value)
             << (ok ? "  OK" : "  VIOLATED") << "\n";
      }
    }
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "verify";
  j["tau"] = base_plan.tau;
  j["seed"] = config.verification.seed;
  j["rows"] = std::move(rows);
  j["dominance_holds"] = all_ok;
  write_text(out_dir / "verify_report.json", j.dump(2) + "\n");
  return all_ok ? kExitOk : kExitDominanceViolated;
}

int run_census(const RunConfig& config, const std::filesystem::path& out_dir,
               const RunOverrides& overrides, std::ostream* log) {
  (void)overrides;
  if (!config.census_inputs) throw ValidationError("census requires a census block");
  CensusInputs inputs = *config.census_inputs;
  if (config.census_constants_from_model) {
    const LocalConstants consts = local_constants(*config.model, 0.0, inputs.tau);
    inputs.c = consts.c;
    inputs.b = consts.b_used;
  }
  const CensusReport report = census(inputs);
  write_text(out_dir / "census_report.json", census_to_json(report).dump(2) + "\n");
  if (log) {
    *log << "census: log2_n_t_upper = " << format_double(report.log2_n_t_upper) << "\n";
  }
  return kExitOk;
}

int run_nets(const RunConfig& config, const std::filesystem::path& out_dir,
             const RunOverrides& overrides, std::ostream* log) {
  (void)overrides;
  if (!config.nets) throw ValidationError("nets requires a nets block");
  const NetsSettings& ns = *config.nets;

  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "nets";
  if (ns.dimension) {
    j["net_bounds"] = nets_to_json(net_bounds(*ns.dimension, ns.epsilon));
  } else if (config.model) {
    j["net_bounds"] = nets_to_json(net_bounds_dn(config.model->shape().local_dim,
                                                 config.model->shape().num_sites, ns.epsilon));
  }
  if (ns.gap) {
    const GapReport gap = reachability_gap(*ns.gap);
    json rows = json::array();
    for (const auto& row : gap.rows) {
      rows.push_back({{"num_sites", row.num_sites},
                      {"tau", row.tau},
                      {"log2_n_t", row.log2_n_t},
                      {"log2_lower_s", row.log2_lower_s},
                      {"gap", row.gap},
                      {"lower_valid", row.lower_valid}});
    }
    json gj;
    gj["rows"] = std::move(rows);
    if (gap.crossover_sites) gj["crossover_sites"] = *gap.crossover_sites;
    gj["no_recrossing"] = gap.no_recrossing;
    j["reachability_gap"] = std::move(gj);
    if (log) {
      *log << "nets: crossover at N = "
           << (gap.crossover_sites ? std::to_string(*gap.crossover_sites) : std::string("none"))
           << "\n";
    }
  }
  write_text(out_dir / "nets_report.json", j.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int run(const std::string& subcommand, const RunConfig& config, const std::string& out_dir,
        const RunOverrides& overrides, std::ostream* log) {
  const std::filesystem::path out(out_dir);
  std::filesystem::create_directories(out);
  if (subcommand == "simulate") return run_simulate(config, out, overrides, log);
  if (subcommand == "bounds") return run_bounds(config, out, overrides, log);
  if (subcommand == "verify") return run_verify(config, out, overrides, log);
  if (subcommand == "census") return run_census(config, out, overrides, log);
  if (subcommand == "nets") return run_nets(config, out, overrides, log);
  throw ValidationError("unknown subcommand '" + subcommand + "'");
}

}  // namespace dissim
