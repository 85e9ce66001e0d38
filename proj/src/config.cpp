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

#include "dissim/config.hpp"

#include <cctype>
#include <initializer_list>
#include <set>

#include <json.hpp>

namespace dissim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError("config: " + path + ": " + what);
}

void expect_keys(const json& obj, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!ok.count(key)) fail(path + "." + key, "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const std::string& path, const char* key, double dflt) {
  if (!obj.contains(key)) return dflt;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

long get_integer(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing required key");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<long>();
}

long get_integer_or(const json& obj, const std::string& path, const char* key, long dflt) {
  if (!obj.contains(key)) return dflt;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<long>();
}

// --- Pauli expression parsing ---

CMatrix single_site_pauli(char c, const std::string& path) {
  CMatrix m(2, 2);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case '+': m << 0, 0, 1, 0; break;  // |1><0|
    case '-': m << 0, 1, 0, 0; break;  // |0><1|
    default: fail(path, std::string("unknown Pauli letter '") + c + "'");
  }
  return m;
}

struct PauliTerm {
  Complex coeff{1.0, 0.0};
  std::string letters;
};

Complex parse_coefficient(const std::string& tok, const std::string& path) {
  std::string s = tok;
  if (s.empty()) fail(path, "empty coefficient");
  if (s.front() == '(') {
    if (s.back() != ')') fail(path, "unterminated complex pair in '" + s + "'");
    const auto comma = s.find(',');
    if (comma == std::string::npos) fail(path, "complex pair needs (re,im)");
    try {
      const double re = std::stod(s.substr(1, comma - 1));
      const double im = std::stod(s.substr(comma + 1, s.size() - comma - 2));
      return {re, im};
    } catch (const std::exception&) {
      fail(path, "bad complex pair '" + s + "'");
    }
  }
  bool imaginary = false;
  if (s.back() == 'i' || s.back() == 'j') {
    imaginary = true;
    s.pop_back();
    if (s.empty() || s == "+") s = "1";
    if (s == "-") s = "-1";
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) fail(path, "bad coefficient '" + tok + "'");
    return imaginary ? Complex(0.0, v) : Complex(v, 0.0);
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    fail(path, "bad coefficient '" + tok + "'");
  }
}

std::vector<PauliTerm> tokenize_pauli(const std::string& text, const std::string& path) {
  std::vector<PauliTerm> terms;
  std::string cleaned;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
  }
  if (cleaned.empty()) fail(path, "empty operator expression");

  std::size_t pos = 0;
  while (pos < cleaned.size()) {
    double sign = 1.0;
    while (pos < cleaned.size() && (cleaned[pos] == '+' || cleaned[pos] == '-')) {
      // A leading +/- is a sign only if followed by more expression; a final
      // '+'/'-' letter is caught by the Pauli-letter check below.
      const char next = (pos + 1 < cleaned.size()) ? cleaned[pos + 1] : '\0';
      const bool is_sign = std::isdigit(static_cast<unsigned char>(next)) || next == '(' ||
                           next == 'i' || next == 'j' || next == '.';
      if (!is_sign) break;
      if (cleaned[pos] == '-') sign = -sign;
      ++pos;
    }
    const std::size_t star = cleaned.find('*', pos);
    std::size_t term_end = cleaned.size();
    // The term ends at the next top-level +/- that starts a new term; Pauli
    // letters may themselves be '+'/'-', so scan from the operator part.
    std::size_t letters_begin = (star != std::string::npos) ? star + 1 : pos;
    PauliTerm term;
    if (star != std::string::npos) {
      term.coeff = sign * parse_coefficient(cleaned.substr(pos, star - pos), path);
    } else {
      term.coeff = Complex(sign, 0.0);
    }
    // Letters run while they are in the alphabet; a '+'/'-' followed by a
    // digit, '(', 'i', 'j' or '.' starts the next term instead.
    std::size_t q = letters_begin;
    while (q < term_end) {
      const char c = cleaned[q];
      if (c == 'I' || c == 'X' || c == 'Y' || c == 'Z') {
        ++q;
        continue;
      }
      if (c == '+' || c == '-') {
        const char next = (q + 1 < cleaned.size()) ? cleaned[q + 1] : '\0';
        const bool next_is_term = std::isdigit(static_cast<unsigned char>(next)) ||
                                  next == '(' || next == 'i' || next == 'j' || next == '.';
        if (next_is_term && q > letters_begin) break;
        ++q;
        continue;
      }
      break;
    }
    term.letters = cleaned.substr(letters_begin, q - letters_begin);
    if (term.letters.empty()) fail(path, "missing Pauli letters in '" + text + "'");
    terms.push_back(std::move(term));
    pos = q;
    if (pos < cleaned.size() && cleaned[pos] != '+' && cleaned[pos] != '-') {
      fail(path, "unexpected character '" + std::string(1, cleaned[pos]) + "' in '" + text + "'");
    }
  }
  return terms;
}

}  // namespace

CMatrix parse_pauli_expression(const std::string& text, int num_sites_in_support) {
  const std::string path = "pauli expression";
  const std::vector<PauliTerm> terms = tokenize_pauli(text, path);
  const Index dim = Index(1) << num_sites_in_support;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& term : terms) {
    if (static_cast<int>(term.letters.size()) != num_sites_in_support) {
      fail(path, "string '" + term.letters + "' has length " +
                     std::to_string(term.letters.size()) + ", expected " +
                     std::to_string(num_sites_in_support));
    }
    CMatrix acc = CMatrix::Identity(1, 1);
    for (char c : term.letters) acc = kron(acc, single_site_pauli(c, path)).eval();
    out += term.coeff * acc;
  }
  return out;
}

namespace {

// --- Model parsing ---

Schedule parse_schedule(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a schedule object");
  expect_keys(j, path, {"kind", "value", "breakpoints", "interpolation"});
  if (!j.contains("kind")) fail(path + ".kind", "missing required key");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "constant") {
      return Schedule::constant(get_number(j, path, "value"));
    }
    if (kind != "piecewise-constant" && kind != "sampled-smooth") {
      fail(path + ".kind", "must be constant, piecewise-constant or sampled-smooth");
    }
    if (!j.contains("breakpoints") || !j.at("breakpoints").is_array()) {
      fail(path + ".breakpoints", "expected an array of [time, value] pairs");
    }
    std::vector<std::pair<double, double>> bps;
    for (const auto& bp : j.at("breakpoints")) {
      if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number()) {
        fail(path + ".breakpoints", "expected [time, value] pairs");
      }
      bps.push_back({bp[0].get<double>(), bp[1].get<double>()});
    }
    if (kind == "piecewise-constant") return Schedule::piecewise_constant(std::move(bps));
    if (j.contains("interpolation") && j.at("interpolation").get<std::string>() != "linear") {
      fail(path + ".interpolation", "only linear interpolation is supported");
    }
    return Schedule::sampled_smooth(std::move(bps));
  } catch (const ValidationError& e) {
    if (std::string(e.what()).rfind("config:", 0) == 0) throw;
    fail(path, e.what());
  }
}

CMatrix parse_operator_matrix(const json& j, const std::string& path, const SupportSet& support,
                              const SystemShape& shape) {
  if (j.is_string()) {
    if (shape.local_dim != 2) fail(path, "Pauli strings require local_dim = 2");
    try {
      return parse_pauli_expression(j.get<std::string>(), support.size());
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
  }
  if (!j.is_object()) fail(path, "expected a Pauli string or a {matrix: ...} object");
  expect_keys(j, path, {"matrix"});
  if (!j.contains("matrix") || !j.at("matrix").is_array()) {
    fail(path + ".matrix", "expected row-major rows of [re, im] pairs");
  }
  Index dloc = 1;
  for (int i = 0; i < support.size(); ++i) dloc *= shape.local_dim;
  const auto& rows = j.at("matrix");
  if (static_cast<Index>(rows.size()) != dloc) {
    fail(path + ".matrix", "expected " + std::to_string(dloc) + " rows, got " +
                               std::to_string(rows.size()));
  }
  CMatrix m(dloc, dloc);
  for (Index r = 0; r < dloc; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dloc) {
      fail(path + ".matrix", "row " + std::to_string(r) + " must have " + std::to_string(dloc) +
                                 " entries");
    }
    for (Index c = 0; c < dloc; ++c) {
      const auto& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        fail(path + ".matrix", "entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

SupportSet parse_support(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of site indices");
  std::vector<int> sites;
  for (const auto& s : j) {
    if (!s.is_number_integer()) fail(path, "site indices must be integers");
    sites.push_back(s.get<int>());
  }
  try {
    return SupportSet(std::move(sites));
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

LindbladTerm parse_term(const json& j, const std::string& path, const SystemShape& shape) {
  expect_keys(j, path, {"support", "hamiltonian", "jumps"});
  if (!j.contains("support")) fail(path + ".support", "missing required key");
  LindbladTerm term;
  term.support = parse_support(j.at("support"), path + ".support");

  auto parse_scheduled = [&](const json& spec, const std::string& spath, bool hermitian) {
    expect_keys(spec, spath, {"op", "schedule"});
    if (!spec.contains("op")) fail(spath + ".op", "missing required key");
    CMatrix m = parse_operator_matrix(spec.at("op"), spath + ".op", term.support, shape);
    Schedule sched = spec.contains("schedule")
                         ? parse_schedule(spec.at("schedule"), spath + ".schedule")
                         : Schedule::constant(1.0);
    std::optional<std::string> label;
    if (spec.at("op").is_string()) label = spec.at("op").get<std::string>();
    try {
      return std::pair<LocalOperator, Schedule>(
          LocalOperator(term.support, std::move(m), hermitian, std::move(label)),
          std::move(sched));
    } catch (const ValidationError& e) {
      fail(spath + ".op", e.what());
    }
  };

  if (j.contains("hamiltonian")) {
    term.hamiltonian = parse_scheduled(j.at("hamiltonian"), path + ".hamiltonian", true);
  }
  if (j.contains("jumps")) {
    if (!j.at("jumps").is_array()) fail(path + ".jumps", "expected an array");
    std::size_t idx = 0;
    for (const auto& jump : j.at("jumps")) {
      term.jump_ops.push_back(
          parse_scheduled(jump, path + ".jumps[" + std::to_string(idx) + "]", false));
      ++idx;
    }
  }
  return term;
}

KLocalLiouvillian parse_model(const json& j, const std::string& path) {
  expect_keys(j, path, {"shape", "terms", "term_order"});
  if (!j.contains("shape")) fail(path + ".shape", "missing required key");
  const json& shape_j = j.at("shape");
  expect_keys(shape_j, path + ".shape", {"num_sites", "local_dim", "locality"});
  SystemShape shape;
  try {
    shape = SystemShape(static_cast<int>(get_integer(shape_j, path + ".shape", "num_sites")),
                        static_cast<int>(get_integer_or(shape_j, path + ".shape", "local_dim", 2)),
                        static_cast<int>(get_integer_or(shape_j, path + ".shape", "locality", 1)));
  } catch (const ValidationError& e) {
    fail(path + ".shape", e.what());
  }
  if (!j.contains("terms") || !j.at("terms").is_array()) {
    fail(path + ".terms", "expected an array of terms");
  }
  std::vector<LindbladTerm> terms;
  std::size_t idx = 0;
  for (const auto& t : j.at("terms")) {
    terms.push_back(parse_term(t, path + ".terms[" + std::to_string(idx) + "]", shape));
    ++idx;
  }
  std::vector<int> order;
  if (j.contains("term_order")) {
    for (const auto& o : j.at("term_order")) {
      if (!o.is_number_integer()) fail(path + ".term_order", "expected integers");
      order.push_back(o.get<int>());
    }
  }
  try {
    return KLocalLiouvillian(shape, std::move(terms), std::move(order));
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

TermOrdering parse_ordering(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "input-order") return TermOrdering::input_order();
    if (s == "reversed") return TermOrdering::reversed();
    fail(path, "ordering must be input-order, reversed or an explicit permutation array");
  }
  if (j.is_array()) {
    std::vector<int> perm;
    for (const auto& p : j) {
      if (!p.is_number_integer()) fail(path, "permutation entries must be integers");
      perm.push_back(p.get<int>());
    }
    return TermOrdering::explicit_order(std::move(perm));
  }
  fail(path, "ordering must be a string or an array");
}

PlanSettings parse_plan(const json& j, const std::string& path) {
  expect_keys(j, path, {"tau", "m", "epsilon", "step_mode", "ordering"});
  PlanSettings plan;
  plan.tau = get_number(j, path, "tau");
  if (plan.tau < 0.0) fail(path + ".tau", "must be non-negative");
  if (j.contains("m")) plan.m = get_integer(j, path, "m");
  if (j.contains("epsilon")) plan.epsilon = get_number(j, path, "epsilon");
  if (plan.m && plan.epsilon) fail(path, "give either m or epsilon, not both");
  if (!plan.m && !plan.epsilon) fail(path, "one of m or epsilon is required");
  if (j.contains("step_mode")) {
    const std::string mode = j.at("step_mode").get<std::string>();
    if (mode == "exact-local") {
      plan.step_mode = StepMode::ExactLocal;
    } else if (mode == "average-liouvillian") {
      plan.step_mode = StepMode::AverageLiouvillian;
    } else {
      fail(path + ".step_mode", "must be exact-local or average-liouvillian");
    }
  }
  if (j.contains("ordering")) plan.ordering = parse_ordering(j.at("ordering"), path + ".ordering");
  return plan;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  expect_keys(doc, "config",
              {"model", "plan", "initial_state", "outputs", "verification", "census", "nets"});

  RunConfig config;
  if (doc.contains("model")) config.model = parse_model(doc.at("model"), "model");
  if (doc.contains("plan")) config.plan = parse_plan(doc.at("plan"), "plan");

  if (doc.contains("initial_state")) {
    const json& init = doc.at("initial_state");
    if (init.is_string()) {
      const std::string s = init.get<std::string>();
      if (s == "maximally-mixed") {
        config.initial_maximally_mixed = true;
      } else if (s != "ground") {
        fail("initial_state", "must be ground, maximally-mixed or {ket: ...}");
      }
    } else if (init.is_object()) {
      expect_keys(init, "initial_state", {"ket"});
      if (!init.contains("ket") || !init.at("ket").is_array()) {
        fail("initial_state.ket", "expected an array of [re, im] amplitudes");
      }
      if (!config.model) fail("initial_state", "an explicit ket needs a model");
      CVector ket(static_cast<Index>(init.at("ket").size()));
      Index i = 0;
      for (const auto& amp : init.at("ket")) {
        if (!amp.is_array() || amp.size() != 2 || !amp[0].is_number() || !amp[1].is_number()) {
          fail("initial_state.ket", "amplitudes must be [re, im] pairs");
        }
        ket(i++) = Complex(amp[0].get<double>(), amp[1].get<double>());
      }
      if (ket.size() != config.model->shape().dim()) {
        fail("initial_state.ket", "length must equal the Hilbert dimension");
      }
      if (std::abs(ket.norm() - 1.0) > 1e-10) {
        fail("initial_state.ket", "must be normalized");
      }
      config.initial_ket = std::move(ket);
    } else {
      fail("initial_state", "must be a string or a {ket: ...} object");
    }
  }

  if (doc.contains("outputs")) {
    const json& out = doc.at("outputs");
    expect_keys(out, "outputs", {"observables", "stride"});
    config.output_stride = get_integer_or(out, "outputs", "stride", 1);
    if (config.output_stride < 1) fail("outputs.stride", "must be >= 1");
    if (out.contains("observables")) {
      if (!config.model) fail("outputs.observables", "observables need a model");
      std::size_t idx = 0;
      for (const auto& ob : out.at("observables")) {
        const std::string path = "outputs.observables[" + std::to_string(idx) + "]";
        expect_keys(ob, path, {"name", "support", "op"});
        if (!ob.contains("name") || !ob.contains("support") || !ob.contains("op")) {
          fail(path, "needs name, support and op");
        }
        ObservableSpec spec;
        spec.name = ob.at("name").get<std::string>();
        SupportSet support = parse_support(ob.at("support"), path + ".support");
        CMatrix m = parse_operator_matrix(ob.at("op"), path + ".op", support,
                                          config.model->shape());
        std::optional<std::string> label;
        if (ob.at("op").is_string()) label = ob.at("op").get<std::string>();
        spec.op = LocalOperator(support, std::move(m), false, std::move(label));
        spec.op.validate_against(config.model->shape());
        config.observables.push_back(std::move(spec));
        ++idx;
      }
    }
  }

  if (doc.contains("verification")) {
    const json& ver = doc.at("verification");
    expect_keys(ver, "verification", {"oracle", "norm_budget", "seed", "m_values", "orderings"});
    if (ver.contains("oracle")) {
      if (!ver.at("oracle").is_boolean()) fail("verification.oracle", "expected a boolean");
      config.verification.oracle = ver.at("oracle").get<bool>();
    }
    config.verification.norm_budget =
        get_integer_or(ver, "verification", "norm_budget", config.verification.norm_budget);
    if (ver.contains("seed")) {
      if (!ver.at("seed").is_number_unsigned() && !ver.at("seed").is_number_integer()) {
        fail("verification.seed", "expected an integer");
      }
      config.verification.seed = ver.at("seed").get<std::uint64_t>();
    }
    if (ver.contains("m_values")) {
      for (const auto& m : ver.at("m_values")) {
        if (!m.is_number_integer()) fail("verification.m_values", "expected integers");
        config.verification.m_values.push_back(m.get<long>());
      }
    }
    if (ver.contains("orderings")) {
      std::size_t idx = 0;
      for (const auto& o : ver.at("orderings")) {
        config.verification.orderings.push_back(
            parse_ordering(o, "verification.orderings[" + std::to_string(idx) + "]"));
        ++idx;
      }
    }
  }

  if (doc.contains("census")) {
    const json& cen = doc.at("census");
    expect_keys(cen, "census",
                {"num_sites", "locality", "local_dim", "tau", "epsilon1", "epsilon2", "c_sk",
                 "alpha", "n_sk", "c", "b"});
    CensusInputs ci;
    if (config.model) {
      ci.num_sites = config.model->shape().num_sites;
      ci.locality = config.model->shape().locality;
      ci.local_dim = config.model->shape().local_dim;
      ci.tau = config.plan.tau;
    }
    ci.num_sites = get_integer_or(cen, "census", "num_sites", ci.num_sites);
    ci.locality = static_cast<int>(get_integer_or(cen, "census", "locality", ci.locality));
    ci.local_dim = static_cast<int>(get_integer_or(cen, "census", "local_dim", ci.local_dim));
    ci.tau = get_number_or(cen, "census", "tau", ci.tau);
    ci.epsilon1 = get_number_or(cen, "census", "epsilon1", ci.epsilon1);
    ci.epsilon2 = get_number_or(cen, "census", "epsilon2", ci.epsilon2);
    ci.c_sk = get_number_or(cen, "census", "c_sk", ci.c_sk);
    ci.alpha = get_number_or(cen, "census", "alpha", ci.alpha);
    ci.n_sk = get_integer_or(cen, "census", "n_sk", ci.n_sk);
    if (cen.contains("c")) {
      ci.c = get_number(cen, "census", "c");
      ci.b = get_number_or(cen, "census", "b", 0.0);
    } else {
      if (!config.model) fail("census.c", "required when no model is given");
      config.census_constants_from_model = true;  // resolved at run time
    }
    config.census_inputs = ci;
  }

  if (doc.contains("nets")) {
    const json& nets = doc.at("nets");
    expect_keys(nets, "nets", {"epsilon", "dimension", "gap"});
    NetsSettings ns;
    ns.epsilon = get_number_or(nets, "nets", "epsilon", ns.epsilon);
    if (nets.contains("dimension")) ns.dimension = get_number(nets, "nets", "dimension");
    if (nets.contains("gap")) {
      const json& gap = nets.at("gap");
      expect_keys(gap, "nets.gap",
                  {"locality", "local_dim", "tau_coeff", "tau_degree", "c", "b", "c_sk", "alpha",
                   "n_sk", "scan_max_sites", "hard_cap_sites"});
      GapInputs gi;
      gi.locality = static_cast<int>(get_integer_or(gap, "nets.gap", "locality", gi.locality));
      gi.local_dim = static_cast<int>(get_integer_or(gap, "nets.gap", "local_dim", gi.local_dim));
      gi.tau_coeff = get_number_or(gap, "nets.gap", "tau_coeff", gi.tau_coeff);
      gi.tau_degree = static_cast<int>(get_integer_or(gap, "nets.gap", "tau_degree", gi.tau_degree));
      gi.c = get_number_or(gap, "nets.gap", "c", gi.c);
      gi.b = get_number_or(gap, "nets.gap", "b", gi.b);
      gi.c_sk = get_number_or(gap, "nets.gap", "c_sk", gi.c_sk);
      gi.alpha = get_number_or(gap, "nets.gap", "alpha", gi.alpha);
      gi.n_sk = get_integer_or(gap, "nets.gap", "n_sk", gi.n_sk);
      gi.scan_max_sites = get_integer_or(gap, "nets.gap", "scan_max_sites", gi.scan_max_sites);
      gi.hard_cap_sites = get_integer_or(gap, "nets.gap", "hard_cap_sites", gi.hard_cap_sites);
      gi.epsilon = ns.epsilon;
      ns.gap = gi;
    }
    config.nets = ns;
  }
  return config;
}

namespace {

json schedule_to_json(const Schedule& s) {
  json j;
  switch (s.kind()) {
    case Schedule::Kind::Constant:
      j["kind"] = "constant";
      j["value"] = s.breakpoints().front().second;
      return j;
    case Schedule::Kind::PiecewiseConstant:
      j["kind"] = "piecewise-constant";
      break;
    case Schedule::Kind::SampledSmooth:
      j["kind"] = "sampled-smooth";
      j["interpolation"] = "linear";
      break;
  }
  json bps = json::array();
  for (const auto& [t, v] : s.breakpoints()) bps.push_back(json::array({t, v}));
  j["breakpoints"] = std::move(bps);
  return j;
}

json operator_to_json(const LocalOperator& op) {
  if (op.pauli_label) return json(*op.pauli_label);
  json rows = json::array();
  for (Index r = 0; r < op.matrix.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < op.matrix.cols(); ++c) {
      row.push_back(json::array({op.matrix(r, c).real(), op.matrix(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return json{{"matrix", std::move(rows)}};
}

json ordering_to_json(const TermOrdering& o) {
  switch (o.kind) {
    case TermOrdering::Kind::InputOrder: return json("input-order");
    case TermOrdering::Kind::Reversed: return json("reversed");
    case TermOrdering::Kind::Explicit: return json(o.permutation);
  }
  return json("input-order");
}

}  // namespace

std::string serialize_config(const RunConfig& config) {
  json doc;
  if (config.model) {
    json model;
    model["shape"] = {{"num_sites", config.model->shape().num_sites},
                      {"local_dim", config.model->shape().local_dim},
                      {"locality", config.model->shape().locality}};
    json terms = json::array();
    for (const auto& term : config.model->terms()) {
      json tj;
      tj["support"] = term.support.sites;
      if (term.hamiltonian) {
        tj["hamiltonian"] = {{"op", operator_to_json(term.hamiltonian->first)},
                             {"schedule", schedule_to_json(term.hamiltonian->second)}};
      }
      json jumps = json::array();
      for (const auto& [op, sched] : term.jump_ops) {
        jumps.push_back({{"op", operator_to_json(op)}, {"schedule", schedule_to_json(sched)}});
      }
      if (!jumps.empty()) tj["jumps"] = std::move(jumps);
      terms.push_back(std::move(tj));
    }
    model["terms"] = std::move(terms);
    model["term_order"] = config.model->term_order();
    doc["model"] = std::move(model);

    if (config.initial_ket) {
      json ket = json::array();
      for (Index i = 0; i < config.initial_ket->size(); ++i) {
        ket.push_back(json::array(
            {(*config.initial_ket)(i).real(), (*config.initial_ket)(i).imag()}));
      }
      doc["initial_state"] = {{"ket", std::move(ket)}};
    } else if (config.initial_maximally_mixed) {
      doc["initial_state"] = "maximally-mixed";
    } else {
      doc["initial_state"] = "ground";
    }

    json plan;
    plan["tau"] = config.plan.tau;
    if (config.plan.m) plan["m"] = *config.plan.m;
    if (config.plan.epsilon) plan["epsilon"] = *config.plan.epsilon;
    plan["step_mode"] =
        config.plan.step_mode == StepMode::ExactLocal ? "exact-local" : "average-liouvillian";
    plan["ordering"] = ordering_to_json(config.plan.ordering);
    doc["plan"] = std::move(plan);

    json outputs;
    outputs["stride"] = config.output_stride;
    if (!config.observables.empty()) {
      json obs = json::array();
      for (const auto& o : config.observables) {
        obs.push_back({{"name", o.name},
                       {"support", o.op.support.sites},
                       {"op", operator_to_json(o.op)}});
      }
      outputs["observables"] = std::move(obs);
    }
    doc["outputs"] = std::move(outputs);

    json ver;
    ver["oracle"] = config.verification.oracle;
    ver["norm_budget"] = config.verification.norm_budget;
    ver["seed"] = config.verification.seed;
    if (!config.verification.m_values.empty()) ver["m_values"] = config.verification.m_values;
    if (!config.verification.orderings.empty()) {
      json ords = json::array();
      for (const auto& o : config.verification.orderings) ords.push_back(ordering_to_json(o));
      ver["orderings"] = std::move(ords);
    }
    doc["verification"] = std::move(ver);
  }

  if (config.census_inputs) {
    const CensusInputs& ci = *config.census_inputs;
    json cen;
    cen["num_sites"] = ci.num_sites;
    cen["locality"] = ci.locality;
    cen["local_dim"] = ci.local_dim;
    cen["tau"] = ci.tau;
    cen["epsilon1"] = ci.epsilon1;
    cen["epsilon2"] = ci.epsilon2;
    cen["c_sk"] = ci.c_sk;
    cen["alpha"] = ci.alpha;
    cen["n_sk"] = ci.n_sk;
    if (!config.census_constants_from_model) {
      cen["c"] = ci.c;
      cen["b"] = ci.b;
    }
    doc["census"] = std::move(cen);
  }

  if (config.nets) {
    json nets;
    nets["epsilon"] = config.nets->epsilon;
    if (config.nets->dimension) nets["dimension"] = *config.nets->dimension;
    if (config.nets->gap) {
      const GapInputs& gi = *config.nets->gap;
      nets["gap"] = {{"locality", gi.locality},
                     {"local_dim", gi.local_dim},
                     {"tau_coeff", gi.tau_coeff},
                     {"tau_degree", gi.tau_degree},
                     {"c", gi.c},
                     {"b", gi.b},
                     {"c_sk", gi.c_sk},
                     {"alpha", gi.alpha},
                     {"n_sk", gi.n_sk},
                     {"scan_max_sites", gi.scan_max_sites},
                     {"hard_cap_sites", gi.hard_cap_sites}};
    }
    doc["nets"] = std::move(nets);
  }
  return doc.dump(2) + "\n";
}

}  // namespace dissim
