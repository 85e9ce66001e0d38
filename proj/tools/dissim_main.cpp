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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dissim/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dissim: certified Trotter simulation of local open-system dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  long m_override = 0;
  bool m_given = false;
  double epsilon_override = 0.0;
  bool epsilon_given = false;

  const std::vector<std::string> names = {"simulate", "bounds", "verify", "census", "nets"};
  const std::vector<std::string> descriptions = {
      "evolve the model and write a trajectory CSV",
      "evaluate the a-priori error bounds and write a report",
      "compare measured decomposition error against the bound",
      "evaluate the channel-circuit counting chain",
      "evaluate covering-number bounds and the reachability gap"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", config_path, "configuration file (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override the configuration seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--m", m_override, "override the step count")
        ->each([&](const std::string&) { m_given = true; });
    sub->add_option("--epsilon", epsilon_override, "override the target accuracy")
        ->each([&](const std::string&) { epsilon_given = true; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? dissim::kExitOk : dissim::kExitUsage;
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config file '" << config_path << "'\n";
      return dissim::kExitUsage;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    dissim::RunConfig config = dissim::parse_config(buffer.str());
    if (seed_given) config.verification.seed = seed;
    dissim::RunOverrides overrides;
    if (m_given) overrides.m = m_override;
    if (epsilon_given) overrides.epsilon = epsilon_override;

    const std::string subcommand = app.get_subcommands().front()->get_name();
    return dissim::run(subcommand, config, out_dir, overrides, &std::cout);
  } catch (const dissim::GuardError& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return dissim::kExitGuard;
  } catch (const dissim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dissim::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dissim::kExitUsage;
  }
}
