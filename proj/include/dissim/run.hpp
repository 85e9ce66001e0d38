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

#ifndef DISSIM_RUN_HPP
#define DISSIM_RUN_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "dissim/config.hpp"

namespace dissim {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> m;
  std::optional<double> epsilon;
};

// Exit codes shared by run() and the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitDominanceViolated = 3;

/// Executes one subcommand (simulate | bounds | verify | census | nets),
/// writing its artifacts into out_dir. Returns the process exit code.
int run(const std::string& subcommand, const RunConfig& config, const std::string& out_dir,
        const RunOverrides& overrides = {}, std::ostream* log = nullptr);

}  // namespace dissim

#endif  // DISSIM_RUN_HPP
