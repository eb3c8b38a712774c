// Copyright 2026 The macgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef MACGAME_TOOLS_CLI_HPP_
#define MACGAME_TOOLS_CLI_HPP_

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace macgame::cli {

// Environment variable that overrides the master seed of a run. A --seed
// flag takes precedence over it; both take precedence over config files.
inline constexpr char kSeedEnvVar[] = "MACGAME_SEED";
inline constexpr char kManifestFile[] = "manifest.json";

// Output files of one run, keyed by file name.
using Artifacts = std::map<std::string, std::string>;

// Produces the artifacts of `subcommand` from a fully resolved config. This
// is the only place results are computed, so a manifest replay goes through
// the same path as the original invocation.
Artifacts Execute(const std::string& subcommand, const std::string& config_json,
                  int jobs);

// Manifest text for a run. Holds no job count and no timestamps.
std::string ManifestJson(const std::string& subcommand,
                         const std::string& config_json,
                         const Artifacts& artifacts);

// Entry point. `args` excludes the program name. Returns the exit status.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace macgame::cli

#endif  // MACGAME_TOOLS_CLI_HPP_
