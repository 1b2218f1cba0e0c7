// Copyright 2026 The kgdial Authors.
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

#ifndef KGDIAL_SERVICE_CLI_H_
#define KGDIAL_SERVICE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "kgdial/service/config.h"

namespace kgdial {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Results go to
// `out`; the resolved configuration and diagnostics go to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err, const Settings::EnvLookup &env);

}  // namespace kgdial

#endif  // KGDIAL_SERVICE_CLI_H_
