// Copyright 2026 The Safeflow Authors
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

#ifndef SAFEFLOW_CLI_H_
#define SAFEFLOW_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace safeflow {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,  // usage, I/O, parse or internal errors
  kExitNoSafeSolution = 2,
  kExitNotFound = 3,
  kExitCapacityTooSmall = 4,
};

// Runs one command line (without the program name). Machine-readable
// payload goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace safeflow

#endif  // SAFEFLOW_CLI_H_
