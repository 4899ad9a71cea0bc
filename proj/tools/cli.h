// Copyright 2026 The ireco Authors
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

#ifndef IRECO_TOOLS_CLI_H_
#define IRECO_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace ireco::cli {

enum ExitCode {
  kExitOk = 0,
  kExitParseError = 1,
  kExitIoError = 2,
  kExitBestEffort = 3,
  kExitHashMismatch = 4,
  kExitApplyError = 5,
  kExitCounterexample = 6,
  kExitInconclusive = 7,
};

int ExitCodeFor(const absl::Status& status);

// Runs one command line (args[0] is the program name) and returns the exit
// code. Everything the command prints goes to out/err.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace ireco::cli

#endif  // IRECO_TOOLS_CLI_H_
