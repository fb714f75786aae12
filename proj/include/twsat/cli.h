// Copyright 2026 The twsat Authors
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

#ifndef TWSAT_CLI_H
#define TWSAT_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace twsat {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitResource = 2,
    kExitInternal = 3,
};

/// Runs one command line. args excludes the program name. Reports go to out (or the --out
/// file), diagnostics to err. Returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace twsat

#endif
