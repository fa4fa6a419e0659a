// Copyright 2026 The qpebt Authors
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

#ifndef QPEBT_CLI_HPP
#define QPEBT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qpebt::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
};

// Runs one command line (without the program name). File arguments equal to
// "-" read from `in`. All results go to `out` as JSON; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

// "sha256:<hex>" of the given bytes.
std::string digest(const std::string& bytes);

}  // namespace qpebt::cli

#endif  // QPEBT_CLI_HPP
