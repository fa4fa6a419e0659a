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

// Result payloads for `qpebt example <name>`.

#ifndef QPEBT_SRC_EXAMPLE_REPORTS_HPP
#define QPEBT_SRC_EXAMPLE_REPORTS_HPP

#include <optional>
#include <vector>

#include "qpebt/json_io.hpp"
#include "qpebt/multipartite.hpp"

namespace qpebt::examples {

using json = nlohmann::json;

json isotropic_report(int d, std::optional<double> f,
                      std::optional<double> lambda, const Tolerances& tol);

json phi_f_report(int d, double f, const Tolerances& tol);

json phi_lambda_report(int d, double lambda, const Tolerances& tol);

json mixed_unitary_report(int d, const std::vector<double>& p, double mu,
                          const Tolerances& tol);

// GHZ or W on three qubits.
json three_qubit_report(const MultipartiteState& psi, int cut,
                        const Tolerances& tol);

}  // namespace qpebt::examples

#endif  // QPEBT_SRC_EXAMPLE_REPORTS_HPP
