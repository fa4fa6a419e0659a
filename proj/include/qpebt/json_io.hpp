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

// JSON encodings.
//
//   matrix   {"rows": n, "cols": m, "data": [[re, im], ...]}   row-major
//   pure     {"dims": [...], "vector": [[re, im], ...]}
//   mixed    {"dims": [...], "matrix": <matrix>}
//   channel  {"d_in": d, "d_out": d, "kraus": [<matrix>, ...]}
//   bounds   {"lower": k, "upper": m, "exact": b, "lower_witness": s,
//             "upper_certificate": r}
//
// All parse failures throw InvalidInput.

#ifndef QPEBT_JSON_IO_HPP
#define QPEBT_JSON_IO_HPP

#include <optional>
#include <variant>

#include <json.hpp>

#include "qpebt/channels.hpp"
#include "qpebt/schmidt.hpp"
#include "qpebt/states.hpp"

namespace qpebt::json_io {

using json = nlohmann::json;

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j);

json state_to_json(const PureState& psi);
json state_to_json(const DensityMatrix& rho);

// Accepts the pure or mixed encoding (pure states become projectors) or a
// bare matrix. `dims_override`, when given, replaces or supplies the dims.
DensityMatrix density_from_json(const json& j,
                                const std::optional<std::vector<int>>& dims_override,
                                const Tolerances& tol);

PureState pure_from_json(const json& j);

json channel_to_json(const KrausChannel& phi);
KrausChannel channel_from_json(const json& j);

// Accepts the mixed-state encoding with dims [d, d] or a bare d^2 x d^2
// matrix.
ChoiMatrix choi_from_json(const json& j, const Tolerances& tol);
json choi_to_json(const ChoiMatrix& c);

json bounds_to_json(const SnBounds& b);
json pebt_to_json(const PebtClassification& c);
json rs_to_json(const RsClassification& c);

// Parses text, converting parse errors to InvalidInput.
json parse(const std::string& text);

}  // namespace qpebt::json_io

#endif  // QPEBT_JSON_IO_HPP
