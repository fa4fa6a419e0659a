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

#include "qpebt/json_io.hpp"

#include <cmath>

namespace qpebt::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInput(std::string("json: missing field \"") + key + "\"");
  return j.at(key);
}

long positive_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long>() <= 0)
    throw InvalidInput(std::string("json: \"") + key +
                       "\" must be a positive integer");
  return v.get<long>();
}

complex_t entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw InvalidInput("json: complex entries must be [re, im] pairs");
}

json entry_to_json(const complex_t& z) { return json::array({z.real(), z.imag()}); }

std::vector<int> dims_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("json: \"dims\" must be a non-empty array");
  std::vector<int> dims;
  for (const json& d : j) {
    if (!d.is_number_integer() || d.get<long>() <= 0)
      throw InvalidInput("json: dims entries must be positive integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

json matrix_to_json(const CMatrix& m) {
  json data = json::array();
  for (long i = 0; i < m.rows(); ++i)
    for (long k = 0; k < m.cols(); ++k) data.push_back(entry_to_json(m(i, k)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const json& j) {
  const long rows = positive_int(j, "rows");
  const long cols = positive_int(j, "cols");
  const json& data = field(j, "data");
  if (!data.is_array() || static_cast<long>(data.size()) != rows * cols)
    throw InvalidInput("json: matrix \"data\" must hold rows*cols entries");
  CMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) m(i, k) = entry_from_json(data[i * cols + k]);
  if (!m.allFinite()) throw InvalidInput("json: non-finite matrix entry");
  return m;
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(entry_to_json(v(i)));
  return out;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw InvalidInput("json: \"vector\" must be a non-empty array");
  CVector v(static_cast<long>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = entry_from_json(j[i]);
  return v;
}

json state_to_json(const PureState& psi) {
  return {{"dims", psi.dims()}, {"vector", vector_to_json(psi.amplitudes())}};
}

json state_to_json(const DensityMatrix& rho) {
  return {{"dims", rho.dims()}, {"matrix", matrix_to_json(rho.matrix())}};
}

PureState pure_from_json(const json& j) {
  return PureState(vector_from_json(field(j, "vector")),
                   dims_from_json(field(j, "dims")));
}

DensityMatrix density_from_json(const json& j,
                                const std::optional<std::vector<int>>& dims_override,
                                const Tolerances& tol) {
  if (!j.is_object()) throw InvalidInput("json: expected an object");
  std::optional<std::vector<int>> dims = dims_override;
  if (!dims && j.contains("dims")) dims = dims_from_json(j.at("dims"));

  CMatrix m;
  if (j.contains("vector")) {
    const CVector v = vector_from_json(j.at("vector"));
    if (!dims) throw InvalidInput("json: pure state needs \"dims\"");
    m = PureState(v, *dims).projector();
  } else if (j.contains("matrix")) {
    m = matrix_from_json(j.at("matrix"));
  } else if (j.contains("rows")) {
    m = matrix_from_json(j);
  } else {
    throw InvalidInput("json: expected a pure state, mixed state or matrix");
  }
  if (!dims) throw InvalidInput("json: state needs \"dims\" (or --dims)");
  return DensityMatrix(std::move(m), *dims, tol);
}

json channel_to_json(const KrausChannel& phi) {
  json ops = json::array();
  for (const CMatrix& k : phi.kraus_ops()) ops.push_back(matrix_to_json(k));
  return {{"d_in", phi.d_in()}, {"d_out", phi.d_out()}, {"kraus", std::move(ops)}};
}

KrausChannel channel_from_json(const json& j) {
  const long d_in = positive_int(j, "d_in");
  const long d_out = positive_int(j, "d_out");
  const json& kraus = field(j, "kraus");
  if (!kraus.is_array() || kraus.empty())
    throw InvalidInput("json: \"kraus\" must be a non-empty array");
  std::vector<CMatrix> ops;
  for (const json& k : kraus) {
    CMatrix m = matrix_from_json(k);
    if (m.rows() != d_out || m.cols() != d_in)
      throw InvalidInput("json: Kraus operator shape disagrees with d_in/d_out");
    ops.push_back(std::move(m));
  }
  return KrausChannel(std::move(ops));
}

ChoiMatrix choi_from_json(const json& j, const Tolerances& tol) {
  CMatrix m;
  if (j.is_object() && j.contains("matrix")) {
    m = matrix_from_json(j.at("matrix"));
    if (j.contains("dims")) {
      const auto dims = dims_from_json(j.at("dims"));
      if (dims.size() != 2 || dims[0] != dims[1])
        throw InvalidInput("json: Choi state dims must be [d, d]");
    }
  } else {
    m = matrix_from_json(j);
  }
  const long d = std::lround(std::sqrt(static_cast<double>(m.rows())));
  if (d * d != m.rows()) throw InvalidInput("json: Choi side is not a square number");
  return ChoiMatrix(std::move(m), static_cast<int>(d), tol);
}

json choi_to_json(const ChoiMatrix& c) {
  return {{"dims", {c.d(), c.d()}}, {"matrix", matrix_to_json(c.matrix())}};
}

json bounds_to_json(const SnBounds& b) {
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"exact", b.exact()},
          {"lower_witness", b.lower_witness},
          {"upper_certificate", b.upper_certificate}};
}

json pebt_to_json(const PebtClassification& c) {
  return {{"r", c.r}, {"verdict", to_string(c.verdict)}, {"bounds", bounds_to_json(c.bounds)}};
}

json rs_to_json(const RsClassification& c) {
  json out = {{"r_bounds", bounds_to_json(c.r_bounds)}};
  if (c.s_bounds)
    out["s_bounds"] = bounds_to_json(*c.s_bounds);
  else
    out["s_bounds"] = "not_co_positive";
  return out;
}

}  // namespace qpebt::json_io
