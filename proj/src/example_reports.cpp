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

#include "example_reports.hpp"

#include <algorithm>
#include <cmath>

namespace qpebt::examples {

using namespace qpebt::json_io;

namespace {

json pebt_table(const KrausChannel& phi, const Tolerances& tol) {
  json rows = json::array();
  for (int r = 1; r <= phi.d_in(); ++r) {
    const auto c = classify_pebt(phi, r, tol);
    rows.push_back({{"r", r}, {"verdict", to_string(c.verdict)}});
  }
  return rows;
}

json rvector_to_json(const RVector& v) {
  json out = json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

json isotropic_report(int d, std::optional<double> f,
                      std::optional<double> lambda, const Tolerances& tol) {
  if (f && lambda) throw InvalidInput("example isotropic: give --f or --lambda, not both");
  if (!f && !lambda) throw InvalidInput("example isotropic: needs --f or --lambda");
  const DensityMatrix rho = lambda ? isotropic_lambda(d, *lambda) : isotropic_fidelity(d, *f);
  const double fid = lambda ? fidelity_from_lambda(d, *lambda) : *f;
  const double dd = static_cast<double>(d) * d;

  // Eigenvalues of (id (x) Lambda_{1/k}) I_f: 1/d - f/k on P+ and
  // 1/d - (1 - f)/(k (d^2 - 1)) on its complement.
  json witnesses = json::array();
  for (int k = 1; k < d; ++k) {
    const double computed =
        min_eigenvalue(extend_apply(reduction_map(d, 1.0 / k), rho), tol);
    const double predicted = std::min(1.0 / d - fid / k,
                                      1.0 / d - (1.0 - fid) / (k * (dd - 1.0)));
    witnesses.push_back({{"k", k}, {"min_eigenvalue", computed}, {"predicted", predicted}});
  }
  const int dims[2] = {d, d};
  json out = {
      {"d", d},
      {"f", fid},
      {"lambda", (fid - 1.0 / dd) / (1.0 - 1.0 / dd)},
      {"sn_isotropic", sn_isotropic(d, std::clamp(fid, 0.0, 1.0))},
      {"bounds", bounds_to_json(sn_bounds(rho, tol))},
      {"ppt", is_psd(partial_transpose(rho.matrix(), dims, 1), tol)},
      {"separable_iff_lambda_at_most", 1.0 / (d + 1.0)},
      {"witnesses", std::move(witnesses)},
  };
  return out;
}

json phi_f_report(int d, double f, const Tolerances& tol) {
  const KrausChannel phi = phi_f(d, f);
  const ChoiMatrix c = choi(phi, tol);
  return {
      {"d", d},
      {"f", f},
      {"choi_vs_isotropic_residual", distance(c.matrix(), isotropic_fidelity(d, f).matrix())},
      {"sn_isotropic", sn_isotropic(d, f)},
      {"bounds", bounds_to_json(channel_sn_bounds(phi, tol))},
      {"pebt", pebt_table(phi, tol)},
  };
}

json phi_lambda_report(int d, double lambda, const Tolerances& tol) {
  const KrausChannel phi = phi_lambda(d, lambda);
  const ChoiMatrix c = choi(phi, tol);
  return {
      {"d", d},
      {"lambda", lambda},
      {"f", fidelity_from_lambda(d, lambda)},
      {"separable_iff_lambda_at_most", 1.0 / (d + 1.0)},
      {"choi_vs_isotropic_residual", distance(c.matrix(), isotropic_lambda(d, lambda).matrix())},
      {"ccp", is_ccp(phi, tol)},
      {"rs", rs_to_json(classify_rs_cpt(phi, tol))},
      {"pebt", pebt_table(phi, tol)},
  };
}

json mixed_unitary_report(int d, const std::vector<double>& p, double mu,
                          const Tolerances& tol) {
  const KrausChannel phi = mixed_unitary_channel(d, p);
  const auto witness = reduction_map(d, mu);
  const ChoiMatrix c = choi(phi, tol);
  const CMatrix image = extend_apply(witness, c.matrix());
  const double p_max = *std::max_element(p.begin(), p.end());
  const double threshold = 1.0 / (d * mu);

  // (id (x) Lambda_mu) rho_Phi = (1/d) sum_a (1 - d mu p_a) P_a with
  // orthogonal rank-one P_a, so the spectrum is {(1 - d mu p_a)/d}.
  json coefficients = json::array();
  for (double pa : p) coefficients.push_back(1.0 - d * mu * pa);
  const bool detected = !is_psd(image, tol);
  const int level = witness.positivity_level.value_or(0);
  json out = {
      {"d", d},
      {"p", p},
      {"mu", mu},
      {"positivity_level", level},
      {"p_max", p_max},
      {"detection_threshold", threshold},
      {"predicted_detection", p_max > threshold},
      {"coefficients", std::move(coefficients)},
      {"witness_min_eigenvalue", min_eigenvalue(image, tol)},
      {"witness_min_eigenvalue_predicted", (1.0 - d * mu * p_max) / d},
      {"detected", detected},
      {"bounds", bounds_to_json(channel_sn_bounds(phi, tol))},
  };
  if (detected && level >= 1) out["implied_lower_bound"] = level + 1;
  return out;
}

json three_qubit_report(const MultipartiteState& psi, int cut,
                        const Tolerances& tol) {
  const BipartitionOperator f = bipartition_operator(psi, cut);
  const SliceOperators slices = slice_operators(psi);
  json slice_json = json::array();
  json slice_ranks = json::array();
  CMatrix reassembled = CMatrix::Zero(4, 4);
  for (const CMatrix& s : slices.ops) {
    slice_json.push_back(matrix_to_json(s));
    slice_ranks.push_back(numerical_rank(s, tol));
    const CVector v = op_to_vec_raw(s);
    reassembled += v * v.adjoint();
  }
  const std::vector<int>& dims = psi.pure().dims();
  const int keep[2] = {1, 2};
  const DensityMatrix rho23(partial_trace(psi.pure().projector(), dims, keep), {2, 2}, tol);
  return {
      {"cut", cut},
      {"bipartition_operator", matrix_to_json(f.f)},
      {"schmidt_coefficients", rvector_to_json(schmidt_coefficients(psi.pure(), cut))},
      {"schmidt_rank", schmidt_rank(psi.pure(), cut, tol)},
      {"slice_operators", std::move(slice_json)},
      {"slice_ranks", std::move(slice_ranks)},
      {"reduction_23", state_to_json(rho23)},
      {"reduction_23_slice_residual", distance(reassembled, rho23.matrix())},
      {"reduction_23_bounds", bounds_to_json(sn_bounds(rho23, tol))},
  };
}

}  // namespace qpebt::examples
