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

#include "qpebt/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qpebt {

namespace {

int equal_local_dimension(const DensityMatrix& rho, const char* what) {
  const auto& dims = rho.dims();
  if (dims.size() != 2 || dims[0] != dims[1])
    throw InvalidInput(std::string(what) +
                       ": expected a state on C^d (x) C^d");
  return dims[0];
}

bool reduction_witness_fires(const DensityMatrix& rho, int d, int k,
                             const Tolerances& tol) {
  const auto witness = reduction_map(d, 1.0 / k);
  return !is_psd(extend_apply(witness, rho), tol);
}

bool ppt_violated(const DensityMatrix& rho, const Tolerances& tol) {
  return !is_psd(partial_transpose(rho.matrix(), rho.dims(), 1), tol);
}

LowerBound summarize(int d, const std::vector<char>& fired, bool ppt) {
  LowerBound out;
  out.ppt_violated = ppt;
  for (int k = d - 1; k >= 1; --k) {
    if (fired[k]) {
      out.reduction_level = k;
      break;
    }
  }
  out.bound = std::max(out.reduction_level + 1, ppt ? 2 : 1);
  out.bound = std::min(out.bound, d);
  const std::string reduction =
      "reduction_map(mu=1/" + std::to_string(out.reduction_level) + ")";
  if (out.reduction_level >= 2)
    out.witness = reduction;
  else if (ppt && out.reduction_level == 1)
    out.witness = "partial_transpose+" + reduction;
  else if (ppt)
    out.witness = "partial_transpose";
  else if (out.reduction_level == 1)
    out.witness = reduction;
  return out;
}

// Fidelities within this distance of a threshold k/d are snapped onto it.
constexpr double kThresholdSnap = 1e-9;

}  // namespace

LowerBound sn_lower_bound(const DensityMatrix& rho, const Tolerances& tol) {
  const int d = equal_local_dimension(rho, "sn_lower_bound");
  std::vector<char> fired(d, 0);
  // Each level is independent; results are combined after the loop so the
  // outcome does not depend on scheduling.
#pragma omp parallel for schedule(dynamic) if (d > 2)
  for (int k = 1; k < d; ++k) fired[k] = reduction_witness_fires(rho, d, k, tol);
  return summarize(d, fired, ppt_violated(rho, tol));
}

LowerBound sn_lower_bound_serial(const DensityMatrix& rho,
                                 const Tolerances& tol) {
  const int d = equal_local_dimension(rho, "sn_lower_bound");
  std::vector<char> fired(d, 0);
  for (int k = 1; k < d; ++k) fired[k] = reduction_witness_fires(rho, d, k, tol);
  return summarize(d, fired, ppt_violated(rho, tol));
}

UpperBound sn_upper_bound(const DensityMatrix& rho, const Tolerances& tol) {
  if (rho.dims().size() != 2)
    throw InvalidInput("sn_upper_bound: expected a two-factor state");
  UpperBound out;
  const OperatorDecomposition spectral = spectral_decomposition(rho, 1, tol);
  int spectral_rank = 1;
  for (const auto& op : spectral.ops)
    spectral_rank =
        std::max(spectral_rank, static_cast<int>(numerical_rank(op.f, tol)));
  out.bound = out.certificate = spectral_rank;
  out.source = "spectral";

  const auto& dims = rho.dims();
  if (dims[0] == dims[1] && dims[0] >= 2) {
    const int d = dims[0];
    double f = std::clamp(fidelity_with_max_entangled(rho), 0.0, 1.0);
    if (distance(rho.matrix(), isotropic_fidelity(d, f).matrix()) <=
        tol.psd_abs) {
      const double scaled = f * d;
      if (std::abs(scaled - std::round(scaled)) <= kThresholdSnap)
        f = std::round(scaled) / d;
      const int iso = sn_isotropic(d, f);
      if (iso < out.bound) {
        out.bound = out.certificate = iso;
        out.source = "isotropic";
      }
    }
  }
  return out;
}

SnBounds sn_bounds(const DensityMatrix& rho, const Tolerances& tol) {
  const LowerBound lo = sn_lower_bound(rho, tol);
  const UpperBound up = sn_upper_bound(rho, tol);
  if (lo.bound > up.bound)
    throw NumericalFailure("sn_bounds: lower bound " + std::to_string(lo.bound) +
                           " exceeds upper bound " + std::to_string(up.bound) +
                           "; tolerances too loose for this input");
  SnBounds out;
  out.lower = lo.bound;
  out.lower_witness = lo.witness;
  out.upper = up.bound;
  out.upper_certificate = up.certificate;
  out.upper_source = up.source;
  return out;
}

int sn_isotropic(int d, double f) {
  if (d < 1) throw InvalidInput("sn_isotropic: d must be >= 1");
  if (!(f >= 0.0 && f <= 1.0))
    throw InvalidInput("sn_isotropic: f outside [0, 1]");
  int k = std::clamp(static_cast<int>(std::ceil(f * d)), 1, d);
  while (k > 1 && f <= static_cast<double>(k - 1) / d) --k;
  while (k < d && f > static_cast<double>(k) / d) ++k;
  return k;
}

SnBounds channel_sn_bounds(const KrausChannel& phi, const Tolerances& tol) {
  const ChoiMatrix c = choi(phi, tol);
  SnBounds out = sn_bounds(c.state(), tol);
  const int kraus_rank = phi.max_kraus_rank(tol);
  if (kraus_rank < out.upper) {
    out.upper = out.upper_certificate = std::max(kraus_rank, 1);
    out.upper_source = "kraus";
  }
  if (out.lower > out.upper)
    throw NumericalFailure("channel_sn_bounds: witness lower bound exceeds "
                           "Kraus rank; tolerances too loose for this input");
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified_member:
      return "certified_member";
    case Verdict::certified_non_member:
      return "certified_non_member";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

PebtClassification classify_pebt(const KrausChannel& phi, int r,
                                 const Tolerances& tol) {
  if (!phi.is_square()) throw InvalidInput("classify_pebt: non-square channel");
  const int d = phi.d_in();
  if (r < 1 || r > d)
    throw InvalidInput("classify_pebt: r = " + std::to_string(r) +
                       " outside 1.." + std::to_string(d));
  PebtClassification out;
  out.r = r;
  out.bounds = channel_sn_bounds(phi, tol);
  if (out.bounds.upper <= r)
    out.verdict = Verdict::certified_member;
  else if (out.bounds.lower > r)
    out.verdict = Verdict::certified_non_member;
  else
    out.verdict = Verdict::unknown;
  return out;
}

RsClassification classify_rs_cpt(const KrausChannel& phi,
                                 const Tolerances& tol) {
  RsClassification out;
  out.r_bounds = channel_sn_bounds(phi, tol);
  const ChoiMatrix c = choi(phi, tol);
  const int dims[2] = {c.d(), c.d()};
  CMatrix pt = partial_transpose(c.matrix(), dims, 1);
  if (!is_psd(pt, tol)) return out;

  SnBounds s = sn_bounds(DensityMatrix(std::move(pt), {c.d(), c.d()}, tol), tol);
  // A product decomposition stays a product decomposition under partial
  // transposition, so a separability certificate transfers both ways.
  if (out.r_bounds.upper == 1 && s.upper > 1) {
    s.upper = s.upper_certificate = 1;
    s.upper_source = "transposed";
  }
  if (s.upper == 1 && out.r_bounds.upper > 1) {
    out.r_bounds.upper = out.r_bounds.upper_certificate = 1;
    out.r_bounds.upper_source = "transposed";
  }
  if (s.lower > s.upper || out.r_bounds.lower > out.r_bounds.upper)
    throw NumericalFailure("classify_rs_cpt: inconsistent bounds after "
                           "separability transfer");
  out.s_bounds = std::move(s);
  return out;
}

PushforwardReport pushforward_check(
    const KrausChannel& phi, const OperatorDecomposition& rho_decomposition,
    const Tolerances& tol) {
  const auto& weights = rho_decomposition.weights;
  const auto& ops = rho_decomposition.ops;
  if (!phi.is_square())
    throw InvalidInput("pushforward: channel must be square");
  if (ops.empty() || weights.size() != ops.size())
    throw InvalidInput("pushforward: weights and operators disagree");
  const int d = phi.d_in();
  double total = 0.0;
  for (std::size_t b = 0; b < ops.size(); ++b) {
    if (!(weights[b] >= 0.0))
      throw InvalidInput("pushforward: negative weight");
    total += weights[b];
    const CMatrix& f = ops[b].f;
    if (f.cols() != d)
      throw InvalidInput("pushforward: operator input side does not match channel");
    if (std::abs(ops[b].norm_squared() - 1.0) > kNormTolerance)
      throw InvalidInput("pushforward: operator not normalized");
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw InvalidInput("pushforward: weights do not sum to 1");

  PushforwardReport report;
  report.channel_rank = phi.max_kraus_rank(tol);
  report.ranks_bounded = true;
  for (std::size_t b = 0; b < ops.size(); ++b) {
    const CMatrix& f = ops[b].f;
    const int input_rank = static_cast<int>(numerical_rank(f, tol));
    report.max_input_rank = std::max(report.max_input_rank, input_rank);
    for (const CMatrix& k : phi.kraus_ops()) {
      CMatrix g = k * f;
      const double norm2 = g.squaredNorm();
      if (norm2 <= 1e-28 * std::max(1.0, k.squaredNorm() * f.squaredNorm()))
        continue;
      const int out_rank = static_cast<int>(numerical_rank(g, tol));
      report.max_output_rank = std::max(report.max_output_rank, out_rank);
      if (out_rank > std::min(report.channel_rank, input_rank))
        report.ranks_bounded = false;
      g /= std::sqrt(norm2);
      report.pushed.weights.push_back(weights[b] * norm2);
      report.pushed.ops.push_back(
          BipartitionOperator{std::move(g), ops[b].dims_a, {phi.d_out()}});
    }
  }

  const CMatrix target = extend_apply(phi, rho_decomposition.assemble());
  report.residual = distance(report.pushed.assemble(), target);
  report.ok = report.ranks_bounded && report.residual < 1e-10;
  return report;
}

PushforwardReport pushforward_check(const KrausChannel& phi,
                                             const DensityMatrix& rho,
                                             const Tolerances& tol) {
  OperatorDecomposition dec = spectral_decomposition(rho, 1, tol);
  double total = 0.0;
  for (double w : dec.weights) total += w;
  for (double& w : dec.weights) w /= total;
  return pushforward_check(phi, dec, tol);
}

}  // namespace qpebt
