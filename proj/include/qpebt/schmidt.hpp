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

// Schmidt-number brackets for states and channels.
//
// The Schmidt number is a minimum over all pure-state decompositions and is
// not computed exactly. Instead every result is a certified bracket
// lower <= SN <= upper:
//
//  * lower bounds come from positivity tests that every state of Schmidt
//    number <= k passes: (id (x) Lambda_{1/k}) rho >= 0 with the k-positive
//    reduction map, and the partial transpose for k = 1;
//  * upper bounds come from one explicit decomposition (the spectral one, the
//    caller's own Kraus list for channels) or from the closed-form Schmidt
//    number of an isotropic state when the input is recognized as one.
//
// Classification verdicts are tri-state accordingly.

#ifndef QPEBT_SCHMIDT_HPP
#define QPEBT_SCHMIDT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qpebt/channels.hpp"
#include "qpebt/states.hpp"

namespace qpebt {

struct SnBounds {
  int lower = 1;
  int upper = 1;
  std::string lower_witness = "none";
  // Largest operator rank in the decomposition certifying `upper`.
  int upper_certificate = 1;
  // "spectral", "isotropic", "kraus" or "transposed".
  std::string upper_source = "spectral";

  bool exact() const { return lower == upper; }
};

struct LowerBound {
  int bound = 1;
  std::string witness = "none";
  bool ppt_violated = false;
  // Largest k whose reduction witness fired; 0 when none did.
  int reduction_level = 0;
};

struct UpperBound {
  int bound = 1;
  int certificate = 1;
  std::string source = "spectral";
};

// Requires a state on C^d (x) C^d. The k = 1..d-1 witness levels are
// evaluated concurrently.
LowerBound sn_lower_bound(const DensityMatrix& rho,
                          const Tolerances& tol = kDefaultTolerances);

// Reference implementation evaluating the witness levels in order.
LowerBound sn_lower_bound_serial(const DensityMatrix& rho,
                                 const Tolerances& tol = kDefaultTolerances);

// Minimum of the spectral-decomposition certificate and, for isotropic
// inputs, the closed-form value. Requires a two-factor state.
UpperBound sn_upper_bound(const DensityMatrix& rho,
                          const Tolerances& tol = kDefaultTolerances);

// Throws NumericalFailure if the two bounds cross.
SnBounds sn_bounds(const DensityMatrix& rho,
                   const Tolerances& tol = kDefaultTolerances);

// The k with (k-1)/d < f <= k/d, and 1 for f <= 1/d.
int sn_isotropic(int d, double f);

SnBounds channel_sn_bounds(const KrausChannel& phi,
                           const Tolerances& tol = kDefaultTolerances);

enum class Verdict { certified_member, certified_non_member, unknown };

const char* to_string(Verdict v);

struct PebtClassification {
  int r = 1;
  Verdict verdict = Verdict::unknown;
  SnBounds bounds;
};

// Throws InvalidInput unless 1 <= r <= d.
PebtClassification classify_pebt(const KrausChannel& phi, int r,
                                 const Tolerances& tol = kDefaultTolerances);

struct RsClassification {
  SnBounds r_bounds;
  // Empty when the partially transposed Choi state is not PSD.
  std::optional<SnBounds> s_bounds;

  bool co_positive() const { return s_bounds.has_value(); }
};

RsClassification classify_rs_cpt(const KrausChannel& phi,
                                 const Tolerances& tol = kDefaultTolerances);

struct PushforwardReport {
  bool ok = false;
  double residual = 0.0;      // ||reassembled - (id (x) Phi) rho||_F
  int channel_rank = 0;       // max Kraus rank r
  int max_input_rank = 0;     // max rank F_beta
  int max_output_rank = 0;    // max rank of the pushed-forward operators
  bool ranks_bounded = false; // rank(K_a F_b) <= min(r, rank F_b) for all pairs
  OperatorDecomposition pushed;
};

// Pushes the decomposition rho = sum_b p_b P[F_b] through id (x) Phi:
// every pair (a, b) with K_a F_b != 0 contributes weight
// p_b Tr(F_b^dagger K_a^dagger K_a F_b) and operator K_a F_b normalized to
// unit Hilbert-Schmidt norm. `ok` requires residual < 1e-10 and bounded
// ranks.
PushforwardReport pushforward_check(
    const KrausChannel& phi, const OperatorDecomposition& rho_decomposition,
    const Tolerances& tol = kDefaultTolerances);

// Uses the spectral decomposition of rho.
PushforwardReport pushforward_check(
    const KrausChannel& phi, const DensityMatrix& rho,
    const Tolerances& tol = kDefaultTolerances);

}  // namespace qpebt

#endif  // QPEBT_SCHMIDT_HPP
