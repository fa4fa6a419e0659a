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

#ifndef QPEBT_CHANNELS_HPP
#define QPEBT_CHANNELS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpebt/numerics.hpp"
#include "qpebt/states.hpp"

namespace qpebt {

inline constexpr double kTracePreservingTolerance = 1e-10;

// Phi(rho) = sum_a K_a rho K_a^dagger with sum_a K_a^dagger K_a = I.
class KrausChannel {
public:
  // Throws InvalidInput on empty lists, shape mismatches, or a
  // trace-preservation residual ||sum K^dagger K - I||_F above
  // kTracePreservingTolerance (the message carries the residual).
  explicit KrausChannel(std::vector<CMatrix> kraus_ops);

  const std::vector<CMatrix>& kraus_ops() const { return ops_; }
  int d_in() const { return static_cast<int>(ops_.front().cols()); }
  int d_out() const { return static_cast<int>(ops_.front().rows()); }
  bool is_square() const { return d_in() == d_out(); }

  // Largest numerical rank among the Kraus operators.
  int max_kraus_rank(const Tolerances& tol = kDefaultTolerances) const;

  // Sum_a K_a x K_a^dagger on an arbitrary d_in x d_in operator.
  CMatrix act(const CMatrix& x) const;

private:
  std::vector<CMatrix> ops_;
};

// Trace-one Choi state rho_Phi = (id (x) Phi) P+.
class ChoiMatrix {
public:
  // Validates PSD, unit trace and Tr_2 rho = I/d.
  ChoiMatrix(CMatrix matrix, int d, const Tolerances& tol = kDefaultTolerances);

  const CMatrix& matrix() const { return matrix_; }
  int d() const { return d_; }
  DensityMatrix state() const;

private:
  CMatrix matrix_;
  int d_;
};

enum class CpFlag { unknown, yes, no };

// A linear map on operators known only through its action. Used for maps
// without a Kraus form such as the reduction family.
class HermitianPreservingMap {
public:
  using Kernel = std::function<CMatrix(const CMatrix&)>;

  HermitianPreservingMap(Kernel kernel, int d_in, int d_out,
                         CpFlag is_cp = CpFlag::unknown,
                         std::string description = {});

  static HermitianPreservingMap from_channel(const KrausChannel& phi);

  CMatrix operator()(const CMatrix& x) const;

  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }
  CpFlag is_cp() const { return is_cp_; }
  const std::string& description() const { return description_; }
  const Kernel& kernel() const { return kernel_; }

  // k for which the map is known to be k-positive but not (k+1)-positive;
  // empty when not recorded.
  std::optional<int> positivity_level;

private:
  Kernel kernel_;
  int d_in_;
  int d_out_;
  CpFlag is_cp_;
  std::string description_;
};

KrausChannel channel_from_kraus(std::vector<CMatrix> ops);

KrausChannel identity_channel(int d);

// Single Kraus operator U.
KrausChannel unitary_channel(const CMatrix& u);

// K_k = |k><k|.
KrausChannel dephasing_channel(int d);

DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho);

// (id_{outer} (x) m) on an operator whose last factor has dimension m.d_in().
// The outer dimension is inferred from the side length.
CMatrix extend_apply(const HermitianPreservingMap& m, const CMatrix& x);
CMatrix extend_apply(const KrausChannel& phi, const CMatrix& x);
CMatrix extend_apply(const HermitianPreservingMap& m, const DensityMatrix& rho);
CMatrix extend_apply(const KrausChannel& phi, const DensityMatrix& rho);

ChoiMatrix choi(const KrausChannel& phi,
                const Tolerances& tol = kDefaultTolerances);

// (1/d) sum_ij e_ij (x) m(e_ij) for an arbitrary square map. Not normalized
// to unit trace unless m is trace preserving.
CMatrix choi_matrix(const HermitianPreservingMap& m);

// Canonical Kraus set from the spectral decomposition of the Choi state:
// K_i = sqrt(d lambda_i) * F(v_i) for eigenvalues lambda_i > psd_abs.
KrausChannel kraus_from_choi(const ChoiMatrix& c,
                             const Tolerances& tol = kDefaultTolerances);

// The Choi-state decomposition induced by a Kraus list:
// p_a = Tr(K_a^dagger K_a)/d, F_a = K_a / sqrt(d p_a). Zero operators are
// skipped.
OperatorDecomposition choi_decomposition(const KrausChannel& phi);

// Weyl unitaries U = X^m Z^n ordered by alpha = n*d + m, so for d = 2 the
// list is {I, X, Z, XZ}. Tr(U_a U_b^dagger) = d delta_ab.
std::vector<CMatrix> weyl_unitaries(int d);

// Kraus operators sqrt(p_a) U_a over the Weyl family; zero weights are
// dropped.
KrausChannel mixed_unitary_channel(int d, const std::vector<double>& p);

// Phi_lambda(rho) = (1 - lambda)/d Tr(rho) I + lambda rho.
KrausChannel phi_lambda(int d, double lambda);

// Phi_lambda(rho) = (1 - lambda)/d Tr(rho) I + lambda Psi(rho) for a
// positive trace-preserving Psi.
HermitianPreservingMap phi_lambda(int d, double lambda,
                                  const HermitianPreservingMap& psi);

// Channel whose Choi state is isotropic_fidelity(d, f):
// Phi_f(rho) = d(1 - f)/(d^2 - 1) Tr(rho) I + (d^2 f - 1)/(d^2 - 1) rho.
// Completely positive exactly for f in [0, 1]; outside, throws with the
// Choi minimum eigenvalue in the message.
KrausChannel phi_f(int d, double f);

// Lambda_mu(sigma) = I Tr(sigma) - mu sigma. Records positivity_level
// floor(1/mu) capped at d (0 when mu > 1). Throws for mu <= 0.
HermitianPreservingMap reduction_map(int d, double mu);

// a o b: apply b first.
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);
HermitianPreservingMap compose(const HermitianPreservingMap& a,
                               const HermitianPreservingMap& b);

// Partial transpose of the Choi state is PSD.
bool is_ccp(const KrausChannel& phi,
            const Tolerances& tol = kDefaultTolerances);

}  // namespace qpebt

#endif  // QPEBT_CHANNELS_HPP
