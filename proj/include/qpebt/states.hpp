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

// Bipartite and multipartite states and the vector <-> operator isomorphism.
//
// Index convention (read this before touching vec_to_op):
//
//   psi = sum_{i,j} x_ij e_i (x) e_j,   x_ij = <j|F|i>,
//
// so F maps the A factor to the B factor, its columns are indexed by A and
// its rows by B, and F is the *transpose* of the coefficient matrix x. With
// this choice psi = sum_i e_i (x) F e_i and psi = sqrt(d_A) (id (x) F) psi+.
//
// Amplitudes are stored big-endian: the first factor is the most significant
// digit of the flat index. Bipartitions are always "first `cut` factors vs
// the rest".

#ifndef QPEBT_STATES_HPP
#define QPEBT_STATES_HPP

#include <vector>

#include "qpebt/numerics.hpp"

namespace qpebt {

inline constexpr double kNormTolerance = 1e-12;

class PureState {
public:
  // Throws InvalidInput unless |amplitudes| = 1 within kNormTolerance and
  // product(dims) equals the vector length.
  PureState(CVector amplitudes, std::vector<int> dims);

  // Normalizes `amplitudes` first; throws on the zero vector.
  static PureState normalized(CVector amplitudes, std::vector<int> dims);

  const CVector& amplitudes() const { return amplitudes_; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return amplitudes_.size(); }

  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
  CVector amplitudes_;
  std::vector<int> dims_;
};

class DensityMatrix {
public:
  // Validates Hermiticity, PSD (within tol.psd_abs) and unit trace (within
  // kNormTolerance).
  DensityMatrix(CMatrix matrix, std::vector<int> dims,
                const Tolerances& tol = kDefaultTolerances);

  static DensityMatrix from_pure(const PureState& psi);

  const CMatrix& matrix() const { return matrix_; }
  const std::vector<int>& dims() const { return dims_; }
  long side() const { return matrix_.rows(); }

private:
  CMatrix matrix_;
  std::vector<int> dims_;
};

// F of a bipartition: columns indexed by the A factors, rows by the B ones.
struct BipartitionOperator {
  CMatrix f;
  std::vector<int> dims_a;
  std::vector<int> dims_b;

  // Tr(F^dagger F).
  double norm_squared() const { return f.squaredNorm(); }
};

// Throws InvalidInput unless 1 <= cut <= N-1.
BipartitionOperator vec_to_op(const PureState& psi, int cut);

// Inverse of vec_to_op: psi = sum_i e_i (x) F e_i.
PureState op_to_vec(const BipartitionOperator& f);

// Same as op_to_vec but without the unit-norm requirement.
CVector op_to_vec_raw(const CMatrix& f);

// Square F on C^d -> C^d (dims [d] | [d]).
BipartitionOperator square_operator(CMatrix f);

PureState max_entangled(int d);

RVector schmidt_coefficients(const PureState& psi, int cut);

int schmidt_rank(const PureState& psi, int cut,
                 const Tolerances& tol = kDefaultTolerances);

// (1 - lambda)/d^2 I (x) I + lambda P+, -1/(d^2 - 1) <= lambda <= 1.
DensityMatrix isotropic_lambda(int d, double lambda);

// (1 - f)/(d^2 - 1) (I (x) I - P+) + f P+, 0 <= f <= 1.
DensityMatrix isotropic_fidelity(int d, double f);

// f = lambda + (1 - lambda)/d^2.
double fidelity_from_lambda(int d, double lambda);

// Tr(rho P+) for a state on C^d (x) C^d.
double fidelity_with_max_entangled(const DensityMatrix& rho);

// sum_{ij} e_ij (x) F e_ij F^dagger = |psi_F><psi_F|. Requires Tr(F^dagger F)=1.
DensityMatrix projector_from_operator(const BipartitionOperator& f);

// rho = sum_a weights[a] * projector_from_operator(ops[a]).
struct OperatorDecomposition {
  std::vector<double> weights;
  std::vector<BipartitionOperator> ops;

  CMatrix assemble() const;
};

// Spectral decomposition of a bipartite state (first `cut` factors vs rest)
// written in operator form; eigenvalues <= tol.psd_abs are dropped. Uses the
// canonical eigh basis, so exactly degenerate eigenspaces are spanned by
// index-ordered vectors.
OperatorDecomposition spectral_decomposition(
    const DensityMatrix& rho, int cut = 1,
    const Tolerances& tol = kDefaultTolerances);

}  // namespace qpebt

#endif  // QPEBT_STATES_HPP
