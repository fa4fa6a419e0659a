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

#include "qpebt/states.hpp"

#include <algorithm>
#include <cmath>

namespace qpebt {

namespace {

void require_bipartite_square(const std::vector<int>& dims, const char* what) {
  if (dims.size() != 2 || dims[0] != dims[1])
    throw InvalidInput(std::string(what) +
                       ": expected a state on C^d (x) C^d");
}

CMatrix max_entangled_projector(int d) {
  const CVector v = max_entangled(d).amplitudes();
  return v * v.adjoint();
}

}  // namespace

PureState::PureState(CVector amplitudes, std::vector<int> dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (product(dims_) != static_cast<std::size_t>(amplitudes_.size()))
    throw InvalidInput("pure state: product of dims " +
                       std::to_string(product(dims_)) +
                       " does not match vector length " +
                       std::to_string(amplitudes_.size()));
  if (!amplitudes_.allFinite())
    throw InvalidInput("pure state: non-finite amplitude");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance)
    throw InvalidInput("pure state: squared norm " + std::to_string(norm2) +
                       " is not 1");
}

PureState PureState::normalized(CVector amplitudes, std::vector<int> dims) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw InvalidInput("pure state: zero vector");
  return PureState(amplitudes / n, std::move(dims));
}

DensityMatrix::DensityMatrix(CMatrix matrix, std::vector<int> dims,
                             const Tolerances& tol)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.rows() != matrix_.cols())
    throw InvalidInput("density matrix: not square");
  if (product(dims_) != static_cast<std::size_t>(matrix_.rows()))
    throw InvalidInput("density matrix: product of dims " +
                       std::to_string(product(dims_)) +
                       " does not match side " +
                       std::to_string(matrix_.rows()));
  if (!matrix_.allFinite())
    throw InvalidInput("density matrix: non-finite entry");
  if (!is_hermitian(matrix_, tol.psd_abs))
    throw InvalidInput("density matrix: not Hermitian");
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance)
    throw InvalidInput("density matrix: trace " + std::to_string(tr) +
                       " is not 1");
  if (!is_psd(matrix_, tol))
    throw InvalidInput("density matrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), psi.dims());
}

BipartitionOperator vec_to_op(const PureState& psi, int cut) {
  const auto& dims = psi.dims();
  const int n = static_cast<int>(dims.size());
  if (cut < 1 || cut > n - 1)
    throw InvalidInput("vec_to_op: cut " + std::to_string(cut) +
                       " outside 1.." + std::to_string(n - 1));
  BipartitionOperator out;
  out.dims_a.assign(dims.begin(), dims.begin() + cut);
  out.dims_b.assign(dims.begin() + cut, dims.end());
  const long da = static_cast<long>(product(out.dims_a));
  const long db = static_cast<long>(product(out.dims_b));
  // Column-major storage makes F(j, i) = psi[i * db + j] a plain reshape.
  out.f = Eigen::Map<const CMatrix>(psi.amplitudes().data(), db, da);
  return out;
}

CVector op_to_vec_raw(const CMatrix& f) {
  return Eigen::Map<const CVector>(f.data(), f.size());
}

PureState op_to_vec(const BipartitionOperator& f) {
  std::vector<int> dims = f.dims_a;
  dims.insert(dims.end(), f.dims_b.begin(), f.dims_b.end());
  if (static_cast<std::size_t>(f.f.cols()) != product(f.dims_a) ||
      static_cast<std::size_t>(f.f.rows()) != product(f.dims_b))
    throw InvalidInput("op_to_vec: operator shape does not match dims");
  return PureState(op_to_vec_raw(f.f), std::move(dims));
}

BipartitionOperator square_operator(CMatrix f) {
  if (f.rows() != f.cols())
    throw InvalidInput("square_operator: F must be square");
  const int d = static_cast<int>(f.rows());
  return BipartitionOperator{std::move(f), {d}, {d}};
}

PureState max_entangled(int d) {
  if (d < 1) throw InvalidInput("max_entangled: d must be >= 1");
  CVector v = CVector::Zero(static_cast<long>(d) * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) v(static_cast<long>(k) * d + k) = amp;
  return PureState(std::move(v), {d, d});
}

RVector schmidt_coefficients(const PureState& psi, int cut) {
  return singular_values(vec_to_op(psi, cut).f);
}

int schmidt_rank(const PureState& psi, int cut, const Tolerances& tol) {
  return static_cast<int>(numerical_rank(vec_to_op(psi, cut).f, tol));
}

DensityMatrix isotropic_lambda(int d, double lambda) {
  if (d < 2) throw InvalidInput("isotropic_lambda: d must be >= 2");
  const double lo = -1.0 / (static_cast<double>(d) * d - 1.0);
  if (!(lambda >= lo - 1e-12 && lambda <= 1.0 + 1e-12))
    throw InvalidInput("isotropic_lambda: lambda " + std::to_string(lambda) +
                       " outside [-1/(d^2-1), 1]");
  lambda = std::clamp(lambda, lo, 1.0);
  const long n = static_cast<long>(d) * d;
  CMatrix m = (1.0 - lambda) / static_cast<double>(n) * CMatrix::Identity(n, n) +
              lambda * max_entangled_projector(d);
  return DensityMatrix(std::move(m), {d, d});
}

DensityMatrix isotropic_fidelity(int d, double f) {
  if (d < 2) throw InvalidInput("isotropic_fidelity: d must be >= 2");
  if (!(f >= 0.0 && f <= 1.0))
    throw InvalidInput("isotropic_fidelity: f " + std::to_string(f) +
                       " outside [0, 1]");
  const long n = static_cast<long>(d) * d;
  const CMatrix p = max_entangled_projector(d);
  CMatrix m = (1.0 - f) / (static_cast<double>(n) - 1.0) *
                  (CMatrix::Identity(n, n) - p) +
              f * p;
  return DensityMatrix(std::move(m), {d, d});
}

double fidelity_from_lambda(int d, double lambda) {
  return lambda + (1.0 - lambda) / (static_cast<double>(d) * d);
}

double fidelity_with_max_entangled(const DensityMatrix& rho) {
  require_bipartite_square(rho.dims(), "fidelity_with_max_entangled");
  const CVector v = max_entangled(rho.dims()[0]).amplitudes();
  return v.dot(rho.matrix() * v).real();
}

DensityMatrix projector_from_operator(const BipartitionOperator& f) {
  if (std::abs(f.norm_squared() - 1.0) > kNormTolerance)
    throw InvalidInput("projector_from_operator: Tr(F^dagger F) = " +
                       std::to_string(f.norm_squared()) + ", expected 1");
  const long da = f.f.cols();
  const long db = f.f.rows();
  CMatrix out(da * db, da * db);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = f.f.col(i) * f.f.col(j).adjoint();
  std::vector<int> dims = f.dims_a;
  dims.insert(dims.end(), f.dims_b.begin(), f.dims_b.end());
  return DensityMatrix(std::move(out), std::move(dims));
}

CMatrix OperatorDecomposition::assemble() const {
  if (ops.empty() || weights.size() != ops.size())
    throw InvalidInput("decomposition: weights and operators disagree");
  const long n = ops.front().f.size();
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t a = 0; a < ops.size(); ++a)
    out += weights[a] * projector_from_operator(ops[a]).matrix();
  return out;
}

OperatorDecomposition spectral_decomposition(const DensityMatrix& rho, int cut,
                                             const Tolerances& tol) {
  const Eigensystem es = eigh(rho.matrix(), tol);
  OperatorDecomposition out;
  for (long i = es.values.size() - 1; i >= 0; --i) {
    if (es.values(i) <= tol.psd_abs) continue;
    out.weights.push_back(es.values(i));
    out.ops.push_back(
        vec_to_op(PureState::normalized(es.vectors.col(i), rho.dims()), cut));
  }
  return out;
}

}  // namespace qpebt
