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

#include "qpebt/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qpebt {

namespace {

std::vector<long> strides_of(const std::vector<int>& dims) {
  std::vector<long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
    s[i] = s[i + 1] * dims[i + 1];
  return s;
}

// index_map[new_flat] = old_flat.
std::vector<long> permutation_index_map(const std::vector<int>& dims,
                                        const std::vector<int>& perm) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n)
    throw InvalidInput("permute_factors: permutation length mismatch");
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i) throw InvalidInput("permute_factors: not a permutation");

  std::vector<int> new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = dims[perm[i]];
  const auto old_strides = strides_of(dims);
  const long total = static_cast<long>(product(dims));
  std::vector<long> out(total);
  for (long flat = 0; flat < total; ++flat) {
    long rest = flat;
    long old_flat = 0;
    for (int i = n - 1; i >= 0; --i) {
      old_flat += (rest % new_dims[i]) * old_strides[perm[i]];
      rest /= new_dims[i];
    }
    out[flat] = old_flat;
  }
  return out;
}

}  // namespace

MultipartiteState::MultipartiteState(PureState psi) : psi_(std::move(psi)) {
  if (psi_.dims().size() < 2)
    throw InvalidInput("multipartite state needs at least two parties");
}

BipartitionOperator bipartition_operator(const MultipartiteState& psi, int k) {
  return vec_to_op(psi.pure(), k);
}

ReducedStates reduced_states(const MultipartiteState& psi, int k) {
  const BipartitionOperator f = bipartition_operator(psi, k);
  CMatrix rho_a = (f.f.adjoint() * f.f).transpose();
  CMatrix rho_b = f.f * f.f.adjoint();
  return {DensityMatrix(std::move(rho_a), f.dims_a),
          DensityMatrix(std::move(rho_b), f.dims_b)};
}

double SliceOperators::total_norm_squared() const {
  double s = 0.0;
  for (const CMatrix& op : ops) s += op.squaredNorm();
  return s;
}

SliceOperators slice_operators(const MultipartiteState& psi) {
  const auto& dims = psi.pure().dims();
  const int d = dims.front();
  if (std::any_of(dims.begin(), dims.end(), [d](int x) { return x != d; }))
    throw InvalidInput("slice_operators: all subsystem dimensions must agree");
  SliceOperators out;
  out.d = d;
  out.parties = psi.parties();
  // Columns [s*d, (s+1)*d) of the (N-1 | 1) bipartition operator.
  const CMatrix f = bipartition_operator(psi, psi.parties() - 1).f;
  const long count = f.cols() / d;
  for (long s = 0; s < count; ++s) out.ops.push_back(f.middleCols(s * d, d));
  return out;
}

MultipartiteState ghz(int parties) {
  if (parties < 2) throw InvalidInput("ghz: need at least two parties");
  const long n = 1L << parties;
  CVector v = CVector::Zero(n);
  v(0) = v(n - 1) = 1.0 / std::sqrt(2.0);
  return MultipartiteState(PureState(std::move(v), std::vector<int>(parties, 2)));
}

MultipartiteState w_state(int parties) {
  if (parties < 2) throw InvalidInput("w_state: need at least two parties");
  const long n = 1L << parties;
  CVector v = CVector::Zero(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(parties));
  for (int q = 0; q < parties; ++q) v(1L << q) = amp;
  return MultipartiteState(PureState(std::move(v), std::vector<int>(parties, 2)));
}

PureState permute_factors(const PureState& psi, const std::vector<int>& perm) {
  const auto map = permutation_index_map(psi.dims(), perm);
  CVector v(psi.size());
  for (long i = 0; i < v.size(); ++i) v(i) = psi.amplitudes()(map[i]);
  std::vector<int> dims(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) dims[i] = psi.dims()[perm[i]];
  return PureState(std::move(v), std::move(dims));
}

CMatrix permute_factors(const CMatrix& rho, const std::vector<int>& dims,
                        const std::vector<int>& perm) {
  if (rho.rows() != rho.cols() ||
      static_cast<std::size_t>(rho.rows()) != product(dims))
    throw InvalidInput("permute_factors: matrix does not match dims");
  const auto map = permutation_index_map(dims, perm);
  CMatrix out(rho.rows(), rho.cols());
  for (long j = 0; j < out.cols(); ++j)
    for (long i = 0; i < out.rows(); ++i) out(i, j) = rho(map[i], map[j]);
  return out;
}

KrausChannel even_party_channel(const DensityMatrix& rho,
                                const OperatorDecomposition& decomposition) {
  const auto& dims = rho.dims();
  if (dims.size() % 2 != 0)
    throw InvalidInput("even_party_channel: odd number of parties");
  const int d = dims.front();
  if (std::any_of(dims.begin(), dims.end(), [d](int x) { return x != d; }))
    throw InvalidInput("even_party_channel: all subsystem dimensions must agree");
  const int half = static_cast<int>(dims.size() / 2);
  const long side = static_cast<long>(std::llround(std::pow(d, half)));
  for (const auto& op : decomposition.ops)
    if (op.f.rows() != side || op.f.cols() != side)
      throw InvalidInput("even_party_channel: operator is not d^K x d^K");
  if (distance(decomposition.assemble(), rho.matrix()) > 1e-10)
    throw InvalidInput("even_party_channel: decomposition does not reassemble rho");

  std::vector<CMatrix> kraus;
  for (std::size_t a = 0; a < decomposition.ops.size(); ++a) {
    const double w = decomposition.weights[a];
    if (w < 0.0) throw InvalidInput("even_party_channel: negative weight");
    if (w == 0.0) continue;
    kraus.push_back(std::sqrt(static_cast<double>(side) * w) *
                    decomposition.ops[a].f);
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel even_party_channel(const DensityMatrix& rho,
                                const Tolerances& tol) {
  if (rho.dims().size() % 2 != 0)
    throw InvalidInput("even_party_channel: odd number of parties");
  const int half = static_cast<int>(rho.dims().size() / 2);
  return even_party_channel(rho, spectral_decomposition(rho, half, tol));
}

}  // namespace qpebt
