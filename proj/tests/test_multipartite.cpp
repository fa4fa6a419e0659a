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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpebt/multipartite.hpp"
#include "qpebt/schmidt.hpp"
#include "test_support.hpp"

using namespace qpebt;
using namespace qpebt::testing;

namespace {

// Big-endian digits of a flat index.
std::vector<int> digits(long index, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
    out[f] = static_cast<int>(index % dims[f]);
    index /= dims[f];
  }
  return out;
}

long flat(const std::vector<int>& idx, const std::vector<int>& dims) {
  long out = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) out = out * dims[f] + idx[f];
  return out;
}

}  // namespace

TEST_CASE("GHZ and W constructors") {
  const MultipartiteState g = ghz();
  const MultipartiteState w = w_state();
  CHECK(g.parties() == 3);
  CHECK(g.pure().amplitudes().norm() == doctest::Approx(1.0));
  CHECK(std::abs(g.pure().amplitudes().dot(w.pure().amplitudes())) < 1e-15);
  CHECK(std::abs(w.pure().amplitudes()(1) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(w.pure().amplitudes()(2) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(w.pure().amplitudes()(4) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(schmidt_rank(g.pure(), 1) == 2);
  CHECK(ghz(4).pure().size() == 16);
  CHECK(w_state(4).pure().amplitudes()(8) == w_state(4).pure().amplitudes()(1));
  CHECK_THROWS_AS(MultipartiteState(PureState(identity(2).col(0), {2})), InvalidInput);
}

TEST_CASE("bipartition operators round trip for every cut") {
  Rng rng(kSeed + 500);
  for (int trial = 0; trial < 10; ++trial) {
    const MultipartiteState psi(random_pure({2, 3, 2, 2}, rng));
    for (int k = 1; k <= 3; ++k) {
      const BipartitionOperator f = bipartition_operator(psi, k);
      CHECK(op_to_vec(f).amplitudes() == psi.pure().amplitudes());
    }
    CHECK_THROWS_AS(bipartition_operator(psi, 0), InvalidInput);
    CHECK_THROWS_AS(bipartition_operator(psi, 4), InvalidInput);
  }
}

TEST_CASE("reduced states examples") {
  const ReducedStates g = reduced_states(ghz(), 1);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 0.5;
  CHECK(distance(g.rho_b.matrix(), expected) < 1e-15);
  CHECK(distance(g.rho_a.matrix(), identity(2) / 2.0) < 1e-15);

  const ReducedStates m = reduced_states(MultipartiteState(max_entangled(3)), 1);
  CHECK(distance(m.rho_a.matrix(), identity(3) / 3.0) < 1e-15);
  CHECK(distance(m.rho_b.matrix(), identity(3) / 3.0) < 1e-15);

  // W: (1/3)|00><00| + (2/3)|Psi+><Psi+|.
  const ReducedStates w = reduced_states(w_state(), 1);
  CVector psi_plus = CVector::Zero(4);
  psi_plus(1) = psi_plus(2) = 1.0 / std::sqrt(2.0);
  CMatrix wexp = (2.0 / 3.0) * psi_plus * psi_plus.adjoint();
  wexp(0, 0) += 1.0 / 3.0;
  CHECK(distance(w.rho_b.matrix(), wexp) < 1e-15);
}

TEST_CASE("reduced states agree with the partial trace") {
  Rng rng(kSeed + 501);
  const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 3}, {2, 2, 2}, {3, 2, 2}, {2, 2, 2, 2}};
  for (const auto& dims : shapes) {
    const MultipartiteState psi(random_pure(dims, rng));
    const CMatrix p = psi.pure().projector();
    for (int k = 1; k < static_cast<int>(dims.size()); ++k) {
      const ReducedStates r = reduced_states(psi, k);
      const long da = product(std::vector<int>(dims.begin(), dims.begin() + k));
      const long db = static_cast<long>(p.rows()) / da;
      CHECK(distance(r.rho_a.matrix(), oracle_trace_second(p, da, db)) < 1e-12);
      CHECK(distance(r.rho_b.matrix(), oracle_trace_first(p, da, db)) < 1e-12);
      // Same nonzero spectrum.
      const RVector ea = eigh(r.rho_a.matrix()).values.reverse();
      const RVector eb = eigh(r.rho_b.matrix()).values.reverse();
      const long n = std::min(ea.size(), eb.size());
      CHECK((ea.head(n) - eb.head(n)).norm() < 1e-12);
    }
  }
}

TEST_CASE("slice operators") {
  const SliceOperators g = slice_operators(ghz());
  REQUIRE(g.ops.size() == 2);
  CHECK(numerical_rank(g.ops[0]) == 1);
  CHECK(numerical_rank(g.ops[1]) == 1);
  CHECK(std::abs(g.ops[0](0, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(g.ops[1](1, 1) - 1.0 / std::sqrt(2.0)) < 1e-15);

  const SliceOperators w = slice_operators(w_state());
  CHECK(numerical_rank(w.ops[0]) == 2);
  CHECK(numerical_rank(w.ops[1]) == 1);

  Rng rng(kSeed + 502);
  const CVector a = random_pure({2}, rng).amplitudes();
  const CVector b = random_pure({2}, rng).amplitudes();
  const CVector c = random_pure({2}, rng).amplitudes();
  const MultipartiteState prod(PureState(kron(kron(a, b), c).col(0), {2, 2, 2}));
  for (const CMatrix& s : slice_operators(prod).ops) CHECK(numerical_rank(s) <= 1);

  CHECK_THROWS_AS(slice_operators(MultipartiteState(random_pure({2, 3, 2}, rng))), InvalidInput);
}

TEST_CASE("slice index relation holds entrywise") {
  Rng rng(kSeed + 503);
  for (int parties : {2, 3, 4}) {
    for (int d : {2, 3}) {
      if (parties == 4 && d == 3) continue;
      const std::vector<int> dims(parties, d);
      const MultipartiteState psi(random_pure(dims, rng));
      const SliceOperators s = slice_operators(psi);
      CHECK(s.total_norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
      const CVector& amp = psi.pure().amplitudes();
      for (long i = 0; i < amp.size(); ++i) {
        const auto idx = digits(i, dims);
        long slice = 0;
        for (int f = 0; f < parties - 2; ++f) slice = slice * d + idx[f];
        CHECK(s.ops[slice](idx[parties - 1], idx[parties - 2]) == amp(i));
      }
      if (parties == 2) CHECK(s.ops[0] == bipartition_operator(psi, 1).f);
    }
  }
}

TEST_CASE("factor permutation") {
  CHECK(permute_factors(w_state().pure(), {2, 0, 1}).amplitudes() == w_state().pure().amplitudes());
  CHECK(permute_factors(ghz().pure(), {1, 0, 2}).amplitudes() == ghz().pure().amplitudes());

  Rng rng(kSeed + 504);
  const std::vector<int> dims = {2, 3, 4};
  const std::vector<int> perm = {2, 0, 1};
  const PureState psi = random_pure(dims, rng);
  const PureState moved = permute_factors(psi, perm);
  const std::vector<int> new_dims = {4, 2, 3};
  CHECK(moved.dims() == new_dims);
  for (long i = 0; i < psi.amplitudes().size(); ++i) {
    const auto idx = digits(i, dims);
    const std::vector<int> nidx = {idx[2], idx[0], idx[1]};
    CHECK(moved.amplitudes()(flat(nidx, new_dims)) == psi.amplitudes()(i));
  }
  CHECK(distance(permute_factors(psi.projector(), dims, perm), moved.projector()) < 1e-15);
  CHECK(permute_factors(moved, {1, 2, 0}).amplitudes() == psi.amplitudes());
  CHECK_THROWS_AS(permute_factors(psi, {0, 0, 1}), InvalidInput);
  CHECK_THROWS_AS(permute_factors(psi, {0, 1}), InvalidInput);
}

TEST_CASE("Schmidt number of the two-qubit reductions") {
  const int keep[2] = {1, 2};
  const std::vector<int> dims = {2, 2, 2};
  const DensityMatrix g23(partial_trace(ghz().pure().projector(), dims, keep), {2, 2});
  const SnBounds bg = sn_bounds(g23);
  CHECK(bg.lower == 1);
  CHECK(bg.upper == 1);
  const DensityMatrix w23(partial_trace(w_state().pure().projector(), dims, keep), {2, 2});
  const SnBounds bw = sn_bounds(w23);
  CHECK(bw.lower == 2);
  CHECK(bw.upper == 2);
  CHECK(bw.lower_witness.rfind("partial_transpose", 0) == 0);
}

TEST_CASE("even party channels") {
  // P+ on d^K as a 2K-party state gives the identity channel.
  const KrausChannel id1 = even_party_channel(DensityMatrix::from_pure(max_entangled(3)));
  CHECK(distance(choi(id1).matrix(), max_entangled(3).projector()) < 1e-12);
  CHECK(id1.kraus_ops().size() == 1);

  CVector p4 = CVector::Zero(16);
  for (int i = 0; i < 4; ++i) p4(i * 4 + i) = 0.5;
  const KrausChannel id2 = even_party_channel(DensityMatrix::from_pure(PureState(p4, {2, 2, 2, 2})));
  REQUIRE(id2.d_in() == 4);
  Rng rng(kSeed + 505);
  const CMatrix x = random_density({4}, rng).matrix();
  CHECK(distance(id2.act(x), x) < 1e-12);

  // Rank-one operators give an entanglement-breaking channel.
  const KrausChannel dep = even_party_channel(DensityMatrix(identity(4) / 4.0, {2, 2}));
  CHECK(dep.max_kraus_rank() == 1);

  // Valid Choi states: same channel as kraus_from_choi.
  for (int trial = 0; trial < 10; ++trial) {
    const KrausChannel phi = random_channel(3, 1 + trial % 4, rng);
    const ChoiMatrix c = choi(phi);
    const KrausChannel ep = even_party_channel(c.state());
    const KrausChannel kc = kraus_from_choi(c);
    REQUIRE(ep.kraus_ops().size() == kc.kraus_ops().size());
    for (std::size_t a = 0; a < kc.kraus_ops().size(); ++a)
      CHECK(distance(ep.kraus_ops()[a], kc.kraus_ops()[a]) < 1e-12);
    CHECK(distance(choi(ep).matrix(), c.matrix()) < 1e-12);
  }

  // Explicit decomposition with rank-capped operators.
  const KrausChannel capped = random_rank_capped_channel(3, 4, 2, rng);
  const ChoiMatrix cc = choi(capped);
  const KrausChannel back = even_party_channel(cc.state(), choi_decomposition(capped));
  CHECK(back.max_kraus_rank() <= 2);
  CHECK(distance(choi(back).matrix(), cc.matrix()) < 1e-12);

  CHECK_THROWS_AS(even_party_channel(DensityMatrix::from_pure(ghz().pure())), InvalidInput);
  OperatorDecomposition wrong = choi_decomposition(capped);
  wrong.weights[0] *= 0.5;
  CHECK_THROWS_AS(even_party_channel(cc.state(), wrong), InvalidInput);
}
