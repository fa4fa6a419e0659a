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

#include "qpebt/channels.hpp"
#include "test_support.hpp"

using namespace qpebt;
using namespace qpebt::testing;

namespace {

CMatrix pauli_x() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = -1.0;
  return m;
}

// (1/d) sum_ij e_ij (x) Phi(e_ij), written out entry by entry.
CMatrix oracle_choi(const KrausChannel& phi) {
  const int d = phi.d_in();
  const int e = phi.d_out();
  CMatrix out = CMatrix::Zero(static_cast<long>(d) * e, static_cast<long>(d) * e);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix eij = CMatrix::Zero(d, d);
      eij(i, j) = 1.0;
      CMatrix img = CMatrix::Zero(e, e);
      for (const CMatrix& k : phi.kraus_ops()) img += k * eij * k.adjoint();
      out.block(static_cast<long>(i) * e, static_cast<long>(j) * e, e, e) = img / d;
    }
  return out;
}

KrausChannel bit_flip(double p) {
  return KrausChannel({std::sqrt(1.0 - p) * identity(2), std::sqrt(p) * pauli_x()});
}

}  // namespace

TEST_CASE("Kraus channel validation") {
  CHECK_THROWS_AS(KrausChannel({}), InvalidInput);
  CHECK_THROWS_AS(KrausChannel({identity(2), identity(2)}), InvalidInput);
  CHECK_THROWS_AS(KrausChannel({identity(2), identity(3)}), InvalidInput);
  CHECK_NOTHROW(KrausChannel({(1.0 + 1e-12) * identity(2)}));
  try {
    KrausChannel({1.1 * identity(2)});
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("trace preserving") != std::string::npos);
  }
}

TEST_CASE("Choi matrix validation") {
  CHECK_NOTHROW(ChoiMatrix(identity(4) / 4.0, 2));
  CHECK_THROWS_AS(ChoiMatrix(identity(4) / 2.0, 2), InvalidInput);
  CHECK_THROWS_AS(ChoiMatrix(identity(4) / 4.0, 3), InvalidInput);
  // Unit trace and PSD, but Tr_2 is not I/d.
  CMatrix skewed = CMatrix::Zero(4, 4);
  skewed(0, 0) = 1.0;
  CHECK_THROWS_AS(ChoiMatrix(skewed, 2), InvalidInput);
  // Tr_2 = I/2 and unit trace but an eigenvalue -1/2.
  const int dims[2] = {2, 2};
  const CMatrix pt = partial_transpose(max_entangled(2).projector(), dims, 1);
  CHECK_THROWS_AS(ChoiMatrix(pt, 2), InvalidInput);
}

TEST_CASE("Choi state examples") {
  CHECK(distance(choi(identity_channel(3)).matrix(), max_entangled(3).projector()) < 1e-15);
  for (int d = 2; d <= 4; ++d) {
    const double dd = static_cast<double>(d) * d;
    CHECK(distance(choi(phi_lambda(d, 0.0)).matrix(), identity(d * d) / dd) < 1e-14);
    for (double f : {0.0, 0.3, 0.5, 1.0})
      CHECK(distance(choi(phi_f(d, f)).matrix(), isotropic_fidelity(d, f).matrix()) < 1e-14);
  }
  const ChoiMatrix bf = choi(bit_flip(0.3));
  CHECK(numerical_rank(bf.matrix()) == 2);
  CHECK(distance(bf.matrix(), oracle_choi(bit_flip(0.3))) < 1e-15);
}

TEST_CASE("Kraus extraction examples") {
  const KrausChannel k = kraus_from_choi(choi(identity_channel(2)));
  REQUIRE(k.kraus_ops().size() == 1);
  CHECK(distance(k.kraus_ops()[0], identity(2)) < 1e-14);

  const KrausChannel dep = kraus_from_choi(choi(phi_lambda(2, 0.0)));
  CHECK(dep.kraus_ops().size() == 4);

  const KrausChannel bf = kraus_from_choi(choi(bit_flip(0.3)));
  CHECK(bf.kraus_ops().size() == 2);
}

TEST_CASE("Choi and Kraus forms round trip on random channels") {
  Rng rng(kSeed + 300);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 4;
    const int n = 1 + trial % 5;
    const KrausChannel phi = random_channel(d, n, rng);
    const ChoiMatrix c = choi(phi);
    CHECK(distance(c.matrix(), oracle_choi(phi)) < 1e-12);
    CHECK(distance(c.matrix(), choi_matrix(HermitianPreservingMap::from_channel(phi))) < 1e-12);

    const KrausChannel back = kraus_from_choi(c);
    CHECK(back.kraus_ops().size() == numerical_rank(c.matrix()));
    CHECK(back.kraus_ops().size() <= static_cast<std::size_t>(std::min(n, d * d)));
    CHECK(distance(choi(back).matrix(), c.matrix()) < 1e-12);
    for (int s = 0; s < 3; ++s) {
      const CMatrix rho = random_density({d}, rng).matrix();
      CHECK(distance(back.act(rho), phi.act(rho)) < 1e-12);
    }
    CHECK(distance(choi_decomposition(phi).assemble(), c.matrix()) < 1e-12);
  }
}

TEST_CASE("Kraus extraction orthogonality") {
  Rng rng(kSeed + 301);
  const KrausChannel k = kraus_from_choi(choi(random_channel(3, 4, rng)));
  const auto& ops = k.kraus_ops();
  for (std::size_t a = 0; a < ops.size(); ++a)
    for (std::size_t b = a + 1; b < ops.size(); ++b)
      CHECK(std::abs((ops[a].adjoint() * ops[b]).trace()) < 1e-12);
}

TEST_CASE("extend_apply matches the lifted Kraus sum") {
  Rng rng(kSeed + 302);
  for (int outer : {1, 2, 3}) {
    const KrausChannel phi = random_channel(3, 2, rng);
    const CMatrix x = random_matrix(outer * 3, outer * 3, rng);
    CHECK(distance(extend_apply(phi, x), oracle_extend_apply(phi, x)) < 1e-12);
    CHECK(distance(extend_apply(HermitianPreservingMap::from_channel(phi), x),
                   oracle_extend_apply(phi, x)) < 1e-12);
  }
  CHECK_THROWS_AS(extend_apply(identity_channel(2), identity(3)), InvalidInput);
}

TEST_CASE("apply returns a state") {
  Rng rng(kSeed + 303);
  const KrausChannel phi = random_channel(3, 3, rng);
  const DensityMatrix rho = random_density({3}, rng);
  const DensityMatrix out = apply(phi, rho);
  CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-12);
  CHECK(is_psd(out.matrix()));
}

TEST_CASE("Weyl unitaries") {
  const auto w2 = weyl_unitaries(2);
  REQUIRE(w2.size() == 4);
  CHECK(distance(w2[0], identity(2)) < 1e-15);
  CHECK(distance(w2[1], pauli_x()) < 1e-15);
  CHECK(distance(w2[2], pauli_z()) < 1e-15);
  CHECK(distance(w2[3], pauli_x() * pauli_z()) < 1e-15);
  for (int d = 2; d <= 5; ++d) {
    const auto w = weyl_unitaries(d);
    REQUIRE(w.size() == static_cast<std::size_t>(d * d));
    for (std::size_t a = 0; a < w.size(); ++a) {
      CHECK(distance(w[a] * w[a].adjoint(), identity(d)) < 1e-12);
      for (std::size_t b = 0; b < w.size(); ++b) {
        const complex_t g = (w[a] * w[b].adjoint()).trace();
        CHECK(std::abs(g - (a == b ? complex_t(d) : complex_t(0.0))) < 1e-12);
      }
    }
  }
}

TEST_CASE("mixed unitary channels") {
  const KrausChannel m = mixed_unitary_channel(2, {0.5, 0.5, 0.0, 0.0});
  CHECK(m.kraus_ops().size() == 2);
  CHECK(distance(choi(m).matrix(), choi(bit_flip(0.5)).matrix()) < 1e-14);
  CHECK_THROWS_AS(mixed_unitary_channel(2, {0.5, 0.5}), InvalidInput);
  CHECK_THROWS_AS(mixed_unitary_channel(2, {1.1, -0.1, 0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(mixed_unitary_channel(2, {0.5, 0.4, 0.0, 0.0}), InvalidInput);

  // Unital.
  Rng rng(kSeed + 304);
  std::vector<double> p(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double total = 0.0;
  for (double& x : p) total += (x = u(rng));
  for (double& x : p) x /= total;
  CHECK(distance(mixed_unitary_channel(3, p).act(identity(3)), identity(3)) < 1e-12);
}

TEST_CASE("phi_lambda and phi_f") {
  Rng rng(kSeed + 305);
  for (int d = 2; d <= 4; ++d) {
    const double dd = static_cast<double>(d) * d;
    for (double lambda : {-1.0 / (dd - 1.0), 0.0, 0.25, 1.0}) {
      const KrausChannel phi = phi_lambda(d, lambda);
      const CMatrix rho = random_density({d}, rng).matrix();
      const CMatrix expected = (1.0 - lambda) / d * identity(d) + lambda * rho;
      CHECK(distance(phi.act(rho), expected) < 1e-12);
      CHECK(distance(phi.act(identity(d)), identity(d)) < 1e-12);
      const auto via_map = phi_lambda(d, lambda, HermitianPreservingMap::from_channel(identity_channel(d)));
      CHECK(distance(via_map(rho), expected) < 1e-12);
    }
    CHECK_THROWS_AS(phi_lambda(d, 1.5), InvalidInput);
    CHECK_THROWS_AS(phi_f(d, 1.1), InvalidInput);
    CHECK_THROWS_AS(phi_f(d, -0.1), InvalidInput);
    for (double f : {0.0, 1.0 / dd, 0.5, 1.0}) {
      const CMatrix rho = random_density({d}, rng).matrix();
      const CMatrix expected =
          d * (1.0 - f) / (dd - 1.0) * identity(d) + (dd * f - 1.0) / (dd - 1.0) * rho;
      CHECK(distance(phi_f(d, f).act(rho), expected) < 1e-12);
    }
    CHECK(distance(choi(phi_f(d, 1.0 / dd)).matrix(), identity(d * d) / dd) < 1e-14);
    // phi_f is phi_lambda with f = lambda + (1 - lambda)/d^2.
    const double lambda = 0.4;
    const CMatrix rho = random_density({d}, rng).matrix();
    CHECK(distance(phi_f(d, fidelity_from_lambda(d, lambda)).act(rho),
                   phi_lambda(d, lambda).act(rho)) < 1e-12);
  }
}

TEST_CASE("reduction map") {
  Rng rng(kSeed + 306);
  for (int d = 2; d <= 4; ++d) {
    for (double mu : {0.2, 0.5, 1.0, 2.0}) {
      const auto lam = reduction_map(d, mu);
      const CMatrix s = random_matrix(d, d, rng);
      CHECK(std::abs(lam(s).trace() - (d - mu) * s.trace()) < 1e-12);
      CHECK(distance(lam(s), s.trace() * identity(d) - mu * s) < 1e-14);
      CHECK((lam.is_cp() == CpFlag::yes) == (mu <= 1.0 / d + 1e-12));
    }
  }
  CHECK(reduction_map(2, 1.0).positivity_level == 1);
  CHECK(reduction_map(3, 0.5).positivity_level == 2);
  CHECK(reduction_map(3, 1.0 / 3.0).positivity_level == 3);
  CHECK(reduction_map(3, 0.25).positivity_level == 3);
  CHECK(reduction_map(3, 2.0).positivity_level == 0);
  CHECK_THROWS_AS(reduction_map(2, 0.0), InvalidInput);

  const CMatrix image = extend_apply(reduction_map(2, 1.0), max_entangled(2).projector());
  CHECK(min_eigenvalue(image) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("reduction map is k-positive up to its level") {
  // (id_k (x) Lambda_mu) on random rank-one states with Schmidt rank <= k.
  Rng rng(kSeed + 307);
  const int d = 3;
  for (int k = 1; k <= 3; ++k) {
    const auto lam = reduction_map(d, 1.0 / k);
    for (int trial = 0; trial < 10; ++trial) {
      CMatrix f = random_matrix(d, k, rng) * random_matrix(k, d, rng);
      f /= f.norm();
      const CVector v = op_to_vec_raw(f);
      CHECK(min_eigenvalue(extend_apply(lam, CMatrix(v * v.adjoint()))) > -1e-12);
    }
  }
}

TEST_CASE("composition") {
  Rng rng(kSeed + 308);
  const KrausChannel a = random_channel(3, 2, rng);
  const KrausChannel b = random_channel(3, 3, rng);
  const KrausChannel ab = compose(a, b);
  CHECK(ab.kraus_ops().size() == 6);
  const CMatrix rho = random_density({3}, rng).matrix();
  CHECK(distance(ab.act(rho), a.act(b.act(rho))) < 1e-12);
  CHECK_THROWS_AS(compose(a, identity_channel(2)), InvalidInput);

  // An entanglement-breaking channel followed by a positive map is CP.
  const auto lam_phi = compose(reduction_map(2, 1.0), HermitianPreservingMap::from_channel(phi_f(2, 0.4)));
  CHECK(is_psd(choi_matrix(lam_phi)));
  const auto lam_id = compose(reduction_map(2, 1.0), HermitianPreservingMap::from_channel(identity_channel(2)));
  CHECK_FALSE(is_psd(choi_matrix(lam_id)));
}

TEST_CASE("co-positivity") {
  CHECK_FALSE(is_ccp(identity_channel(2)));
  CHECK(is_ccp(phi_lambda(2, 0.0)));
  CHECK(is_ccp(dephasing_channel(3)));
  CHECK(is_ccp(phi_lambda(3, 0.25)));
  CHECK_FALSE(is_ccp(phi_lambda(3, 0.3)));
}
