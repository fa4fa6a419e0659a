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

#ifndef QPEBT_MULTIPARTITE_HPP
#define QPEBT_MULTIPARTITE_HPP

#include <utility>
#include <vector>

#include "qpebt/channels.hpp"
#include "qpebt/states.hpp"

namespace qpebt {

// Pure state of N >= 2 parties, big-endian amplitudes.
class MultipartiteState {
public:
  explicit MultipartiteState(PureState psi);

  const PureState& pure() const { return psi_; }
  int parties() const { return static_cast<int>(psi_.dims().size()); }

private:
  PureState psi_;
};

// F: first K factors -> remaining N - K factors.
BipartitionOperator bipartition_operator(const MultipartiteState& psi, int k);

struct ReducedStates {
  DensityMatrix rho_a;  // first K factors
  DensityMatrix rho_b;  // remaining factors
};

// rho_B = F F^dagger. rho_A = (F^dagger F)^T, the transpose coming from the
// x_ij = <j|F|i> convention; it has the same spectrum as F^dagger F.
ReducedStates reduced_states(const MultipartiteState& psi, int k);

// F_{i_1..i_{N-2}} with <e_{i_N}|F_{i_1..i_{N-2}}|e_{i_{N-1}}> = psi_{i_1..i_N}.
// ops are ordered big-endian over (i_1, ..., i_{N-2}); N = 2 gives a single
// operator equal to bipartition_operator(psi, 1).
struct SliceOperators {
  int d = 0;
  int parties = 0;
  std::vector<CMatrix> ops;

  double total_norm_squared() const;
};

// Requires all dims equal.
SliceOperators slice_operators(const MultipartiteState& psi);

// (|0...0> + |1...1>)/sqrt(2) on `parties` qubits.
MultipartiteState ghz(int parties = 3);

// Equal superposition of single-excitation basis states on `parties` qubits.
MultipartiteState w_state(int parties = 3);

// Reorders tensor factors: new factor i is old factor perm[i].
PureState permute_factors(const PureState& psi, const std::vector<int>& perm);
CMatrix permute_factors(const CMatrix& rho, const std::vector<int>& dims,
                        const std::vector<int>& perm);

// Channel on M_{d^K} with Kraus operators sqrt(d^K p_a) F_a, where rho is a
// state on (C^d)^{2K} decomposed as sum_a p_a P[F_a] across the K | K cut.
// Throws for odd party counts, unequal dims or a decomposition that does not
// reassemble rho within 1e-10.
KrausChannel even_party_channel(const DensityMatrix& rho,
                                const OperatorDecomposition& decomposition);

// Same with the spectral decomposition across the K | K cut.
KrausChannel even_party_channel(const DensityMatrix& rho,
                                const Tolerances& tol = kDefaultTolerances);

}  // namespace qpebt

#endif  // QPEBT_MULTIPARTITE_HPP
