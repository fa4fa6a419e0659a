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

// Index-shuffling kernels behind the tensor-structure operations.
//
// Each kernel exists twice: `serial` is the straightforward reference loop,
// `parallel` distributes the outer loop with OpenMP. Both must produce
// bit-identical results; tests/test_kernels.cpp enforces that. The public
// functions in numerics.hpp and channels.hpp call the parallel versions.
// Inputs are assumed already validated by the callers.

#ifndef QPEBT_KERNELS_HPP
#define QPEBT_KERNELS_HPP

#include <functional>
#include <span>

#include "qpebt/numerics.hpp"

namespace qpebt::kernels {

// Maps one inner block of an operator on C^outer (x) C^inner_in to a block on
// C^outer (x) C^inner_out. Must be safe to call concurrently.
using BlockMap = std::function<CMatrix(const CMatrix&)>;

// Parallel loops are skipped below this many output entries.
inline constexpr long kParallelThreshold = 256;

namespace serial {

CMatrix partial_trace(const CMatrix& m, std::span<const int> dims,
                      std::span<const int> keep);

CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims,
                          int subsystem);

// (id_outer (x) map) applied block by block.
CMatrix blockwise_apply(const CMatrix& m, int outer, int inner_in,
                        int inner_out, const BlockMap& map);

// Sum_a K_a x K_a^dagger.
CMatrix conjugation_sum(const CMatrix& x, std::span<const CMatrix> ops);

}  // namespace serial

namespace parallel {

CMatrix partial_trace(const CMatrix& m, std::span<const int> dims,
                      std::span<const int> keep);

CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims,
                          int subsystem);

CMatrix blockwise_apply(const CMatrix& m, int outer, int inner_in,
                        int inner_out, const BlockMap& map);

CMatrix conjugation_sum(const CMatrix& x, std::span<const CMatrix> ops);

}  // namespace parallel

// Number of OpenMP threads the parallel kernels may use (1 without OpenMP).
int max_threads();

}  // namespace qpebt::kernels

#endif  // QPEBT_KERNELS_HPP
