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

#ifndef QPEBT_NUMERICS_HPP
#define QPEBT_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpebt {

using complex_t = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Precondition or schema violation in user-supplied data.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A computation could not meet its numerical contract.
class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rank_rel = 1e-10;  // relative singular-value cutoff
  double psd_abs = 1e-9;    // eigenvalue floor scale

  // Throws InvalidInput unless both values lie in [0, 1).
  void validate() const;
};

inline constexpr Tolerances kDefaultTolerances{};

// Product of a list of subsystem dimensions; throws on non-positive entries.
std::size_t product(std::span<const int> dims);

CMatrix identity(std::size_t n);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Traces out every factor not listed in `keep` (0-based factor indices). The
// kept factors stay in their original order.
CMatrix partial_trace(const CMatrix& m, std::span<const int> dims,
                      std::span<const int> keep);

// Transposes factor `subsystem` (0-based) of an operator on the tensor product
// described by `dims`.
CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims,
                          int subsystem);

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // column i pairs with values(i)
};

// Hermitian eigendecomposition with a reproducible basis:
//  * eigenvalues closer than rank_rel * max(1, max|lambda|) form a cluster;
//    each cluster's span is re-based by Gram-Schmidt over the projected
//    standard basis vectors in index order, and its eigenvalues are replaced
//    by the cluster mean;
//  * every eigenvector's largest-magnitude component (first index on ties)
//    is made real positive.
// Throws InvalidInput if ||h - h^dagger||_F > psd_abs * ||h||_F.
Eigensystem eigh(const CMatrix& h, const Tolerances& tol = kDefaultTolerances);

// Nonincreasing.
RVector singular_values(const CMatrix& a);

// Number of singular values above rank_rel * sigma_max. Zero for the zero
// matrix.
std::size_t numerical_rank(const CMatrix& a,
                           const Tolerances& tol = kDefaultTolerances);

// min eigenvalue >= -psd_abs * (1 + max|eigenvalue|).
bool is_psd(const CMatrix& h, const Tolerances& tol = kDefaultTolerances);

double min_eigenvalue(const CMatrix& h,
                      const Tolerances& tol = kDefaultTolerances);

bool is_hermitian(const CMatrix& h, double rel_tol);

// ||a - b||_F
double distance(const CMatrix& a, const CMatrix& b);

}  // namespace qpebt

#endif  // QPEBT_NUMERICS_HPP
