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

#include "qpebt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qpebt/kernels.hpp"

namespace qpebt {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw InvalidInput(std::string(what) + ": matrix is " +
                       std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected square");
}

void require_side(const CMatrix& m, std::span<const int> dims,
                  const char* what) {
  require_square(m, what);
  const std::size_t side = product(dims);
  if (static_cast<std::size_t>(m.rows()) != side)
    throw InvalidInput(std::string(what) + ": matrix side " +
                       std::to_string(m.rows()) +
                       " does not match product of dims " +
                       std::to_string(side));
}

void require_hermitian(const CMatrix& h, const Tolerances& tol,
                       const char* what) {
  require_square(h, what);
  if (!is_hermitian(h, tol.psd_abs))
    throw InvalidInput(std::string(what) + ": matrix is not Hermitian");
}

RVector hermitian_eigenvalues(const CMatrix& h) {
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eigenvalue solver did not converge");
  return solver.eigenvalues();
}

// Replaces the columns [first, first + count) of `vecs` by an orthonormal
// basis of their span built from the standard basis vectors in index order.
void canonicalize_cluster(CMatrix& vecs, long first, long count) {
  const long n = vecs.rows();
  const CMatrix span = vecs.middleCols(first, count);
  const CMatrix proj = span * span.adjoint();
  // Some e_k keeps at least 1/sqrt(n) of its norm in the part of the span
  // not yet covered, so this threshold always collects `count` vectors.
  const double keep_threshold = 0.5 / std::sqrt(static_cast<double>(n));

  CMatrix basis(n, count);
  long found = 0;
  for (long k = 0; k < n && found < count; ++k) {
    CVector v = proj.col(k);
    for (int pass = 0; pass < 2; ++pass)
      for (long b = 0; b < found; ++b)
        v -= basis.col(b) * basis.col(b).dot(v);
    const double norm = v.norm();
    if (norm > keep_threshold) basis.col(found++) = v / norm;
  }
  if (found != count)
    throw NumericalFailure("eigh: could not re-base a degenerate eigenspace");
  vecs.middleCols(first, count) = basis;
}

void fix_phase(Eigen::Ref<CVector> v) {
  double best = 0.0;
  for (long i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
  if (best == 0.0) return;
  for (long i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best * (1.0 - 1e-9)) {
      const complex_t phase = std::conj(v(i)) / std::abs(v(i));
      v *= phase;
      v(i) = complex_t(std::abs(v(i)), 0.0);
      return;
    }
  }
}

}  // namespace

void Tolerances::validate() const {
  if (!(rank_rel >= 0.0 && rank_rel < 1.0))
    throw InvalidInput("rank tolerance must lie in [0, 1)");
  if (!(psd_abs >= 0.0 && psd_abs < 1.0))
    throw InvalidInput("psd tolerance must lie in [0, 1)");
}

std::size_t product(std::span<const int> dims) {
  if (dims.empty()) throw InvalidInput("empty dimension list");
  std::size_t p = 1;
  for (int d : dims) {
    if (d <= 0) throw InvalidInput("subsystem dimensions must be positive");
    p *= static_cast<std::size_t>(d);
  }
  return p;
}

CMatrix identity(std::size_t n) {
  return CMatrix::Identity(static_cast<long>(n), static_cast<long>(n));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, std::span<const int> dims,
                      std::span<const int> keep) {
  require_side(m, dims, "partial_trace");
  std::set<int> seen;
  for (int k : keep) {
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw InvalidInput("partial_trace: kept factor index out of range");
    if (!seen.insert(k).second)
      throw InvalidInput("partial_trace: repeated kept factor index");
  }
  return kernels::parallel::partial_trace(m, dims, keep);
}

CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims,
                          int subsystem) {
  require_side(m, dims, "partial_transpose");
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw InvalidInput("partial_transpose: subsystem index out of range");
  return kernels::parallel::partial_transpose(m, dims, subsystem);
}

Eigensystem eigh(const CMatrix& h, const Tolerances& tol) {
  require_hermitian(h, tol, "eigh");
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("eigh: eigenvalue solver did not converge");

  Eigensystem out{solver.eigenvalues(), solver.eigenvectors()};
  const long n = out.values.size();
  if (n == 0) return out;

  const double scale =
      std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double gap = tol.rank_rel * scale;
  long first = 0;
  while (first < n) {
    long last = first;
    while (last + 1 < n && out.values(last + 1) - out.values(last) <= gap)
      ++last;
    const long count = last - first + 1;
    if (count > 1) {
      canonicalize_cluster(out.vectors, first, count);
      const double mean = out.values.segment(first, count).mean();
      out.values.segment(first, count).setConstant(mean);
    }
    first = last + 1;
  }
  for (long i = 0; i < n; ++i) fix_phase(out.vectors.col(i));
  return out;
}

RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector();
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues();
}

std::size_t numerical_rank(const CMatrix& a, const Tolerances& tol) {
  const RVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = tol.rank_rel * s(0);
  std::size_t r = 0;
  for (long i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

double min_eigenvalue(const CMatrix& h, const Tolerances& tol) {
  require_hermitian(h, tol, "min_eigenvalue");
  return hermitian_eigenvalues(h)(0);
}

bool is_psd(const CMatrix& h, const Tolerances& tol) {
  require_hermitian(h, tol, "is_psd");
  const RVector ev = hermitian_eigenvalues(h);
  if (ev.size() == 0) return true;
  const double largest = ev.cwiseAbs().maxCoeff();
  return ev(0) >= -tol.psd_abs * (1.0 + largest);
}

bool is_hermitian(const CMatrix& h, double rel_tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).norm() <= rel_tol * h.norm();
}

double distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("distance: shape mismatch");
  return (a - b).norm();
}

}  // namespace qpebt
