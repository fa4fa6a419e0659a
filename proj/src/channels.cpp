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

#include "qpebt/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qpebt/kernels.hpp"

namespace qpebt {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

int outer_dimension(long side, int inner, const char* what) {
  if (inner <= 0 || side % inner != 0)
    throw InvalidInput(std::string(what) + ": operator side " +
                       std::to_string(side) + " is not a multiple of " +
                       std::to_string(inner));
  return static_cast<int>(side / inner);
}

}  // namespace

// --- KrausChannel -----------------------------------------------------------

KrausChannel::KrausChannel(std::vector<CMatrix> kraus_ops)
    : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw InvalidInput("channel: empty Kraus list");
  const long rows = ops_.front().rows();
  const long cols = ops_.front().cols();
  if (rows == 0 || cols == 0) throw InvalidInput("channel: empty Kraus operator");
  CMatrix sum = CMatrix::Zero(cols, cols);
  for (const CMatrix& k : ops_) {
    if (k.rows() != rows || k.cols() != cols)
      throw InvalidInput("channel: Kraus operators have different shapes");
    if (!k.allFinite()) throw InvalidInput("channel: non-finite Kraus entry");
    sum.noalias() += k.adjoint() * k;
  }
  const double residual = (sum - CMatrix::Identity(cols, cols)).norm();
  if (!(residual <= kTracePreservingTolerance))
    throw InvalidInput("channel: not trace preserving, ||sum K^dagger K - I|| = " +
                       fmt_double(residual));
}

int KrausChannel::max_kraus_rank(const Tolerances& tol) const {
  std::size_t r = 0;
  for (const CMatrix& k : ops_) r = std::max(r, numerical_rank(k, tol));
  return static_cast<int>(r);
}

CMatrix KrausChannel::act(const CMatrix& x) const {
  if (x.rows() != d_in() || x.cols() != d_in())
    throw InvalidInput("channel: input is " + std::to_string(x.rows()) + "x" +
                       std::to_string(x.cols()) + ", expected side " +
                       std::to_string(d_in()));
  return kernels::parallel::conjugation_sum(x, ops_);
}

// --- ChoiMatrix -------------------------------------------------------------

ChoiMatrix::ChoiMatrix(CMatrix matrix, int d, const Tolerances& tol)
    : matrix_(std::move(matrix)), d_(d) {
  if (d < 1) throw InvalidInput("choi: d must be >= 1");
  const long n = static_cast<long>(d) * d;
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw InvalidInput("choi: expected a " + std::to_string(n) + "x" +
                       std::to_string(n) + " matrix");
  if (!matrix_.allFinite()) throw InvalidInput("choi: non-finite entry");
  if (!is_hermitian(matrix_, tol.psd_abs))
    throw InvalidInput("choi: matrix is not Hermitian");
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTracePreservingTolerance)
    throw InvalidInput("choi: trace " + fmt_double(tr) + " is not 1");
  const int dims[2] = {d, d};
  const int keep[1] = {0};
  const CMatrix marginal = partial_trace(matrix_, dims, keep);
  const double mres = (marginal - identity(d) / static_cast<double>(d)).norm();
  if (mres > kTracePreservingTolerance)
    throw InvalidInput(
        "choi: marginal over the output factor is not I/d (residual " +
        fmt_double(mres) + "), map is not trace preserving");
  if (!is_psd(matrix_, tol))
    throw InvalidInput("choi: matrix is not positive semidefinite (min eigenvalue " +
                       fmt_double(min_eigenvalue(matrix_, tol)) + ")");
}

DensityMatrix ChoiMatrix::state() const {
  return DensityMatrix(matrix_ / matrix_.trace().real(), {d_, d_});
}

// --- HermitianPreservingMap -------------------------------------------------

HermitianPreservingMap::HermitianPreservingMap(Kernel kernel, int d_in,
                                               int d_out, CpFlag is_cp,
                                               std::string description)
    : kernel_(std::move(kernel)),
      d_in_(d_in),
      d_out_(d_out),
      is_cp_(is_cp),
      description_(std::move(description)) {
  if (!kernel_) throw InvalidInput("map: empty kernel");
  if (d_in < 1 || d_out < 1) throw InvalidInput("map: dimensions must be >= 1");
}

HermitianPreservingMap HermitianPreservingMap::from_channel(
    const KrausChannel& phi) {
  // Serial kernel: extend_apply already parallelizes over blocks.
  auto ops = phi.kraus_ops();
  return HermitianPreservingMap(
      [ops = std::move(ops)](const CMatrix& x) {
        return kernels::serial::conjugation_sum(x, ops);
      },
      phi.d_in(), phi.d_out(), CpFlag::yes, "kraus");
}

CMatrix HermitianPreservingMap::operator()(const CMatrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_)
    throw InvalidInput("map: input side " + std::to_string(x.rows()) +
                       ", expected " + std::to_string(d_in_));
  return kernel_(x);
}

// --- constructors -----------------------------------------------------------

KrausChannel channel_from_kraus(std::vector<CMatrix> ops) {
  return KrausChannel(std::move(ops));
}

KrausChannel identity_channel(int d) {
  return KrausChannel({identity(d)});
}

KrausChannel unitary_channel(const CMatrix& u) { return KrausChannel({u}); }

KrausChannel dephasing_channel(int d) {
  std::vector<CMatrix> ops;
  for (int k = 0; k < d; ++k) {
    CMatrix p = CMatrix::Zero(d, d);
    p(k, k) = 1.0;
    ops.push_back(std::move(p));
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix apply(const KrausChannel& phi, const DensityMatrix& rho) {
  CMatrix out = phi.act(rho.matrix());
  std::vector<int> dims = rho.dims();
  if (phi.d_out() != phi.d_in()) dims = {phi.d_out()};
  return DensityMatrix(std::move(out), std::move(dims));
}

CMatrix extend_apply(const HermitianPreservingMap& m, const CMatrix& x) {
  if (x.rows() != x.cols()) throw InvalidInput("extend_apply: not square");
  const int outer = outer_dimension(x.rows(), m.d_in(), "extend_apply");
  return kernels::parallel::blockwise_apply(x, outer, m.d_in(), m.d_out(),
                                            m.kernel());
}

CMatrix extend_apply(const KrausChannel& phi, const CMatrix& x) {
  return extend_apply(HermitianPreservingMap::from_channel(phi), x);
}

CMatrix extend_apply(const HermitianPreservingMap& m,
                     const DensityMatrix& rho) {
  return extend_apply(m, rho.matrix());
}

CMatrix extend_apply(const KrausChannel& phi, const DensityMatrix& rho) {
  return extend_apply(phi, rho.matrix());
}

ChoiMatrix choi(const KrausChannel& phi, const Tolerances& tol) {
  if (!phi.is_square())
    throw InvalidInput("choi: channel maps M_" + std::to_string(phi.d_in()) +
                       " to M_" + std::to_string(phi.d_out()) +
                       ", expected a square channel");
  const int d = phi.d_in();
  return ChoiMatrix(extend_apply(phi, max_entangled(d).projector()), d, tol);
}

CMatrix choi_matrix(const HermitianPreservingMap& m) {
  if (m.d_in() != m.d_out())
    throw InvalidInput("choi_matrix: map is not square");
  return extend_apply(m, max_entangled(m.d_in()).projector());
}

KrausChannel kraus_from_choi(const ChoiMatrix& c, const Tolerances& tol) {
  const int d = c.d();
  const Eigensystem es = eigh(c.matrix(), tol);
  std::vector<CMatrix> ops;
  for (long i = es.values.size() - 1; i >= 0; --i) {
    const double lambda = es.values(i);
    if (lambda <= tol.psd_abs) continue;
    const CVector v = es.vectors.col(i);
    ops.push_back(std::sqrt(d * lambda) * Eigen::Map<const CMatrix>(v.data(), d, d));
  }
  if (ops.empty()) throw NumericalFailure("kraus_from_choi: no eigenvalue above tolerance");
  try {
    return KrausChannel(std::move(ops));
  } catch (const InvalidInput& e) {
    throw NumericalFailure(std::string("kraus_from_choi: ") + e.what());
  }
}

OperatorDecomposition choi_decomposition(const KrausChannel& phi) {
  if (!phi.is_square()) throw InvalidInput("choi_decomposition: non-square channel");
  const double d = phi.d_in();
  OperatorDecomposition out;
  for (const CMatrix& k : phi.kraus_ops()) {
    const double p = k.squaredNorm() / d;
    if (p == 0.0) continue;
    out.weights.push_back(p);
    out.ops.push_back(square_operator(k / std::sqrt(d * p)));
  }
  return out;
}

std::vector<CMatrix> weyl_unitaries(int d) {
  if (d < 1) throw InvalidInput("weyl_unitaries: d must be >= 1");
  CMatrix shift = CMatrix::Zero(d, d);
  CMatrix clock = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    shift((k + 1) % d, k) = 1.0;
    clock(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  }
  std::vector<CMatrix> x_pow(d), z_pow(d);
  x_pow[0] = z_pow[0] = identity(d);
  for (int k = 1; k < d; ++k) {
    x_pow[k] = shift * x_pow[k - 1];
    z_pow[k] = clock * z_pow[k - 1];
  }
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) out.push_back(x_pow[m] * z_pow[n]);
  return out;
}

KrausChannel mixed_unitary_channel(int d, const std::vector<double>& p) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  if (d < 1 || p.size() != n)
    throw InvalidInput("mixed_unitary_channel: expected " + std::to_string(n) +
                       " probabilities, got " + std::to_string(p.size()));
  double total = 0.0;
  for (double w : p) {
    if (!(w >= 0.0))
      throw InvalidInput("mixed_unitary_channel: negative probability");
    total += w;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    throw InvalidInput("mixed_unitary_channel: probabilities sum to " +
                       fmt_double(total));
  const auto u = weyl_unitaries(d);
  std::vector<CMatrix> ops;
  for (std::size_t a = 0; a < n; ++a)
    if (p[a] > 0.0) ops.push_back(std::sqrt(p[a]) * u[a]);
  return KrausChannel(std::move(ops));
}

KrausChannel phi_lambda(int d, double lambda) {
  if (d < 2) throw InvalidInput("phi_lambda: d must be >= 2");
  const double dd = static_cast<double>(d) * d;
  if (!(lambda >= -1.0 / (dd - 1.0) && lambda <= 1.0))
    throw InvalidInput("phi_lambda: lambda " + fmt_double(lambda) +
                       " outside [-1/(d^2-1), 1]");
  // (1 - lambda)/d Tr(rho) I = (1 - lambda)/d^2 sum_a U_a rho U_a^dagger.
  std::vector<double> p(static_cast<std::size_t>(dd), (1.0 - lambda) / dd);
  p[0] = std::max(0.0, fidelity_from_lambda(d, lambda));
  return mixed_unitary_channel(d, p);
}

HermitianPreservingMap phi_lambda(int d, double lambda,
                                  const HermitianPreservingMap& psi) {
  if (psi.d_in() != d || psi.d_out() != d)
    throw InvalidInput("phi_lambda: Psi must act on M_d");
  const double dd = static_cast<double>(d) * d;
  if (!(lambda >= -1.0 / (dd - 1.0) && lambda <= 1.0))
    throw InvalidInput("phi_lambda: lambda " + fmt_double(lambda) +
                       " outside [-1/(d^2-1), 1]");
  auto kernel = [d, lambda, inner = psi.kernel()](const CMatrix& x) {
    CMatrix out = lambda * inner(x);
    out += (1.0 - lambda) / d * x.trace() * CMatrix::Identity(d, d);
    return out;
  };
  return HermitianPreservingMap(kernel, d, d, CpFlag::unknown,
                                "phi_lambda(" + psi.description() + ")");
}

KrausChannel phi_f(int d, double f) {
  if (d < 2) throw InvalidInput("phi_f: d must be >= 2");
  const double dd = static_cast<double>(d) * d;
  if (!(f >= 0.0 && f <= 1.0)) {
    const double min_ev = std::min(f, (1.0 - f) / (dd - 1.0));
    throw InvalidInput("phi_f: f " + fmt_double(f) +
                       " outside [0, 1], Choi minimum eigenvalue " +
                       fmt_double(min_ev));
  }
  std::vector<double> p(static_cast<std::size_t>(dd), (1.0 - f) / (dd - 1.0));
  p[0] = f;
  return mixed_unitary_channel(d, p);
}

HermitianPreservingMap reduction_map(int d, double mu) {
  if (d < 1) throw InvalidInput("reduction_map: d must be >= 1");
  if (!(mu > 0.0)) throw InvalidInput("reduction_map: mu must be > 0");
  auto kernel = [d, mu](const CMatrix& x) {
    CMatrix out = -mu * x;
    out += x.trace() * CMatrix::Identity(d, d);
    return out;
  };
  // Lambda_mu is k-positive iff mu <= 1/k; the slack absorbs mu = 1/k
  // rounding.
  const int level =
      mu > 1.0 ? 0 : std::min(d, static_cast<int>(std::floor(1.0 / mu + 1e-9)));
  HermitianPreservingMap out(kernel, d, d, level >= d ? CpFlag::yes : CpFlag::no,
                             "reduction(mu=" + fmt_double(mu) + ")");
  out.positivity_level = level;
  return out;
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.d_in() != b.d_out())
    throw InvalidInput("compose: inner dimensions disagree");
  std::vector<CMatrix> ops;
  ops.reserve(a.kraus_ops().size() * b.kraus_ops().size());
  for (const CMatrix& ka : a.kraus_ops())
    for (const CMatrix& kb : b.kraus_ops()) ops.push_back(ka * kb);
  return KrausChannel(std::move(ops));
}

HermitianPreservingMap compose(const HermitianPreservingMap& a,
                               const HermitianPreservingMap& b) {
  if (a.d_in() != b.d_out())
    throw InvalidInput("compose: inner dimensions disagree");
  const CpFlag cp = (a.is_cp() == CpFlag::yes && b.is_cp() == CpFlag::yes)
                        ? CpFlag::yes
                        : CpFlag::unknown;
  return HermitianPreservingMap(
      [outer = a.kernel(), inner = b.kernel()](const CMatrix& x) {
        return outer(inner(x));
      },
      b.d_in(), a.d_out(), cp, a.description() + " o " + b.description());
}

bool is_ccp(const KrausChannel& phi, const Tolerances& tol) {
  const ChoiMatrix c = choi(phi, tol);
  const int dims[2] = {c.d(), c.d()};
  return is_psd(partial_transpose(c.matrix(), dims, 1), tol);
}

}  // namespace qpebt
