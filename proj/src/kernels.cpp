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

#include "qpebt/kernels.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qpebt::kernels {

namespace {

// K x K^dagger, evaluated the same way by both kernel families.
CMatrix conjugate(const CMatrix& k, const CMatrix& x) {
  const CMatrix kx = k * x;
  CMatrix out(k.rows(), k.rows());
  out.noalias() = kx * k.adjoint();
  return out;
}

// full_index[r * traced + t] is the index into the full space whose kept
// digits spell r and whose traced digits spell t.
struct TraceTable {
  long kept = 1;
  long traced = 1;
  std::vector<long> full_index;
};

TraceTable make_trace_table(std::span<const int> dims,
                            std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> is_kept(n, false);
  for (int k : keep) is_kept[k] = true;

  std::vector<long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  TraceTable table;
  std::vector<int> kept_axes;
  std::vector<int> traced_axes;
  for (int i = 0; i < n; ++i) {
    if (is_kept[i]) {
      kept_axes.push_back(i);
      table.kept *= dims[i];
    } else {
      traced_axes.push_back(i);
      table.traced *= dims[i];
    }
  }

  // Offsets contributed by each kept / traced multi-index, big-endian.
  auto offsets = [&](const std::vector<int>& axes, long count) {
    std::vector<long> out(count, 0);
    for (long v = 0; v < count; ++v) {
      long rest = v;
      long off = 0;
      for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
        const int axis = axes[a];
        off += (rest % dims[axis]) * stride[axis];
        rest /= dims[axis];
      }
      out[v] = off;
    }
    return out;
  };
  const auto kept_off = offsets(kept_axes, table.kept);
  const auto traced_off = offsets(traced_axes, table.traced);

  table.full_index.resize(table.kept * table.traced);
  for (long r = 0; r < table.kept; ++r)
    for (long t = 0; t < table.traced; ++t)
      table.full_index[r * table.traced + t] = kept_off[r] + traced_off[t];
  return table;
}

complex_t trace_entry(const CMatrix& m, const TraceTable& tab, long r,
                      long c) {
  complex_t acc{0.0, 0.0};
  const long* rows = tab.full_index.data() + r * tab.traced;
  const long* cols = tab.full_index.data() + c * tab.traced;
  for (long t = 0; t < tab.traced; ++t) acc += m(rows[t], cols[t]);
  return acc;
}

struct TransposeGeometry {
  long stride = 1;
  long dim = 1;
};

TransposeGeometry transpose_geometry(std::span<const int> dims,
                                     int subsystem) {
  TransposeGeometry g;
  for (std::size_t i = subsystem + 1; i < dims.size(); ++i) g.stride *= dims[i];
  g.dim = dims[subsystem];
  return g;
}

complex_t transposed_entry(const CMatrix& m, const TransposeGeometry& g,
                           long i, long j) {
  const long di = (i / g.stride) % g.dim;
  const long dj = (j / g.stride) % g.dim;
  return m(i + (dj - di) * g.stride, j + (di - dj) * g.stride);
}

}  // namespace

namespace serial {

CMatrix partial_trace(const CMatrix& m, std::span<const int> dims,
                      std::span<const int> keep) {
  const TraceTable tab = make_trace_table(dims, keep);
  CMatrix out(tab.kept, tab.kept);
  for (long r = 0; r < tab.kept; ++r)
    for (long c = 0; c < tab.kept; ++c) out(r, c) = trace_entry(m, tab, r, c);
  return out;
}

CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims,
                          int subsystem) {
  const TransposeGeometry g = transpose_geometry(dims, subsystem);
  const long n = m.rows();
  CMatrix out(n, n);
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) out(i, j) = transposed_entry(m, g, i, j);
  return out;
}

CMatrix blockwise_apply(const CMatrix& m, int outer, int inner_in,
                        int inner_out, const BlockMap& map) {
  CMatrix out(static_cast<long>(outer) * inner_out,
              static_cast<long>(outer) * inner_out);
  for (int i = 0; i < outer; ++i)
    for (int j = 0; j < outer; ++j)
      out.block(i * inner_out, j * inner_out, inner_out, inner_out) =
          map(m.block(i * inner_in, j * inner_in, inner_in, inner_in));
  return out;
}

CMatrix conjugation_sum(const CMatrix& x, std::span<const CMatrix> ops) {
  CMatrix out = CMatrix::Zero(ops.front().rows(), ops.front().rows());
  for (const CMatrix& k : ops) {
    out += conjugate(k, x);
  }
  return out;
}

}  // namespace serial

namespace parallel {

CMatrix partial_trace(const CMatrix& m, std::span<const int> dims,
                      std::span<const int> keep) {
  const TraceTable tab = make_trace_table(dims, keep);
  const long n = tab.kept;
  CMatrix out(n, n);
#pragma omp parallel for schedule(static) if (n * n * tab.traced >= kParallelThreshold)
  for (long c = 0; c < n; ++c)
    for (long r = 0; r < n; ++r) out(r, c) = trace_entry(m, tab, r, c);
  return out;
}

CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims,
                          int subsystem) {
  const TransposeGeometry g = transpose_geometry(dims, subsystem);
  const long n = m.rows();
  CMatrix out(n, n);
#pragma omp parallel for schedule(static) if (n * n >= kParallelThreshold)
  for (long j = 0; j < n; ++j)
    for (long i = 0; i < n; ++i) out(i, j) = transposed_entry(m, g, i, j);
  return out;
}

CMatrix blockwise_apply(const CMatrix& m, int outer, int inner_in,
                        int inner_out, const BlockMap& map) {
  CMatrix out(static_cast<long>(outer) * inner_out,
              static_cast<long>(outer) * inner_out);
  const long blocks = static_cast<long>(outer) * outer;
  const long work = blocks * inner_in * inner_in;
#pragma omp parallel for schedule(static) if (work >= kParallelThreshold)
  for (long b = 0; b < blocks; ++b) {
    const int i = static_cast<int>(b / outer);
    const int j = static_cast<int>(b % outer);
    out.block(i * inner_out, j * inner_out, inner_out, inner_out) =
        map(m.block(i * inner_in, j * inner_in, inner_in, inner_in));
  }
  return out;
}

CMatrix conjugation_sum(const CMatrix& x, std::span<const CMatrix> ops) {
  // Per-operator terms are computed concurrently but summed in list order so
  // the floating-point result matches the serial loop exactly.
  const long count = static_cast<long>(ops.size());
  std::vector<CMatrix> terms(count);
  const long work = count * x.rows() * x.rows();
#pragma omp parallel for schedule(static) if (work >= kParallelThreshold)
  for (long a = 0; a < count; ++a) terms[a] = conjugate(ops[a], x);
  CMatrix out = CMatrix::Zero(ops.front().rows(), ops.front().rows());
  for (const CMatrix& t : terms) out += t;
  return out;
}

}  // namespace parallel

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace qpebt::kernels
