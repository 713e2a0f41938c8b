// Copyright 2026 The tessfact Authors. All Rights Reserved.
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

#include "tessfact/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tessfact/errors.hpp"

namespace tessfact {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Completes the rows of `basis` beyond `filled` to an orthonormal set using
// standard basis vectors and two passes of Gram-Schmidt.
void complete_orthonormal(Matrix& basis, std::size_t filled) {
  const std::size_t len = basis.cols();
  std::size_t next = filled;
  for (std::size_t e = 0; e < len && next < basis.rows(); ++e) {
    auto cand = basis.row(next);
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < next; ++k) {
        auto q = basis.row(k);
        const double proj = dot(cand, q);
        for (std::size_t i = 0; i < len; ++i) cand[i] -= proj * q[i];
      }
    }
    const double norm = std::sqrt(dot(cand, cand));
    if (norm < 1e-8) continue;
    for (double& x : cand) x /= norm;
    ++next;
  }
}

}  // namespace

SvdResult svd(const Matrix& a, const SvdOptions& options) {
  if (!all_finite(a)) throw InputError("svd: matrix has non-finite entries");

  const bool wide = a.cols() > a.rows();
  // Work on the r = min(m, n) vectors of length p = max(m, n); each is stored
  // as a row of `work` so that rotations touch contiguous memory.
  const Matrix work_src = wide ? a : transpose(a);
  const std::size_t r = work_src.rows();
  const std::size_t p = work_src.cols();

  SvdResult out;
  if (r == 0) {
    out.u = Matrix(a.rows(), 0);
    out.v = Matrix(a.cols(), 0);
    return out;
  }

  Matrix work = work_src;
  Matrix basis = identity(r);  // rows are the accumulated right rotations
  const double norm_sq = frobenius_norm_sq(a);
  const double floor = std::numeric_limits<double>::min() * 16.0;

  bool converged = false;
  int sweep = 0;
  for (; sweep < options.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i + 1 < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        auto wi = work.row(i);
        auto wj = work.row(j);
        const double alpha = dot(wi, wi);
        const double beta = dot(wj, wj);
        const double gamma = dot(wi, wj);
        if (std::abs(gamma) <= options.tolerance * std::sqrt(alpha * beta) ||
            std::abs(gamma) <= floor * norm_sq || gamma == 0.0)
          continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < p; ++k) {
          const double x = wi[k], y = wj[k];
          wi[k] = c * x - s * y;
          wj[k] = s * x + c * y;
        }
        auto bi = basis.row(i);
        auto bj = basis.row(j);
        for (std::size_t k = 0; k < r; ++k) {
          const double x = bi[k], y = bj[k];
          bi[k] = c * x - s * y;
          bj[k] = s * x + c * y;
        }
      }
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "svd: no convergence after " << sweep << " sweeps (matrix "
        << a.rows() << "x" << a.cols() << ", Frobenius norm " << std::sqrt(norm_sq)
        << ")";
    throw NumericalError(msg.str());
  }

  std::vector<double> sigma(r);
  for (std::size_t i = 0; i < r; ++i) sigma[i] = std::sqrt(dot(work.row(i), work.row(i)));
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  // Long-side vectors w_i / σ_i and short-side vectors from the rotations.
  // Directions with negligible σ carry only roundoff; they are rebuilt by
  // orthogonal completion instead.
  Matrix long_side(r, p);
  Matrix short_side(r, r);
  std::size_t nonzero = 0;
  const double cutoff = sigma[order[0]] * 1e-13;
  out.s.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t src = order[k];
    out.s[k] = sigma[src];
    std::copy(basis.row(src).begin(), basis.row(src).end(), short_side.row(k).begin());
    if (sigma[src] > cutoff && sigma[src] > 0.0) {
      auto dst = long_side.row(k);
      auto w = work.row(src);
      for (std::size_t t = 0; t < p; ++t) dst[t] = w[t] / sigma[src];
      nonzero = k + 1;
    }
  }
  complete_orthonormal(long_side, nonzero);

  // Sign convention on the left vectors.
  Matrix& left_rows = wide ? short_side : long_side;
  Matrix& right_rows = wide ? long_side : short_side;
  for (std::size_t k = 0; k < r; ++k) {
    auto u = left_rows.row(k);
    std::size_t arg = 0;
    for (std::size_t t = 1; t < u.size(); ++t)
      if (std::abs(u[t]) > std::abs(u[arg])) arg = t;
    if (u[arg] < 0.0) {
      for (double& x : u) x = -x;
      for (double& x : right_rows.row(k)) x = -x;
    }
  }
  out.u = transpose(left_rows);
  out.v = transpose(right_rows);
  out.sweeps = sweep;
  return out;
}

TruncatedFactors truncate(const SvdResult& svd, std::size_t q) {
  if (q > svd.rank()) {
    throw InputError("truncation rank " + std::to_string(q) + " exceeds rank " +
                     std::to_string(svd.rank()));
  }
  TruncatedFactors out;
  out.left = Matrix(svd.u.rows(), q);
  out.right = Matrix(q, svd.v.rows());
  for (std::size_t i = 0; i < svd.u.rows(); ++i)
    for (std::size_t k = 0; k < q; ++k) out.left(i, k) = svd.u(i, k) * svd.s[k];
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t j = 0; j < svd.v.rows(); ++j) out.right(k, j) = svd.v(j, k);
  for (std::size_t k = q; k < svd.rank(); ++k) out.residual_sq += svd.s[k] * svd.s[k];
  return out;
}

}  // namespace tessfact
