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

#include "tessfact/factorization.hpp"

#include <algorithm>
#include <numeric>

#include "tessfact/capacity.hpp"
#include "tessfact/errors.hpp"

namespace tessfact {
namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

void check_demand(const Matrix& demand, const SchemeParams& p) {
  if (demand.rows() != static_cast<std::size_t>(p.users) ||
      demand.cols() != static_cast<std::size_t>(p.subfunctions)) {
    throw InputError("demand matrix is " + std::to_string(demand.rows()) + "x" +
                     std::to_string(demand.cols()) + ", parameters expect " +
                     std::to_string(p.users) + "x" + std::to_string(p.subfunctions));
  }
  if (!all_finite(demand)) throw InputError("demand matrix has non-finite entries");
}

// Places every tile's truncated factors into D and E. Tile j's block starts
// after the T-padded blocks of the tiles before it; only its first q columns
// (rows of E) carry values.
Factorization assemble(const Matrix& demand, TilePlan plan,
                       const std::vector<SvdResult>& svds) {
  const auto& p = plan.params;
  const std::size_t columns = static_cast<std::size_t>(p.servers * p.shots);

  Factorization out;
  out.pair.decoding = Matrix(demand.rows(), columns);
  out.pair.encoding = Matrix(columns, demand.cols());
  out.pair.decoding_support = Mask(demand.rows(), columns);
  out.pair.encoding_support = Mask(columns, demand.cols());

  for (std::size_t j = 0; j < plan.tiles.size(); ++j) {
    const Tile& tile = plan.tiles[j];
    const auto q = static_cast<std::size_t>(tile.allocated_rank);
    TruncatedFactors f = truncate(svds[j], q);
    if (q == 0) out.dropped_tiles.push_back(tile.id);

    if (!tile.servers.empty()) {
      const std::size_t first =
          static_cast<std::size_t>(tile.servers.front() * p.shots);
      for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t a = 0; a < tile.rows.size(); ++a) {
          out.pair.decoding(tile.rows[a], first + k) = f.left(a, k);
          out.pair.decoding_support(tile.rows[a], first + k) = 1;
        }
        for (std::size_t b = 0; b < tile.cols.size(); ++b) {
          out.pair.encoding(first + k, tile.cols[b]) = f.right(k, b);
          out.pair.encoding_support(first + k, tile.cols[b]) = 1;
        }
      }
    }
    out.tiles.push_back({tile.id, std::move(f.left), std::move(f.right), f.residual_sq,
                         svds[j].s});
  }
  out.plan = std::move(plan);
  return out;
}

std::vector<SvdResult> tile_svds(const Matrix& demand, const TilePlan& plan) {
  std::vector<SvdResult> out;
  out.reserve(plan.tiles.size());
  for (const auto& tile : plan.tiles) out.push_back(svd(extract_tile(demand, tile)));
  return out;
}

}  // namespace

double Factorization::residual_sq() const {
  double total = 0.0;
  for (const auto& t : tiles) total += t.residual_sq;
  return total;
}

Matrix extract_tile(const Matrix& demand, const Tile& tile) {
  Matrix out(tile.rows.size(), tile.cols.size());
  for (std::size_t a = 0; a < tile.rows.size(); ++a) {
    for (std::size_t b = 0; b < tile.cols.size(); ++b) {
      const std::size_t r = tile.rows[a], c = tile.cols[b];
      if (r >= demand.rows() || c >= demand.cols()) {
        throw InputError("tile " + std::to_string(tile.id) + " index (" +
                         std::to_string(r) + "," + std::to_string(c) +
                         ") out of bounds for " + std::to_string(demand.rows()) + "x" +
                         std::to_string(demand.cols()) + " matrix");
      }
      out(a, b) = demand(r, c);
    }
  }
  return out;
}

std::vector<std::int64_t> rank_budget(const TilePlan& plan,
                                      std::span<const std::vector<double>> singular_values,
                                      bool allow_dropped_tiles) {
  const auto& p = plan.params;
  const std::size_t m = plan.tiles.size();
  if (!singular_values.empty() && singular_values.size() != m) {
    throw InputError("singular values supplied for " +
                     std::to_string(singular_values.size()) + " of " +
                     std::to_string(m) + " tiles");
  }
  if (m == 0) return {};
  const std::int64_t T = p.shots, N = p.servers;
  if (N < 0) throw InputError("negative server count");

  auto servers_for = [&](const std::vector<std::int64_t>& q) {
    std::int64_t total = 0;
    for (auto x : q) total += ceil_div(x, T);
    return total;
  };
  auto uniform = [&](std::int64_t base) {
    std::vector<std::int64_t> q(m);
    for (std::size_t j = 0; j < m; ++j) q[j] = std::min(plan.tiles[j].max_rank, base);
    return q;
  };

  std::vector<std::int64_t> q = uniform(N * T / static_cast<std::int64_t>(m));
  if (servers_for(q) > N) q = uniform(T * (N / static_cast<std::int64_t>(m)));
  std::int64_t spare_servers = N - servers_for(q);

  for (;;) {
    std::size_t best = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (q[j] >= plan.tiles[j].max_rank) continue;
      const bool opens_server = q[j] % T == 0;
      if (opens_server && spare_servers == 0) continue;
      if (best == m) {
        best = j;
        continue;
      }
      if (!singular_values.empty()) {
        const double cand = singular_values[j][static_cast<std::size_t>(q[j])];
        const double held = singular_values[best][static_cast<std::size_t>(q[best])];
        if (cand > held) best = j;
      } else if (q[j] < q[best]) {
        best = j;
      }
    }
    if (best == m) break;
    if (q[best] % T == 0) --spare_servers;
    ++q[best];
  }

  if (!allow_dropped_tiles) {
    for (std::size_t j = 0; j < m; ++j) {
      if (q[j] == 0 && plan.tiles[j].max_rank > 0) {
        throw InfeasibleError("rank budget: " + std::to_string(N) + " servers x " +
                              std::to_string(T) + " shots cannot give each of " +
                              std::to_string(m) +
                              " tiles a rank; allow dropped tiles to proceed");
      }
    }
  }
  return q;
}

Factorization factorize_lossless(const Matrix& demand, const SchemeParams& params) {
  const auto p = validate(params, Requirement::lossless);
  check_demand(demand, p);
  const std::int64_t needed = n_opt_upper(p);
  if (p.servers < needed) {
    throw InfeasibleError("insufficient servers for lossless recovery: need " +
                          std::to_string(needed) + ", have " +
                          std::to_string(p.servers));
  }
  TilePlan plan = allocate_servers(build_tessellation(p), Lossless{});
  const auto svds = tile_svds(demand, plan);
  return assemble(demand, std::move(plan), svds);
}

Factorization factorize_lossy(const Matrix& demand, const SchemeParams& params,
                              const LossyOptions& options) {
  const auto p = validate(params, Requirement::budgets);
  check_demand(demand, p);
  TilePlan plan = build_tessellation(p);
  const auto svds = tile_svds(demand, plan);

  std::vector<std::vector<double>> spectra;
  spectra.reserve(svds.size());
  for (const auto& s : svds) spectra.push_back(s.s);
  const auto ranks = rank_budget(plan, spectra, options.allow_dropped_tiles);
  plan = assign_ranks(std::move(plan), ranks);

  Factorization out = assemble(demand, std::move(plan), svds);
  out.within_guarantees =
      p.users % p.link_budget == 0 && p.subfunctions % p.compute_budget == 0;
  return out;
}

double residual_error(const Matrix& demand, const FactorPair& pair) {
  const Matrix& D = pair.decoding;
  const Matrix& E = pair.encoding;
  if (D.rows() != demand.rows() || E.cols() != demand.cols() || D.cols() != E.rows()) {
    throw InputError("residual: D is " + std::to_string(D.rows()) + "x" +
                     std::to_string(D.cols()) + ", E is " + std::to_string(E.rows()) +
                     "x" + std::to_string(E.cols()) + ", F is " +
                     std::to_string(demand.rows()) + "x" + std::to_string(demand.cols()));
  }
  return frobenius_norm_sq(subtract(multiply(D, E), demand));
}

namespace {

struct RankOneSupport {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

std::vector<RankOneSupport> rank_one_supports(const FactorPair& pair) {
  const Mask& D = pair.decoding_support;
  const Mask& E = pair.encoding_support;
  std::vector<RankOneSupport> out(D.cols());
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t c = 0; c < D.cols(); ++c)
      if (D(i, c)) out[c].rows.push_back(i);
  for (std::size_t c = 0; c < E.rows(); ++c)
    for (std::size_t j = 0; j < E.cols(); ++j)
      if (E(c, j)) out[c].cols.push_back(j);
  return out;
}

bool sorted_intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace

bool has_disjoint_support(const FactorPair& pair) {
  if (pair.decoding_support.cols() != pair.encoding_support.rows()) return false;
  const auto supports = rank_one_supports(pair);
  for (std::size_t a = 0; a < supports.size(); ++a) {
    const auto& x = supports[a];
    if (x.rows.empty() || x.cols.empty()) continue;
    for (std::size_t b = a + 1; b < supports.size(); ++b) {
      const auto& y = supports[b];
      if (y.rows.empty() || y.cols.empty()) continue;
      const bool equal = x.rows == y.rows && x.cols == y.cols;
      const bool disjoint = !sorted_intersect(x.rows, y.rows) ||
                            !sorted_intersect(x.cols, y.cols);
      if (!equal && !disjoint) return false;
    }
  }
  return true;
}

bool has_balanced_support(const FactorPair& pair) {
  if (!has_disjoint_support(pair)) return false;
  const RankOneSupport* first = nullptr;
  const auto supports = rank_one_supports(pair);
  for (const auto& s : supports) {
    if (s.rows.empty() || s.cols.empty()) continue;
    if (!first) first = &s;
    if (s.rows.size() != first->rows.size() || s.cols.size() != first->cols.size())
      return false;
  }
  return true;
}

bool respects_support(const FactorPair& pair) {
  auto inside = [](const Matrix& m, const Mask& mask) {
    if (m.rows() != mask.rows() || m.cols() != mask.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0.0 && !mask(i, j)) return false;
    return true;
  };
  return inside(pair.decoding, pair.decoding_support) &&
         inside(pair.encoding, pair.encoding_support);
}

}  // namespace tessfact
