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

#include "tessfact/tessellation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tessfact/capacity.hpp"
#include "tessfact/errors.hpp"
#include "tessfact/factorization.hpp"

namespace tessfact {
namespace {

std::vector<std::size_t> range(std::int64_t start, std::int64_t count) {
  std::vector<std::size_t> out(static_cast<std::size_t>(count));
  std::iota(out.begin(), out.end(), static_cast<std::size_t>(start));
  return out;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

constexpr std::string_view kSymbols =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

char symbol_for(std::size_t index) {
  return index < kSymbols.size() ? kSymbols[index] : '#';
}

}  // namespace

std::string_view to_string(TileFamily f) {
  switch (f) {
    case TileFamily::full: return "C1";
    case TileFamily::right_strip: return "C2";
    case TileFamily::bottom_strip: return "C3";
    case TileFamily::corner: return "C4";
  }
  return "?";
}

std::int64_t TilePlan::servers_used() const {
  std::int64_t total = 0;
  for (const auto& t : tiles) total += static_cast<std::int64_t>(t.servers.size());
  return total;
}

TilePlan build_tessellation(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  const std::int64_t D = p.link_budget, G = p.compute_budget;
  const std::int64_t row_blocks = p.users / D, col_blocks = p.subfunctions / G;
  const std::int64_t row_rem = p.users % D, col_rem = p.subfunctions % G;

  TilePlan plan;
  plan.params = p;
  auto add = [&](std::int64_t r0, std::int64_t nr, std::int64_t c0, std::int64_t nc,
                 TileFamily family) {
    Tile t;
    t.id = plan.tiles.size();
    t.rows = range(r0, nr);
    t.cols = range(c0, nc);
    t.family = family;
    t.max_rank = std::min(nr, nc);
    plan.tiles.push_back(std::move(t));
  };

  for (std::int64_t i = 0; i < row_blocks; ++i)
    for (std::int64_t j = 0; j < col_blocks; ++j)
      add(i * D, D, j * G, G, TileFamily::full);
  if (col_rem > 0)
    for (std::int64_t i = 0; i < row_blocks; ++i)
      add(i * D, D, col_blocks * G, col_rem, TileFamily::right_strip);
  if (row_rem > 0)
    for (std::int64_t j = 0; j < col_blocks; ++j)
      add(row_blocks * D, row_rem, j * G, G, TileFamily::bottom_strip);
  if (row_rem > 0 && col_rem > 0)
    add(row_blocks * D, row_rem, col_blocks * G, col_rem, TileFamily::corner);
  return plan;
}

std::int64_t min_tile_count(const SchemeParams& params) {
  const auto p = validate(params, Requirement::budgets);
  return ceil_div(p.users, p.link_budget) * ceil_div(p.subfunctions, p.compute_budget);
}

CoverageReport check_coverage(const TilePlan& plan) {
  const auto K = static_cast<std::size_t>(plan.params.users);
  const auto L = static_cast<std::size_t>(plan.params.subfunctions);
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(K * L, kFree);

  CoverageReport report;
  for (std::size_t t = 0; t < plan.tiles.size(); ++t) {
    const Tile& tile = plan.tiles[t];
    for (std::size_t r : tile.rows) {
      for (std::size_t c : tile.cols) {
        if (r >= K || c >= L) {
          throw InputError("tile " + std::to_string(tile.id) + " cell (" +
                           std::to_string(r) + "," + std::to_string(c) +
                           ") outside the " + std::to_string(K) + "x" +
                           std::to_string(L) + " matrix");
        }
        std::size_t& slot = owner[r * L + c];
        if (slot == kFree) {
          slot = t;
        } else if (slot != t) {
          std::pair<std::size_t, std::size_t> pair{slot, t};
          if (std::find(report.overlaps.begin(), report.overlaps.end(), pair) ==
              report.overlaps.end())
            report.overlaps.push_back(pair);
        }
      }
    }
  }
  for (std::size_t r = 0; r < K; ++r)
    for (std::size_t c = 0; c < L; ++c)
      if (owner[r * L + c] == kFree) report.uncovered.push_back({r, c});
  report.complete = report.uncovered.empty();
  return report;
}

TilePlan assign_ranks(TilePlan plan, std::span<const std::int64_t> ranks) {
  if (ranks.size() != plan.tiles.size()) {
    throw InputError("rank list has " + std::to_string(ranks.size()) +
                     " entries for " + std::to_string(plan.tiles.size()) + " tiles");
  }
  const std::int64_t T = plan.params.shots;
  std::int64_t needed = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 0 || ranks[i] > plan.tiles[i].max_rank) {
      throw InputError("rank " + std::to_string(ranks[i]) + " for tile " +
                       std::to_string(plan.tiles[i].id) + " outside [0, " +
                       std::to_string(plan.tiles[i].max_rank) + "]");
    }
    needed += ceil_div(ranks[i], T);
  }
  if (needed > plan.params.servers) {
    throw InfeasibleError("insufficient servers: plan requires " +
                          std::to_string(needed) + ", " +
                          std::to_string(plan.params.servers) + " available");
  }
  std::int64_t next = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    Tile& t = plan.tiles[i];
    t.allocated_rank = ranks[i];
    t.servers.clear();
    for (std::int64_t s = 0; s < ceil_div(ranks[i], T); ++s) t.servers.push_back(next++);
  }
  return plan;
}

TilePlan allocate_servers(TilePlan plan, Lossless) {
  std::vector<std::int64_t> ranks;
  ranks.reserve(plan.tiles.size());
  for (const auto& t : plan.tiles) ranks.push_back(t.max_rank);
  return assign_ranks(std::move(plan), ranks);
}

TilePlan allocate_servers(TilePlan plan, Lossy mode) {
  const auto ranks = rank_budget(plan, {}, mode.allow_dropped_tiles);
  return assign_ranks(std::move(plan), ranks);
}

std::string render_ascii(const TilePlan& plan) {
  const auto K = static_cast<std::size_t>(plan.params.users);
  const auto L = static_cast<std::size_t>(plan.params.subfunctions);
  std::vector<std::string> grid(K, std::string(L, '.'));
  for (std::size_t t = 0; t < plan.tiles.size(); ++t) {
    for (std::size_t r : plan.tiles[t].rows) {
      for (std::size_t c : plan.tiles[t].cols) {
        if (r >= K || c >= L) continue;
        char& cell = grid[r][c];
        cell = cell == '.' ? symbol_for(t) : '*';
      }
    }
  }
  std::string out;
  for (const auto& line : grid) out += line + '\n';
  return out;
}

std::string render_svg(const TilePlan& plan, int cell_size) {
  static constexpr std::string_view kPalette[] = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
      "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  const auto K = plan.params.users;
  const auto L = plan.params.subfunctions;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << L * cell_size
      << "\" height=\"" << K * cell_size << "\" viewBox=\"0 0 " << L * cell_size << ' '
      << K * cell_size << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << L * cell_size << "\" height=\""
      << K * cell_size << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (std::size_t t = 0; t < plan.tiles.size(); ++t) {
    const Tile& tile = plan.tiles[t];
    const auto color = kPalette[t % std::size(kPalette)];
    // One rectangle per cell keeps non-contiguous tiles drawable.
    svg << "  <g id=\"tile-" << tile.id << "\" fill=\"" << color
        << "\" stroke=\"black\" stroke-width=\"0.5\">\n";
    for (std::size_t r : tile.rows)
      for (std::size_t c : tile.cols)
        svg << "    <rect x=\"" << c * cell_size << "\" y=\"" << r * cell_size
            << "\" width=\"" << cell_size << "\" height=\"" << cell_size << "\"/>\n";
    svg << "  </g>\n";
    if (!tile.rows.empty() && !tile.cols.empty()) {
      svg << "  <text x=\"" << tile.cols.front() * cell_size + cell_size / 4
          << "\" y=\"" << tile.rows.front() * cell_size + (3 * cell_size) / 4
          << "\" font-family=\"monospace\" font-size=\"" << cell_size / 2 << "\">"
          << symbol_for(t) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tessfact
