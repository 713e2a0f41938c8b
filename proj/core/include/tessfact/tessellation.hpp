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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tessfact/params.hpp"

namespace tessfact {

/// Tile families of the grid tessellation.
enum class TileFamily {
  full,          ///< Δ x Γ blocks of the main grid
  right_strip,   ///< Δ x mod(L,Γ) blocks along the right edge
  bottom_strip,  ///< mod(K,Δ) x Γ blocks along the bottom edge
  corner,        ///< the mod(K,Δ) x mod(L,Γ) corner
};

std::string_view to_string(TileFamily f);

/// One rectangle rows x cols of the demand matrix, served by its own servers.
/// Indices are zero-based; the sets are ordered and need not be contiguous.
struct Tile {
  std::size_t id = 0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  TileFamily family = TileFamily::full;
  std::int64_t max_rank = 0;
  std::int64_t allocated_rank = 0;
  std::vector<std::int64_t> servers;

  std::size_t area() const { return rows.size() * cols.size(); }

  friend bool operator==(const Tile&, const Tile&) = default;
};

struct TilePlan {
  SchemeParams params;
  std::vector<Tile> tiles;

  std::int64_t servers_used() const;
};

/// Grid tessellation: the ⌊K/Δ⌋ x ⌊L/Γ⌋ grid of full tiles anchored top
/// left (row-major), then the right strip top to bottom, the bottom strip left
/// to right and the corner. Empty families are omitted. Ranks are not yet
/// allocated.
TilePlan build_tessellation(const SchemeParams& params);

/// ⌈K/Δ⌉⌈L/Γ⌉, the fewest tiles that can cover the matrix.
std::int64_t min_tile_count(const SchemeParams& params);

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct CoverageReport {
  bool complete = false;
  std::vector<Cell> uncovered;
  /// Pairs of tile positions in the plan that share at least one cell.
  std::vector<std::pair<std::size_t, std::size_t>> overlaps;

  bool is_partition() const { return complete && overlaps.empty(); }
};

/// Cell-by-cell check of coverage and pairwise disjointness. Never throws for
/// in-range plans; out-of-range indices raise InputError.
CoverageReport check_coverage(const TilePlan& plan);

struct Lossless {};
struct Lossy {
  bool allow_dropped_tiles = false;
};

/// Lossless: every tile gets its full rank and ⌈rank/T⌉ servers; throws
/// InfeasibleError when the plan's server count is too small.
/// Lossy: ranks follow the uniform-then-round-robin budget over the plan's
/// server count (see rank_budget in factorization.hpp).
TilePlan allocate_servers(TilePlan plan, Lossless mode);
TilePlan allocate_servers(TilePlan plan, Lossy mode);

/// Assigns the given ranks and contiguous server ids in tile order. Throws
/// InputError on a rank outside [0, max_rank] and InfeasibleError when more
/// than `params.servers` servers would be needed.
TilePlan assign_ranks(TilePlan plan, std::span<const std::int64_t> ranks);

/// One character per cell, one line per row. Tile k is drawn with the k-th
/// symbol of [A-Za-z0-9]; '.' marks uncovered cells and '*' overlaps.
std::string render_ascii(const TilePlan& plan);

std::string render_svg(const TilePlan& plan, int cell_size = 24);

}  // namespace tessfact
