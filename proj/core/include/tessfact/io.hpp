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

// Plain-text artifacts: CSV for matrices, JSON for scheme descriptors and
// tile records.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tessfact/factorization.hpp"
#include "tessfact/matrix.hpp"
#include "tessfact/params.hpp"
#include "tessfact/tessellation.hpp"

namespace tessfact {

/// Comma-separated rows, optional "# rows cols" header line, blank lines
/// ignored. Throws InputError naming the offending line.
Matrix parse_csv(std::string_view text);
/// Shortest round-trip formatting, so parse_csv(format_csv(m)) == m.
std::string format_csv(const Matrix& m, bool header = false);

Matrix read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const Matrix& m, bool header = false);

/// A single row or a single column read as a vector.
std::vector<double> read_vector_csv(const std::filesystem::path& path);

enum class SchemeMode { lossless, lossy };
std::string_view to_string(SchemeMode m);
SchemeMode parse_mode(std::string_view s);

struct SchemeDescriptor {
  SchemeParams params;
  std::vector<Tile> tiles;
  SchemeMode mode = SchemeMode::lossless;
  std::string demand_file;    ///< F.csv
  std::string decoding_file;  ///< D.csv
  std::string encoding_file;  ///< E.csv

  friend bool operator==(const SchemeDescriptor&, const SchemeDescriptor&) = default;
};

std::string to_json(const SchemeDescriptor& d);
SchemeDescriptor descriptor_from_json(std::string_view text);

/// Reads a descriptor and checks that every referenced file exists. Relative
/// paths are resolved against the descriptor's directory.
SchemeDescriptor load_descriptor(const std::filesystem::path& path);

/// One record per tile: tileId, family, rows, cols, q, residualSq, serverIds.
std::string tiles_to_json(const Factorization& f);

}  // namespace tessfact
