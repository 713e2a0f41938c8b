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

#include "tessfact/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tessfact/errors.hpp"

namespace tessfact {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string line_error(std::size_t line, const std::string& what) {
  return "CSV line " + std::to_string(line) + ": " + what;
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw InputError(line_error(line, "not a number: '" + std::string(field) + "'"));
  }
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

Matrix parse_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::size_t header_rows = 0, header_cols = 0;
  bool has_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (rows != 0 || has_header) throw InputError(line_error(line_no, "misplaced header"));
      std::istringstream hs{std::string(line.substr(1))};
      if (!(hs >> header_rows >> header_cols)) {
        throw InputError(line_error(line_no, "header must be '# rows cols'"));
      }
      has_header = true;
      continue;
    }
    std::size_t n = 0;
    while (true) {
      const auto comma = line.find(',');
      values.push_back(parse_number(line.substr(0, comma), line_no));
      ++n;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = n;
    } else if (n != cols) {
      throw InputError(line_error(line_no, "expected " + std::to_string(cols) +
                                               " fields, got " + std::to_string(n)));
    }
    ++rows;
  }
  if (rows == 0) throw InputError("CSV contains no rows");
  if (has_header && (header_rows != rows || header_cols != cols)) {
    throw InputError("CSV header says " + std::to_string(header_rows) + "x" +
                     std::to_string(header_cols) + " but data is " + std::to_string(rows) +
                     "x" + std::to_string(cols));
  }
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.values().begin());
  return m;
}

std::string format_csv(const Matrix& m, bool header) {
  std::string out;
  if (header) out += "# " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      append_number(out, m(r, c));
    }
    out += '\n';
  }
  return out;
}

Matrix read_csv(const std::filesystem::path& path) {
  try {
    return parse_csv(slurp(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_csv(const std::filesystem::path& path, const Matrix& m, bool header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << format_csv(m, header);
}

std::vector<double> read_vector_csv(const std::filesystem::path& path) {
  const Matrix m = read_csv(path);
  if (m.rows() != 1 && m.cols() != 1) {
    throw InputError(path.string() + ": expected a single row or column, got " +
                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  return {m.values().begin(), m.values().end()};
}

std::string_view to_string(SchemeMode m) {
  return m == SchemeMode::lossless ? "lossless" : "lossy";
}

SchemeMode parse_mode(std::string_view s) {
  if (s == "lossless") return SchemeMode::lossless;
  if (s == "lossy") return SchemeMode::lossy;
  throw InputError("mode must be 'lossless' or 'lossy' (got '" + std::string(s) + "')");
}

namespace {

TileFamily family_from(std::string_view s) {
  for (auto f : {TileFamily::full, TileFamily::right_strip, TileFamily::bottom_strip,
                 TileFamily::corner}) {
    if (to_string(f) == s) return f;
  }
  throw InputError("unknown tile family '" + std::string(s) + "'");
}

json tile_json(const Tile& t) {
  return {{"tileId", t.id},
          {"family", to_string(t.family)},
          {"rows", t.rows},
          {"cols", t.cols},
          {"maxRank", t.max_rank},
          {"q", t.allocated_rank},
          {"serverIds", t.servers}};
}

}  // namespace

std::string to_json(const SchemeDescriptor& d) {
  const auto& p = d.params;
  json j;
  j["params"] = {{"K", p.users},        {"L", p.subfunctions},   {"N", p.servers},
                 {"T", p.shots},        {"Delta", p.link_budget}, {"Gamma", p.compute_budget}};
  j["mode"] = to_string(d.mode);
  j["tiles"] = json::array();
  for (const auto& t : d.tiles) j["tiles"].push_back(tile_json(t));
  j["files"] = {{"F", d.demand_file}, {"D", d.decoding_file}, {"E", d.encoding_file}};
  return j.dump(2) + "\n";
}

SchemeDescriptor descriptor_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    SchemeDescriptor d;
    const auto& p = j.at("params");
    d.params.users = p.at("K").get<std::int64_t>();
    d.params.subfunctions = p.at("L").get<std::int64_t>();
    d.params.servers = p.at("N").get<std::int64_t>();
    d.params.shots = p.at("T").get<std::int64_t>();
    d.params.link_budget = p.at("Delta").get<std::int64_t>();
    d.params.compute_budget = p.at("Gamma").get<std::int64_t>();
    d.mode = parse_mode(j.at("mode").get<std::string>());
    for (const auto& t : j.at("tiles")) {
      Tile tile;
      tile.id = t.at("tileId").get<std::size_t>();
      tile.family = family_from(t.at("family").get<std::string>());
      tile.rows = t.at("rows").get<std::vector<std::size_t>>();
      tile.cols = t.at("cols").get<std::vector<std::size_t>>();
      tile.max_rank = t.at("maxRank").get<std::int64_t>();
      tile.allocated_rank = t.at("q").get<std::int64_t>();
      tile.servers = t.at("serverIds").get<std::vector<std::int64_t>>();
      d.tiles.push_back(std::move(tile));
    }
    const auto& f = j.at("files");
    d.demand_file = f.at("F").get<std::string>();
    d.decoding_file = f.at("D").get<std::string>();
    d.encoding_file = f.at("E").get<std::string>();
    return d;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad scheme descriptor: ") + e.what());
  }
}

SchemeDescriptor load_descriptor(const std::filesystem::path& path) {
  SchemeDescriptor d = descriptor_from_json(slurp(path));
  const auto base = path.parent_path();
  for (std::string* file : {&d.demand_file, &d.decoding_file, &d.encoding_file}) {
    std::filesystem::path p(*file);
    if (p.is_relative()) p = base / p;
    if (!std::filesystem::exists(p)) {
      throw InputError("descriptor references missing file " + p.string());
    }
    *file = p.string();
  }
  return d;
}

std::string tiles_to_json(const Factorization& f) {
  json arr = json::array();
  for (std::size_t i = 0; i < f.plan.tiles.size(); ++i) {
    json t = tile_json(f.plan.tiles[i]);
    t["residualSq"] = i < f.tiles.size() ? f.tiles[i].residual_sq : 0.0;
    arr.push_back(std::move(t));
  }
  return arr.dump(2) + "\n";
}

}  // namespace tessfact
