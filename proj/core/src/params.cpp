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

#include "tessfact/params.hpp"

#include <string>

#include "tessfact/errors.hpp"

namespace tessfact {

Rational SchemeParams::compute_fraction() const {
  return {compute_budget, subfunctions};
}
Rational SchemeParams::link_fraction() const { return {link_budget, users}; }
Rational SchemeParams::links_per_subfunction() const {
  return {link_budget, subfunctions};
}
Rational SchemeParams::aspect_ratio() const { return {users, subfunctions}; }
Rational SchemeParams::rate() const {
  if (servers <= 0) throw InputError("rate K/N undefined for N = 0");
  return {users, servers};
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError("invalid scheme parameters: " + message);
}

std::string fmt(const char* name, std::int64_t v) {
  return std::string(name) + "=" + std::to_string(v);
}

}  // namespace

SchemeParams validate(const SchemeParams& p, Requirement level) {
  require(p.users >= 1, "K >= 1 violated (" + fmt("K", p.users) + ")");
  require(p.subfunctions >= 1, "L >= 1 violated (" + fmt("L", p.subfunctions) + ")");
  require(p.shots >= 1, "T >= 1 violated (" + fmt("T", p.shots) + ")");
  require(p.servers >= 0, "N >= 0 violated (" + fmt("N", p.servers) + ")");
  require(p.link_budget >= 1, "Delta >= 1 violated (" + fmt("Delta", p.link_budget) + ")");
  require(p.link_budget <= p.users, "Delta > K (" + fmt("Delta", p.link_budget) +
                                        ", " + fmt("K", p.users) + ")");
  require(p.compute_budget >= 1,
          "Gamma >= 1 violated (" + fmt("Gamma", p.compute_budget) + ")");
  require(p.compute_budget <= p.subfunctions,
          "Gamma > L (" + fmt("Gamma", p.compute_budget) + ", " +
              fmt("L", p.subfunctions) + ")");
  if (level == Requirement::budgets) return p;

  require(p.servers >= 1, "N >= 1 violated (" + fmt("N", p.servers) + ")");
  if (level == Requirement::lossy) return p;

  const std::int64_t columns = p.servers * p.shots;
  require(columns >= p.subfunctions, "NT < L (NT=" + std::to_string(columns) + ", " +
                                         fmt("L", p.subfunctions) + ")");
  require(columns >= p.users, "NT < K (NT=" + std::to_string(columns) + ", " +
                                  fmt("K", p.users) + ")");
  return p;
}

}  // namespace tessfact
