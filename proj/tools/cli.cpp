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

#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <random>
#include <sstream>

#include "tessfact/capacity.hpp"
#include "tessfact/errors.hpp"
#include "tessfact/factorization.hpp"
#include "tessfact/io.hpp"
#include "tessfact/marchenko_pastur.hpp"
#include "tessfact/monte_carlo.hpp"
#include "tessfact/protocol.hpp"
#include "tessfact/tessellation.hpp"

namespace tessfact::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string num(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

// Aligned two-column listing used by every --format table output.
void print_table(std::ostream& out,
                 const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) {
    out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
}

struct ParamFlags {
  std::int64_t K = 0, L = 0, T = 1, D = 0, G = 0;
  std::optional<std::int64_t> N;

  SchemeParams params(std::int64_t servers) const {
    return {K, L, servers, T, D, G};
  }
};

void add_param_flags(CLI::App* app, ParamFlags& p, bool with_servers) {
  app->add_option("-K", p.K, "users")->required();
  app->add_option("-L", p.L, "subfunctions")->required();
  app->add_option("-T", p.T, "shots per server")->capture_default_str();
  app->add_option("-D", p.D, "per-server link budget (Delta)")->required();
  app->add_option("-G", p.G, "per-server compute budget (Gamma)")->required();
  if (with_servers) app->add_option("-N", p.N, "servers");
}

ordered_json params_json(const SchemeParams& p) {
  return {{"K", p.users},        {"L", p.subfunctions},    {"N", p.servers},
          {"T", p.shots},        {"Delta", p.link_budget}, {"Gamma", p.compute_budget}};
}

ordered_json point_json(const OperatingPoint& pt) {
  return {{"label", pt.label},
          {"gamma", num(pt.compute_fraction)},
          {"delta", num(pt.link_fraction)}};
}

bool divisible(const SchemeParams& p) {
  return p.users % p.link_budget == 0 && p.subfunctions % p.compute_budget == 0;
}

std::optional<ErrorPrediction> try_prediction(const SchemeParams& p) {
  try {
    return predicted_error(p);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- plan

struct PlanArgs {
  ParamFlags p;
  std::string format = "table";
  bool sweep = false;
};

void plan_sweep(const PlanArgs& a, std::ostream& out) {
  out << "K,L,T,Delta,Gamma,delta,gamma,n_upper,n_lower,n_converse,capacity,gap_ratio,exact\n";
  for (std::int64_t d = 1; d <= a.p.K; ++d) {
    for (std::int64_t g = 1; g <= a.p.L; ++g) {
      const SchemeParams sp{a.p.K, a.p.L, 0, a.p.T, d, g};
      const CapacityReport r = capacity_report(sp);
      out << sp.users << ',' << sp.subfunctions << ',' << sp.shots << ',' << d << ',' << g
          << ',' << num(to_double(sp.link_fraction())) << ','
          << num(to_double(sp.compute_fraction())) << ',' << r.n_upper << ','
          << num(to_double(r.n_lower)) << ',' << num(to_double(r.n_converse)) << ','
          << num(to_double(r.capacity)) << ',' << num(to_double(r.gap_ratio)) << ','
          << (r.exactness == Optimality::exact ? 1 : 0) << '\n';
    }
  }
}

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  if (a.sweep) {
    validate(a.p.params(0), Requirement::budgets);
    plan_sweep(a, out);
    return kOk;
  }
  const SchemeParams sp = validate(a.p.params(a.p.N.value_or(0)), Requirement::budgets);
  const CapacityReport r = capacity_report(sp);
  // Off the divisible grid only the bound pair is reported.
  const ClosedFormCapacity cf = divisible(sp) ? capacity_simple(sp) : ClosedFormCapacity{};
  const Tradeoff tr = divisible(sp) ? tradeoff_points(sp) : Tradeoff{};

  ordered_json j;
  j["params"] = params_json(sp);
  if (!a.p.N) j["params"].erase("N");
  j["nUpper"] = r.n_upper;
  j["nLower"] = num(r.n_lower);
  j["nConverse"] = num(r.n_converse);
  j["capacity"] = num(r.capacity);
  j["capacityValue"] = to_double(r.capacity);
  j["capacityCase"] = to_string(cf.kind);
  j["closedForm"] = cf.value ? ordered_json(num(*cf.value)) : ordered_json(nullptr);
  j["exactness"] = to_string(r.exactness);
  j["gapRatio"] = num(r.gap_ratio);
  j["gapRatioValue"] = to_double(r.gap_ratio);
  ordered_json t;
  t["kind"] = to_string(tr.kind);
  t["servers"] = tr.servers;
  t["product"] = tr.product ? ordered_json(num(*tr.product)) : ordered_json(nullptr);
  t["corners"] = ordered_json::array();
  for (const auto& c : tr.corners) t["corners"].push_back(point_json(c));
  t["baselines"] = ordered_json::array();
  for (const auto& b : tr.baselines) t["baselines"].push_back(point_json(b));
  j["tradeoff"] = t;
  if (a.p.N) {
    ordered_json s;
    s["N"] = *a.p.N;
    s["losslessFeasible"] = *a.p.N >= r.n_upper;
    if (const auto pred = try_prediction(sp)) {
      s["predictedError"] = pred->epsilon;
      s["truncationPoint"] = pred->truncation_point;
    } else {
      s["predictedError"] = nullptr;
    }
    j["servers"] = s;
  }

  if (a.format == "json") {
    out << j.dump(2) << '\n';
  } else if (a.format == "csv") {
    out << "K,L,T,Delta,Gamma,n_upper,n_lower,n_converse,capacity,case,exactness,gap_ratio\n"
        << sp.users << ',' << sp.subfunctions << ',' << sp.shots << ',' << sp.link_budget
        << ',' << sp.compute_budget << ',' << r.n_upper << ',' << num(r.n_lower) << ','
        << num(r.n_converse) << ',' << num(r.capacity) << ',' << to_string(cf.kind) << ','
        << to_string(r.exactness) << ',' << num(r.gap_ratio) << '\n';
  } else {
    std::vector<std::pair<std::string, std::string>> rows = {
        {"K x L", std::to_string(sp.users) + " x " + std::to_string(sp.subfunctions)},
        {"T", std::to_string(sp.shots)},
        {"Delta, Gamma",
         std::to_string(sp.link_budget) + ", " + std::to_string(sp.compute_budget)},
        {"N upper", std::to_string(r.n_upper)},
        {"N lower", num(r.n_lower)},
        {"N converse", num(r.n_converse)},
        {"capacity K/N", num(r.capacity) + " (" + num(to_double(r.capacity)) + ")"},
        {"case", std::string(to_string(cf.kind))},
        {"exactness", std::string(to_string(r.exactness))},
        {"gap ratio", num(r.gap_ratio) + " (" + num(to_double(r.gap_ratio)) + ")"},
        {"tradeoff", std::string(to_string(tr.kind))},
    };
    for (const auto& c : tr.corners) {
      rows.emplace_back("  " + std::string(c.label),
                        "gamma=" + num(c.compute_fraction) + " delta=" + num(c.link_fraction));
    }
    if (a.p.N) {
      rows.emplace_back("servers", std::to_string(*a.p.N));
      rows.emplace_back("lossless", *a.p.N >= r.n_upper ? "feasible" : "infeasible");
      if (const auto pred = try_prediction(sp)) {
        rows.emplace_back("predicted error", num(pred->epsilon));
      }
    }
    print_table(out, rows);
  }
  return kOk;
}

// ----------------------------------------------------------- factorize

struct FactorizeArgs {
  ParamFlags p;
  std::string mode = "lossless";
  std::string input;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool allow_drop = false;
  std::string format = "json";
};

int cmd_factorize(const FactorizeArgs& a, std::ostream& out, std::ostream& err) {
  const SchemeMode mode = parse_mode(a.mode);
  SchemeParams sp = a.p.params(0);
  if (a.p.N) {
    sp.servers = *a.p.N;
  } else if (mode == SchemeMode::lossless) {
    validate(sp, Requirement::budgets);
    // Smallest N that both the tessellation and NT >= max(K, L) accept.
    const std::int64_t span = std::max(sp.users, sp.subfunctions);
    sp.servers = std::max(n_opt_upper(sp), (span + sp.shots - 1) / sp.shots);
  } else {
    throw InputError("lossy mode needs -N");
  }
  validate(sp, mode == SchemeMode::lossless ? Requirement::lossless : Requirement::lossy);

  const Matrix f = a.input.empty() ? draw_demand(sp.users, sp.subfunctions, a.seed, 0)
                                   : read_csv(a.input);
  if (f.rows() != static_cast<std::size_t>(sp.users) ||
      f.cols() != static_cast<std::size_t>(sp.subfunctions)) {
    throw InputError("F is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                     ", expected " + std::to_string(sp.users) + "x" +
                     std::to_string(sp.subfunctions));
  }

  const Factorization fac = mode == SchemeMode::lossless
                                ? factorize_lossless(f, sp)
                                : factorize_lossy(f, sp, LossyOptions{a.allow_drop});
  const double residual = residual_error(f, fac.pair);
  const double norm = frobenius_norm_sq(f);
  const CostMeasurement costs = measure_costs(fac.pair, sp.shots);
  const double cells = static_cast<double>(sp.users) * static_cast<double>(sp.subfunctions);

  ordered_json rep;
  rep["mode"] = to_string(mode);
  rep["params"] = params_json(sp);
  rep["residualSq"] = residual;
  rep["frobeniusSq"] = norm;
  rep["relativeResidual"] = norm > 0.0 ? std::sqrt(residual / norm) : 0.0;
  rep["normalizedError"] = residual / cells;
  rep["costs"] = {{"compute", costs.compute}, {"links", costs.links}};
  rep["budgets"] = {{"compute", sp.compute_budget}, {"links", sp.link_budget}};
  rep["serversUsed"] = fac.plan.servers_used();
  rep["tiles"] = fac.plan.tiles.size();
  rep["withinGuarantees"] = fac.within_guarantees;
  rep["droppedTiles"] = fac.dropped_tiles;
  if (mode == SchemeMode::lossy) {
    const auto pred = try_prediction(sp);
    rep["predictedError"] = pred ? ordered_json(pred->epsilon) : ordered_json(nullptr);
  }

  if (!fac.within_guarantees) {
    err << "warning: Delta does not divide K or Gamma does not divide L; "
           "the error prediction does not apply\n";
  }
  if (!fac.dropped_tiles.empty()) {
    err << "warning: " << fac.dropped_tiles.size()
        << " tile(s) received rank 0 and are reconstructed as zero\n";
  }

  if (!a.out_dir.empty()) {
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_csv(dir / "F.csv", f);
    write_csv(dir / "D.csv", fac.pair.decoding);
    write_csv(dir / "E.csv", fac.pair.encoding);
    write_file(dir / "tiles.json", tiles_to_json(fac));
    write_file(dir / "report.json", rep.dump(2) + "\n");
    const SchemeDescriptor desc{sp, fac.plan.tiles, mode, "F.csv", "D.csv", "E.csv"};
    write_file(dir / "scheme.json", to_json(desc));
  }

  if (a.format == "table") {
    print_table(out, {{"mode", std::string(to_string(mode))},
                      {"servers", std::to_string(sp.servers)},
                      {"servers used", std::to_string(fac.plan.servers_used())},
                      {"residual", num(residual)},
                      {"relative residual", num(rep["relativeResidual"].get<double>())},
                      {"compute cost", std::to_string(costs.compute)},
                      {"link cost", std::to_string(costs.links)}});
  } else {
    out << rep.dump(2) << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------ simulate

struct SimulateArgs {
  std::string scheme;
  std::string f, d, e;
  std::int64_t T = 1;
  std::string w;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  Matrix f, d, e;
  std::int64_t shots = a.T;
  std::optional<SchemeParams> params;
  if (!a.scheme.empty()) {
    const SchemeDescriptor desc = load_descriptor(a.scheme);
    f = read_csv(desc.demand_file);
    d = read_csv(desc.decoding_file);
    e = read_csv(desc.encoding_file);
    shots = desc.params.shots;
    params = desc.params;
  } else {
    if (a.f.empty() || a.d.empty() || a.e.empty()) {
      throw InputError("simulate needs --scheme or all of --F, --D, --E");
    }
    f = read_csv(a.f);
    d = read_csv(a.d);
    e = read_csv(a.e);
  }
  if (a.trials < 1) throw InputError("trials must be at least 1");
  const FactorPair pair{d, e, nonzero_mask(d), nonzero_mask(e)};

  ordered_json rep;
  if (!a.w.empty()) {
    const std::vector<double> w = read_vector_csv(a.w);
    const SimulationReport r = run_end_to_end(f, w, pair, shots);
    rep["errorE"] = r.error;
    rep["costs"] = {{"compute", r.costs.compute}, {"links", r.costs.links}};
    rep["signals"] = r.signals;
    rep["expected"] = r.expected;
    rep["decoded"] = r.decoded;
  } else {
    // Random unit-variance outputs; the mean error tracks ‖DE − F‖²_F.
    std::seed_seq seq{static_cast<std::uint32_t>(a.seed),
                      static_cast<std::uint32_t>(a.seed >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> dist;
    std::vector<double> w(f.cols());
    double sum = 0.0;
    CostMeasurement costs;
    for (int i = 0; i < a.trials; ++i) {
      for (double& x : w) x = dist(rng);
      const SimulationReport r = run_end_to_end(f, w, pair, shots);
      sum += r.error;
      costs = r.costs;
    }
    const double cells = static_cast<double>(f.rows()) * static_cast<double>(f.cols());
    const double residual = residual_error(f, pair);
    rep["trials"] = a.trials;
    rep["seed"] = a.seed;
    rep["meanErrorE"] = sum / a.trials;
    rep["meanNormalizedError"] = sum / a.trials / cells;
    rep["residualSq"] = residual;
    rep["normalizedResidual"] = residual / cells;
    rep["costs"] = {{"compute", costs.compute}, {"links", costs.links}};
  }
  if (params) {
    const auto& c = rep["costs"];
    rep["withinBudgets"] = c["compute"].get<std::int64_t>() <= params->compute_budget &&
                           c["links"].get<std::int64_t>() <= params->link_budget;
  }
  const std::string text = rep.dump(2) + "\n";
  if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    write_file(fs::path(a.out_dir) / "report.json", text);
  }
  out << text;
  return kOk;
}

// ------------------------------------------------------------------ mc

struct McArgs {
  ParamFlags p;
  std::vector<std::int64_t> servers;
  int trials = 50;
  std::uint64_t seed = 0;
  std::string ensemble = "gaussian";
  std::string format = "csv";
};

int cmd_mc(const McArgs& a, std::ostream& out) {
  Ensemble ens;
  if (a.ensemble == "gaussian") {
    ens = Ensemble::gaussian;
  } else if (a.ensemble == "uniform") {
    ens = Ensemble::uniform;
  } else {
    throw InputError("ensemble must be 'gaussian' or 'uniform'");
  }
  ordered_json rows = ordered_json::array();
  if (a.format == "csv") out << "N,eps_pred,eps_emp,stderr,trials,seed\n";
  for (const std::int64_t n : a.servers) {
    const SchemeParams sp = validate(a.p.params(n), Requirement::lossy);
    const auto pred = try_prediction(sp);
    const MonteCarloResult r = monte_carlo(sp, {a.trials, a.seed, ens, 0, true});
    if (a.format == "csv") {
      out << n << ',' << (pred ? num(pred->epsilon) : std::string()) << ',' << num(r.mean)
          << ',' << num(r.standard_error) << ',' << a.trials << ',' << a.seed << '\n';
    } else {
      rows.push_back({{"N", n},
                      {"epsPred", pred ? ordered_json(pred->epsilon) : ordered_json(nullptr)},
                      {"epsEmp", r.mean},
                      {"stderr", r.standard_error},
                      {"trials", a.trials},
                      {"seed", a.seed}});
    }
  }
  if (a.format == "json") out << rows.dump(2) << '\n';
  if (a.format == "table") {
    for (const auto& r : rows) {
      out << "N=" << r["N"].get<std::int64_t>() << "  pred="
          << (r["epsPred"].is_null() ? std::string("-") : num(r["epsPred"].get<double>()))
          << "  emp=" << num(r["epsEmp"].get<double>())
          << "  stderr=" << num(r["stderr"].get<double>()) << '\n';
    }
  }
  return kOk;
}

// ------------------------------------------------------------------ mp

struct MpArgs {
  double lambda = 0.0;
  std::vector<double> pdf, cdf, inv, phi;
  std::optional<double> lower;
  std::string format = "table";
};

int cmd_mp(const MpArgs& a, std::ostream& out) {
  const MarchenkoPastur law(a.lambda);
  const double lower = a.lower.value_or(law.lower_edge());
  ordered_json j;
  j["lambda"] = a.lambda;
  j["lowerEdge"] = law.lower_edge();
  j["upperEdge"] = law.upper_edge();
  j["atomMass"] = law.atom_mass();
  std::vector<std::string> lines;
  auto add = [&](const char* key, double x, double v, ordered_json extra = {}) {
    ordered_json e = {{"x", x}, {"value", v}};
    if (!extra.is_null()) e.update(extra);
    j[key].push_back(e);
    lines.push_back(num(v));
  };
  for (double x : a.pdf) add("pdf", x, mp_pdf(x, law));
  for (double x : a.cdf) add("cdf", x, mp_cdf(x, law));
  for (double p : a.inv) {
    const Quantile q = mp_cdf_inv(p, law);
    add("inv", p, q.x, {{"belowAtom", q.below_atom}});
  }
  for (double t : a.phi) {
    const PartialMoment m = incomplete_first_moment(t, lower, law);
    add("phi", t, m.value, {{"lower", lower}, {"clamped", m.clamped}});
  }
  if (a.format == "json") {
    out << j.dump(2) << '\n';
  } else if (lines.empty()) {
    print_table(out, {{"lambda", num(a.lambda)},
                      {"lower edge", num(law.lower_edge())},
                      {"upper edge", num(law.upper_edge())},
                      {"atom mass", num(law.atom_mass())}});
  } else {
    for (const auto& l : lines) out << l << '\n';
  }
  return kOk;
}

// --------------------------------------------------------------- tiles

struct TilesArgs {
  ParamFlags p;
  std::string format = "ascii";
  std::string out_file;
};

int cmd_tiles(const TilesArgs& a, std::ostream& out) {
  SchemeParams sp = validate(a.p.params(a.p.N.value_or(0)), Requirement::budgets);
  TilePlan plan = build_tessellation(sp);
  if (a.p.N) {
    validate(sp, Requirement::lossless);
    plan = allocate_servers(std::move(plan), Lossless{});
  }
  std::string text;
  if (a.format == "svg") {
    text = render_svg(plan);
  } else if (a.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& t : plan.tiles) {
      arr.push_back({{"tileId", t.id},
                     {"family", to_string(t.family)},
                     {"rows", t.rows.size()},
                     {"cols", t.cols.size()},
                     {"maxRank", t.max_rank},
                     {"serverIds", t.servers}});
    }
    text = arr.dump(2) + "\n";
  } else {
    text = render_ascii(plan);
  }
  if (!a.out_file.empty()) {
    write_file(a.out_file, text);
  } else {
    out << text;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse tessellated factorization of multi-user linear computing demands",
               "tessfact"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "server counts, capacity and tradeoff points");
  add_param_flags(plan_cmd, plan.p, true);
  plan_cmd->add_option("--format", plan.format)
      ->check(CLI::IsMember({"json", "table", "csv"}))
      ->capture_default_str();
  plan_cmd->add_flag("--sweep", plan.sweep, "CSV over every (Delta, Gamma) for fixed K, L, T");

  FactorizeArgs fz;
  auto* fz_cmd = app.add_subcommand("factorize", "build D and E for a demand matrix");
  add_param_flags(fz_cmd, fz.p, true);
  fz_cmd->add_option("--mode", fz.mode)->check(CLI::IsMember({"lossless", "lossy"}))
      ->capture_default_str();
  fz_cmd->add_option("--in", fz.input, "F.csv; a seeded Gaussian F is drawn when omitted");
  fz_cmd->add_option("--seed", fz.seed)->capture_default_str();
  fz_cmd->add_option("--out", fz.out_dir, "directory for D.csv, E.csv, tiles.json, report.json");
  fz_cmd->add_flag("--allow-drop", fz.allow_drop, "lossy: let tiles receive rank 0");
  fz_cmd->add_option("--format", fz.format)->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run the encode/decode pipeline");
  sim_cmd->add_option("--scheme", sim.scheme, "scheme.json written by factorize");
  sim_cmd->add_option("--F", sim.f);
  sim_cmd->add_option("--D", sim.d);
  sim_cmd->add_option("--E", sim.e);
  sim_cmd->add_option("-T", sim.T)->capture_default_str();
  sim_cmd->add_option("--w", sim.w, "subfunction outputs; random when omitted");
  sim_cmd->add_option("--trials", sim.trials, "random output vectors")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed)->capture_default_str();
  sim_cmd->add_option("--out", sim.out_dir);

  McArgs mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo error versus prediction");
  add_param_flags(mc_cmd, mc.p, false);
  mc_cmd->add_option("-N", mc.servers, "server counts")->required()->delimiter(',');
  mc_cmd->add_option("--trials", mc.trials)->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed)->capture_default_str();
  mc_cmd->add_option("--ensemble", mc.ensemble)
      ->check(CLI::IsMember({"gaussian", "uniform"}))
      ->capture_default_str();
  mc_cmd->add_option("--format", mc.format)->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();

  MpArgs mp;
  auto* mp_cmd = app.add_subcommand("mp", "Marchenko-Pastur pdf, cdf, inverse and moment");
  mp_cmd->add_option("--lambda", mp.lambda)->required();
  mp_cmd->add_option("--pdf", mp.pdf)->delimiter(',');
  mp_cmd->add_option("--cdf", mp.cdf)->delimiter(',');
  mp_cmd->add_option("--inv", mp.inv)->delimiter(',');
  mp_cmd->add_option("--phi", mp.phi, "upper limit t of the first moment")->delimiter(',');
  mp_cmd->add_option("--lower", mp.lower, "lower limit for --phi (default lower edge)");
  mp_cmd->add_option("--format", mp.format)->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  TilesArgs tl;
  auto* tl_cmd = app.add_subcommand("tiles", "draw the tessellation");
  add_param_flags(tl_cmd, tl.p, true);
  tl_cmd->add_option("--format", tl.format)->check(CLI::IsMember({"ascii", "svg", "json"}))
      ->capture_default_str();
  tl_cmd->add_option("--out", tl.out_file);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*plan_cmd) return cmd_plan(plan, out);
    if (*fz_cmd) return cmd_factorize(fz, out, err);
    if (*sim_cmd) return cmd_simulate(sim, out);
    if (*mc_cmd) return cmd_mc(mc, out);
    if (*mp_cmd) return cmd_mp(mp, out);
    if (*tl_cmd) return cmd_tiles(tl, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}

}  // namespace tessfact::cli
