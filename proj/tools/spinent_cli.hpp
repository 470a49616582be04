// Copyright 2026 The spinent Authors
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

// Batch front end: evaluate | optimize | verify | planar.

#ifndef SPINENT_TOOLS_SPINENT_CLI_HPP
#define SPINENT_TOOLS_SPINENT_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinent/spinent.hpp"

namespace spinent::cli {

enum ExitCode { ok = 0, config_error = 2, numeric_failure = 3, verification_failure = 4 };

using Cell = std::variant<std::string, double, bool, std::nullptr_t>;

/// Ordered table rendered as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ",";
        const Cell& c = row[i];
        if (const auto* s = std::get_if<std::string>(&c)) out += *s;
        else if (const auto* d = std::get_if<double>(&c)) out += io::format_number(*d);
        else if (const auto* b = std::get_if<bool>(&c)) out += *b ? "true" : "false";
      }
      out += "\n";
    }
    return out;
  }

  std::string json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) {
        const Cell& c = row[i];
        if (const auto* s = std::get_if<std::string>(&c)) obj[columns[i]] = *s;
        else if (const auto* d = std::get_if<double>(&c)) obj[columns[i]] = *d;
        else if (const auto* b = std::get_if<bool>(&c)) obj[columns[i]] = *b;
        else obj[columns[i]] = nullptr;
      }
      arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
  }
};

namespace detail {

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = tok.find_last_not_of(" \t");
    out.push_back(presets::parse_number(tok.substr(b, e - b + 1)));
  }
  return out;
}

inline std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

inline std::string join(const VectorR& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ";" : "") + io::format_number(v[i]);
  return out;
}

inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + v[i];
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace detail

struct RunConfig {
  std::string preset;
  std::string network;
  std::string state;
  std::vector<std::string> params;
  std::string r;
  std::string r_grid;
  std::string gains;
  std::string free_gains;
  std::string criteria;
  std::string out;
  std::string format = "csv";
  std::string objective = "sum";
  std::string j_grid = "0.5";
  std::uint64_t seed = 1;
  int trials = 2000;
  bool pauli = false;
  bool large_spin = false;
};

namespace detail {

inline presets::Params param_map(const RunConfig& c) {
  presets::Params p;
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidArgument("--param expects key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return p;
}

/// r values requested; a single NaN means "no r given".
inline std::vector<double> r_values(const RunConfig& c) {
  if (!c.r.empty() && !c.r_grid.empty()) throw InvalidArgument("give either --r or --r-grid");
  if (!c.r.empty()) return {presets::parse_number(c.r)};
  return parse_list(c.r_grid);
}

struct Input {
  MomentSet moments;
  criteria::GainVector gains;
  double g_z = 1.0;
  double g_y = 1.0;
  std::optional<qudit::CompositeState> qstate;
};

inline void check_source(const RunConfig& c) {
  const int n = !c.preset.empty() + !c.network.empty() + !c.state.empty();
  if (n != 1) throw InvalidArgument("give exactly one of --preset, --network, --state");
}

inline Input load_input(const RunConfig& c, std::optional<double> r) {
  Input in;
  presets::Params p = param_map(c);
  if (!c.preset.empty()) {
    if (r) p["r"] = io::format_number(*r);
    presets::Preset pr = presets::make_preset(c.preset, p);
    in.moments = pr.moments;
    in.gains = pr.gains;
    in.g_z = pr.g_z;
    in.g_y = pr.g_y;
  } else if (!c.network.empty()) {
    const auto net = io::parse_network(read_file(c.network), r);
    const auto st = gaussian::run_network(net);
    const std::string readout = presets::param_str(p, "readout", "quadrature");
    if (readout == "stokes") in.moments = gaussian::linearized_stokes_moments(st, presets::param(p, "alpha_v", 1.0));
    else if (readout == "quadrature") in.moments = gaussian::quadrature_moments(st);
    else throw InvalidArgument("readout must be 'stokes' or 'quadrature'");
    in.gains = {VectorR::Ones(net.modes), VectorR::Ones(net.modes)};
  } else {
    if (c.state == "ghz") in.qstate = qudit::ghz_state(3);
    else if (c.state == "w") in.qstate = qudit::w_state(3);
    else if (c.state == "up") in.qstate = qudit::product_state(std::vector<VectorC>(3, qudit::basis_vector(2, 0)));
    else throw InvalidArgument("--state must be ghz, w or up");
    in.moments = qudit::site_moments(*in.qstate, spin::spin_matrices(0.5));
    in.gains = {VectorR::Ones(3), VectorR::Ones(3)};
  }
  in.g_z = presets::param(p, "g_z", in.g_z);
  in.g_y = presets::param(p, "g_y", in.g_y);
  const auto n = in.moments.sites();
  if (!c.gains.empty()) {
    const auto v = parse_list(c.gains);
    if (static_cast<Eigen::Index>(v.size()) != 2 * n)
      throw InvalidArgument("--gains needs " + std::to_string(2 * n) + " values (h then g)");
    for (Eigen::Index k = 0; k < n; ++k) {
      in.gains.h[k] = v[static_cast<std::size_t>(k)];
      in.gains.g[k] = v[static_cast<std::size_t>(n + k)];
    }
  }
  return in;
}

inline Table evaluate(const RunConfig& c) {
  check_source(c);
  const auto ids = split_ids(c.criteria);
  if (ids.empty()) throw InvalidArgument("--criteria must list at least one criterion");
  std::vector<double> rs = r_values(c);
  const bool no_r = rs.empty();
  if (no_r) rs.push_back(std::numeric_limits<double>::quiet_NaN());
  Table t{{"r", "criterion_id", "lhs", "rhs", "margin", "verdict", "conditional", "validity", "argmin", "flags"}, {}};
  criteria::EvalOptions opt;
  opt.large_spin_regime = c.large_spin;
  for (double r : rs) {
    const Input in = load_input(c, no_r ? std::nullopt : std::optional<double>(r));
    criteria::EvalRequest req;
    req.gains = in.gains;
    req.g_z = in.g_z;
    req.g_y = in.g_y;
    if (!c.free_gains.empty()) {
      const auto v = parse_list(c.free_gains);
      req.free_gains = Eigen::Map<const VectorR>(v.data(), static_cast<Eigen::Index>(v.size()));
      if (req.free_gains.size() != in.moments.sites()) throw InvalidArgument("--free-gains needs one value per site");
    }
    std::vector<criteria::CriterionResult> results;
    for (const auto& id : ids) {
      if (id == "c5") {
        if (!in.qstate) throw InvalidArgument("c5 needs --state");
        const auto strat = c.state == "ghz" ? qudit::ghz_strategy() : qudit::w_strategy();
        for (auto& row : criteria::criterion5_rows(qudit::criterion5_evaluate(*in.qstate, strat, 1.0), opt))
          results.push_back(row);
        continue;
      }
      results.push_back(criteria::evaluate(id, in.moments, req, opt));
    }
    for (const auto& res : results) {
      t.rows.push_back({no_r ? Cell(nullptr) : Cell(r), res.criterion_id, res.lhs, res.rhs, res.margin(),
                        std::string(to_string(res.verdict)), res.conditional,
                        res.validity ? Cell(join(*res.validity)) : Cell(nullptr), join(res.argmin_bipartitions),
                        join(res.flags)});
    }
  }
  return t;
}

inline Table optimize(const RunConfig& c) {
  check_source(c);
  if (!c.state.empty()) throw InvalidArgument("optimize needs --preset or --network");
  optimize::OptimizerSpec spec;
  if (c.objective == "product") spec.objective = optimize::Objective::product_ratio;
  else if (c.objective != "sum") throw InvalidArgument("--objective must be sum or product");
  const std::vector<double> rs = r_values(c);
  optimize::MomentSource src = [&c](double r) { return load_input(c, r).moments; };
  criteria::EvalOptions opt;
  opt.large_spin_regime = c.large_spin;
  Table t{{"r", "h", "g", "ratio", "verdict"}, {}};
  if (rs.empty()) return t;
  src(rs.front());  // surface config errors before spawning work
  const auto table = optimize::sweep(src, rs, spec, opt);
  for (const auto& row : table.rows)
    t.rows.push_back({row.r, row.h(), row.g(), row.ratio, std::string(to_string(row.criterion.verdict))});
  return t;
}

inline Table verify(const RunConfig& c, bool& all_pass) {
  if (c.trials <= 0) throw InvalidArgument("--trials must be positive");
  std::vector<std::string> ids = split_ids(c.criteria);
  if (ids.empty()) ids = oracle::soundness_suite();
  for (const auto& id : ids) oracle::soundness_sampler(id);
  Table t{{"criterion", "trials", "worst_margin", "status"}, {}};
  all_pass = true;
  for (const auto& id : ids) {
    const auto rep = oracle::soundness_scan(id, c.trials, c.seed);
    all_pass = all_pass && rep.pass;
    t.rows.push_back({id, static_cast<double>(rep.trials), rep.worst_margin, std::string(rep.pass ? "PASS" : "FAIL")});
  }
  return t;
}

inline Table planar(const RunConfig& c) {
  Table t{{"J", "C_J", "iterations", "residual"}, {}};
  for (double j : parse_list(c.j_grid)) {
    const auto res = spin::planar_bound(j, c.pauli ? spin::Units::pauli : spin::Units::spin);
    t.rows.push_back({j, res.value, static_cast<double>(res.iterations), res.residual});
  }
  return t;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"spinent: multipartite entanglement criteria for spin and quadrature moments"};
  app.require_subcommand(1);
  RunConfig c;
  auto add_common = [&c](CLI::App* s) {
    s->add_option("--out", c.out, "output path (default stdout)");
    s->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_source = [&c](CLI::App* s) {
    s->add_option("--preset", c.preset, "named scenario");
    s->add_option("--network", c.network, "network config file");
    s->add_option("--param", c.params, "preset parameter key=value")->take_all()->allow_extra_args(false);
    s->add_option("--r", c.r, "squeezing parameter");
    s->add_option("--r-grid", c.r_grid, "comma-separated squeezing values");
    s->add_flag("--large-spin", c.large_spin, "assert the large mean-spin regime");
  };
  CLI::App* ev = app.add_subcommand("evaluate", "evaluate criteria on a preset, network or state");
  add_source(ev);
  ev->add_option("--state", c.state, "three-qubit state: ghz, w or up");
  ev->add_option("--gains", c.gains, "h_1..h_N,g_1..g_N");
  ev->add_option("--free-gains", c.free_gains, "per-site free gains for pair criteria");
  ev->add_option("--criteria", c.criteria, "comma-separated criterion ids")->required();
  add_common(ev);
  CLI::App* op = app.add_subcommand("optimize", "minimize the criterion ratio over gains");
  add_source(op);
  op->add_option("--objective", c.objective, "sum or product");
  add_common(op);
  CLI::App* ve = app.add_subcommand("verify", "soundness scan on random biseparable states");
  ve->add_option("--criteria", c.criteria, "comma-separated criterion ids (default: full suite)");
  ve->add_option("--trials", c.trials, "samples per criterion");
  ve->add_option("--seed", c.seed, "master seed");
  add_common(ve);
  CLI::App* pl = app.add_subcommand("planar", "planar uncertainty bound C_J");
  pl->add_option("--j-grid", c.j_grid, "comma-separated spin values");
  pl->add_flag("--pauli", c.pauli, "Pauli units (four times spin units)");
  add_common(pl);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  }

  int code = ok;
  Table table;
  try {
    if (ev->parsed()) table = detail::evaluate(c);
    else if (op->parsed()) table = detail::optimize(c);
    else if (pl->parsed()) table = detail::planar(c);
    else {
      bool pass = true;
      table = detail::verify(c, pass);
      if (!pass) code = verification_failure;
    }
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const MissingData& e) {
    err << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::runtime_error& e) {
    err << "numeric failure: " << e.what() << "\n";
    return numeric_failure;
  }
  const std::string text = c.format == "json" ? table.json() : table.csv();
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "config error: cannot write '" << c.out << "'\n";
      return config_error;
    }
    f << text;
  }
  return code;
}

}  // namespace spinent::cli

#endif  // SPINENT_TOOLS_SPINENT_CLI_HPP
