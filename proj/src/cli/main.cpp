// ncavity: command-line driver for the stacked-cavity Casimir library.
// Subcommands compute single energies, the saturation-ratio table, gap
// and sheet-strength sweeps, the two least-squares fits, the
// superconductor transition energies, the randomized determinant
// cross-check, and the symbolic expansion of Delta_N.
//
// Output contract: csv (header row with units, >= 10 significant digits),
// json (one object: config, results, diagnostics), or pretty text. Reruns
// with identical configuration produce byte-identical output.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/assembly.hpp"
#include "casimir/energy.hpp"
#include "casimir/fitting.hpp"
#include "casimir/kernels.hpp"
#include "casimir/oracle_check.hpp"
#include "casimir/phys.hpp"
#include "casimir/superconductor.hpp"

namespace {

using nlohmann::json;

// ---------------------------------------------------------------- output

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless / text
};

struct Table {
  std::vector<Column> cols;
  std::vector<std::vector<std::string>> rows;  // preformatted cells
};

std::string fmt_e(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string fmt_i(long long v) { return std::to_string(v); }

struct GlobalOpts {
  std::string output;  // empty = stdout
  std::string format = "pretty";
  casimir::QuadratureConfig quad;
};

void emit(const GlobalOpts& g, const json& config, const json& results,
          const json& diagnostics, const Table& tbl,
          const std::vector<std::string>& pretty_extra = {}) {
  std::ofstream file;
  if (!g.output.empty()) {
    file.open(g.output);
    if (!file) {
      throw std::invalid_argument("cannot open output file: " + g.output);
    }
  }
  std::ostream& os = g.output.empty() ? std::cout : file;

  if (g.format == "json") {
    json out;
    out["config"] = config;
    out["results"] = results;
    out["diagnostics"] = diagnostics;
    os << out.dump(2) << '\n';
    return;
  }
  if (g.format == "csv") {
    for (std::size_t c = 0; c < tbl.cols.size(); ++c) {
      if (c) os << ',';
      os << tbl.cols[c].name;
      if (!tbl.cols[c].unit.empty()) os << " [" << tbl.cols[c].unit << ']';
    }
    os << '\n';
    for (const auto& row : tbl.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) os << ',';
        os << row[c];
      }
      os << '\n';
    }
    return;
  }
  // pretty: aligned columns, then any free-form lines, then diagnostics
  std::vector<std::size_t> width(tbl.cols.size(), 0);
  for (std::size_t c = 0; c < tbl.cols.size(); ++c) {
    std::string head = tbl.cols[c].name;
    if (!tbl.cols[c].unit.empty()) head += " [" + tbl.cols[c].unit + "]";
    width[c] = head.size();
  }
  for (const auto& row : tbl.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  for (std::size_t c = 0; c < tbl.cols.size(); ++c) {
    std::string head = tbl.cols[c].name;
    if (!tbl.cols[c].unit.empty()) head += " [" + tbl.cols[c].unit + "]";
    os << head << std::string(width[c] - head.size(), ' ');
    os << (c + 1 < tbl.cols.size() ? "  " : "");
  }
  os << '\n';
  for (const auto& row : tbl.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << row[c] << std::string(width[c] - row[c].size(), ' ');
      os << (c + 1 < row.size() ? "  " : "");
    }
    os << '\n';
  }
  for (const auto& line : pretty_extra) os << line << '\n';
  if (!diagnostics.empty()) {
    os << "# diagnostics:";
    for (auto it = diagnostics.begin(); it != diagnostics.end(); ++it) {
      os << ' ' << it.key() << '=' << it.value().dump();
    }
    os << '\n';
  }
}

// ----------------------------------------------------------------- stack

struct StackOpts {
  std::string kind = "plasma";
  int n = 1;
  double d = 2e-9;
  double omega = 49593.3;
  double t = 94.0;
  double eps_in = 1.0;
  double eps_out = 1.0;
};

casimir::StackSpec make_spec(const StackOpts& s) {
  casimir::StackSpec spec;
  if (s.kind == "plasma") {
    spec.kind = casimir::BoundaryKind::PlasmaSheetCavities;
    spec.omega = s.omega;
  } else if (s.kind == "dielectric") {
    spec.kind = casimir::BoundaryKind::DielectricCavities;
    spec.omega = 0.0;
    spec.eps_inner = casimir::eps_constant(s.eps_in);
    spec.eps_outer = casimir::eps_constant(s.eps_out);
  } else {
    throw std::invalid_argument("unknown stack kind: " + s.kind);
  }
  spec.n_cavities = s.n;
  spec.gap = s.d;
  spec.temperature = s.t;
  spec.validate();
  return spec;
}

json stack_json(const StackOpts& s) {
  json j;
  j["kind"] = s.kind;
  j["n"] = s.n;
  j["d"] = s.d;
  j["t"] = s.t;
  if (s.kind == "plasma") {
    j["omega"] = s.omega;
  } else {
    j["eps_in"] = s.eps_in;
    j["eps_out"] = s.eps_out;
  }
  return j;
}

json quad_json(const casimir::QuadratureConfig& q) {
  json j;
  j["rel_tol"] = q.rel_tol;
  j["max_nodes"] = q.max_nodes;
  j["matsubara_rel_tail"] = q.matsubara_rel_tail;
  j["l_max_cap"] = q.l_max_cap;
  j["kernel"] = q.kernel;
  j["threads"] = q.threads;
  return j;
}

std::string resolved_kernel(const casimir::QuadratureConfig& q) {
  return casimir::select_kernel(q.kernel).name;
}

// The saturation-table cavity counts: every N through min(11, n_max),
// then odd N up to n_max.
std::vector<int> table_counts(int n_max) {
  std::vector<int> ns;
  for (int n = 1; n <= std::min(11, n_max); ++n) ns.push_back(n);
  for (int n = 13; n <= n_max; n += 2) ns.push_back(n);
  return ns;
}

// --------------------------------------------------------------- actions

int run_energy(const GlobalOpts& g, const StackOpts& s) {
  const casimir::StackSpec spec = make_spec(s);
  const casimir::EnergyResult r = casimir::casimir_energy(spec, g.quad);

  Table tbl;
  tbl.cols = {{"kind", ""},        {"n", ""},
              {"d", "m"},          {"omega", "1/m"},
              {"t", "K"},          {"e_total", "J/m^2"},
              {"e_tm", "J/m^2"},   {"e_te", "J/m^2"},
              {"l_used", ""},      {"k_nodes", ""}};
  tbl.rows.push_back({s.kind, fmt_i(s.n), fmt_e(s.d), fmt_e(s.omega),
                      fmt_e(s.t), fmt_e(r.e_per_area), fmt_e(r.tm_part),
                      fmt_e(r.te_part), fmt_i(r.l_used),
                      fmt_i(static_cast<long long>(r.k_nodes_used))});

  json config;
  config["command"] = "energy";
  config["stack"] = stack_json(s);
  config["quadrature"] = quad_json(g.quad);
  json results;
  results["e_total"] = r.e_per_area;
  results["e_tm"] = r.tm_part;
  results["e_te"] = r.te_part;
  json diag;
  diag["kernel"] = resolved_kernel(g.quad);
  diag["l_used"] = r.l_used;
  diag["k_nodes"] = r.k_nodes_used;
  diag["est_error"] = r.est_error;
  emit(g, config, results, diag, tbl);
  return 0;
}

int run_ratio_table(const GlobalOpts& g, const StackOpts& s, int n_max,
                    std::vector<int> ns) {
  if (ns.empty()) ns = table_counts(n_max);
  casimir::StackSpec spec = make_spec(s);
  casimir::SweepDiagnostics sd;
  const std::vector<casimir::RatioPoint> pts =
      casimir::ratio_curve(spec, ns, g.quad, &sd);

  Table tbl;
  tbl.cols = {{"n", ""},         {"e_total", "J/m^2"}, {"e_tm", "J/m^2"},
              {"e_te", "J/m^2"}, {"ratio", ""},        {"ratio_tm", ""}};
  json rows = json::array();
  for (const auto& p : pts) {
    tbl.rows.push_back({fmt_i(p.n), fmt_e(p.energy), fmt_e(p.tm_part),
                        fmt_e(p.te_part), fmt_e(p.ratio), fmt_e(p.ratio_tm)});
    rows.push_back({{"n", p.n},
                    {"e_total", p.energy},
                    {"e_tm", p.tm_part},
                    {"e_te", p.te_part},
                    {"ratio", p.ratio},
                    {"ratio_tm", p.ratio_tm}});
  }

  json config;
  config["command"] = "ratio-table";
  config["stack"] = stack_json(s);
  config["quadrature"] = quad_json(g.quad);
  config["n_list"] = ns;
  json results;
  results["rows"] = rows;
  json diag;
  diag["kernel"] = resolved_kernel(g.quad);
  diag["l_used"] = sd.l_used;
  diag["k_nodes"] = sd.k_nodes_used;
  emit(g, config, results, diag, tbl);
  return 0;
}

int run_sweep(const GlobalOpts& g, const StackOpts& s, bool sweep_d,
              double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw std::invalid_argument("sweep needs 0 < min <= max and points >= 1");
  }
  const bool plasma = s.kind == "plasma";

  Table tbl;
  tbl.cols = {{"n", ""},
              {"d", "m"},
              {"omega", "1/m"},
              {"e_total", "J/m^2"},
              {"e_tm", "J/m^2"},
              {"e_te", "J/m^2"},
              {"e_closed", "J/m^2"},
              {"closed_rel_dev", ""},
              {"l_used", ""},
              {"k_nodes", ""}};
  json rows = json::array();
  for (int i = 0; i < points; ++i) {
    const double x =
        points == 1 ? lo
                    : lo * std::pow(hi / lo, static_cast<double>(i) /
                                                 (points - 1));
    StackOpts si = s;
    (sweep_d ? si.d : si.omega) = x;
    const casimir::StackSpec spec = make_spec(si);
    const casimir::EnergyResult r = casimir::casimir_energy(spec, g.quad);
    const double closed =
        plasma ? casimir::closed_form_energy(si.n, si.d, si.omega)
               : std::numeric_limits<double>::quiet_NaN();
    const double dev = plasma
                           ? std::abs(r.e_per_area - closed) /
                                 std::abs(r.e_per_area)
                           : std::numeric_limits<double>::quiet_NaN();
    tbl.rows.push_back({fmt_i(si.n), fmt_e(si.d), fmt_e(si.omega),
                        fmt_e(r.e_per_area), fmt_e(r.tm_part),
                        fmt_e(r.te_part), fmt_e(closed), fmt_e(dev),
                        fmt_i(r.l_used),
                        fmt_i(static_cast<long long>(r.k_nodes_used))});
    json row;
    row["n"] = si.n;
    row["d"] = si.d;
    row["omega"] = si.omega;
    row["e_total"] = r.e_per_area;
    row["e_tm"] = r.tm_part;
    row["e_te"] = r.te_part;
    if (plasma) {
      row["e_closed"] = closed;
      row["closed_rel_dev"] = dev;
    }
    row["l_used"] = r.l_used;
    row["k_nodes"] = r.k_nodes_used;
    rows.push_back(row);
  }

  json config;
  config["command"] = sweep_d ? "sweep-d" : "sweep-omega";
  config["stack"] = stack_json(s);
  config["quadrature"] = quad_json(g.quad);
  config[sweep_d ? "d_min" : "omega_min"] = lo;
  config[sweep_d ? "d_max" : "omega_max"] = hi;
  config["points"] = points;
  json results;
  results["rows"] = rows;
  json diag;
  diag["kernel"] = resolved_kernel(g.quad);
  emit(g, config, results, diag, tbl);
  return 0;
}

struct FitOpts {
  int n_max = 19;
  int fit_n = 19;
  std::vector<double> d_list = {1e-9, 2e-9, 3e-9, 5e-9, 7e-9, 10e-9};
  std::vector<double> omega_list = {1e4, 1e5, 1e6};
  bool skip_ratio = false;
  bool skip_power = false;
};

int run_fit(const GlobalOpts& g, const StackOpts& s, const FitOpts& f) {
  Table tbl;
  tbl.cols = {{"model", ""}, {"param", ""}, {"value", ""}};
  json results;

  auto push_fit = [&tbl](const std::string& model,
                         const std::vector<std::string>& names,
                         const casimir::FitResult& fit) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      tbl.rows.push_back({model, names[i], fmt_e(fit.params[i])});
    }
    tbl.rows.push_back({model, "rss", fmt_e(fit.rss)});
    tbl.rows.push_back({model, "converged", fmt_i(fit.converged ? 1 : 0)});
  };
  auto fit_json = [](const std::vector<std::string>& names,
                     const casimir::FitResult& fit) {
    json j;
    for (std::size_t i = 0; i < names.size(); ++i) {
      j[names[i]] = fit.params[i];
    }
    j["rss"] = fit.rss;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
  };

  if (!f.skip_ratio) {
    const std::vector<int> ns = table_counts(f.n_max);
    const casimir::StackSpec spec = make_spec(s);
    const auto pts = casimir::ratio_curve(spec, ns, g.quad);
    std::vector<double> nd, rd;
    json data = json::array();
    for (const auto& p : pts) {
      nd.push_back(p.n);
      rd.push_back(p.ratio);
      data.push_back({{"n", p.n}, {"ratio", p.ratio}});
    }
    const casimir::FitResult fit = casimir::fit_ratio_asymptote(nd, rd);
    push_fit("saturation", {"a", "b", "p"}, fit);
    results["saturation"] = fit_json({"a", "b", "p"}, fit);
    results["saturation"]["data"] = data;
  }

  if (!f.skip_power) {
    std::vector<casimir::PowerLawSample> samples;
    json data = json::array();
    for (double d : f.d_list) {
      for (double om : f.omega_list) {
        StackOpts si = s;
        si.kind = "plasma";
        si.n = f.fit_n;
        si.d = d;
        si.omega = om;
        const casimir::EnergyResult r =
            casimir::casimir_energy(make_spec(si), g.quad);
        samples.push_back({f.fit_n, d, om, r.e_per_area});
        data.push_back(
            {{"n", f.fit_n}, {"d", d}, {"omega", om}, {"e", r.e_per_area}});
      }
    }
    const casimir::FitResult fit = casimir::fit_power_law(samples);
    const casimir::FitResult direct = casimir::fit_power_law_direct(samples);
    push_fit("power", {"K", "alpha", "beta"}, fit);
    tbl.rows.push_back(
        {"power", "amplitude_stored", fmt_e(casimir::amplitude_c())});
    tbl.rows.push_back({"power", "amplitude_recomputed",
                        fmt_e(casimir::amplitude_recomputed(fit.params[0]))});
    push_fit("power_direct", {"K", "alpha", "beta"}, direct);
    results["power"] = fit_json({"K", "alpha", "beta"}, fit);
    results["power"]["amplitude_stored"] = casimir::amplitude_c();
    results["power"]["amplitude_recomputed"] =
        casimir::amplitude_recomputed(fit.params[0]);
    results["power"]["data"] = data;
    results["power_direct"] = fit_json({"K", "alpha", "beta"}, direct);
  }

  json config;
  config["command"] = "fit";
  config["stack"] = stack_json(s);
  config["quadrature"] = quad_json(g.quad);
  config["n_max"] = f.n_max;
  config["fit_n"] = f.fit_n;
  config["fit_d"] = f.d_list;
  config["fit_omega"] = f.omega_list;
  config["skip_ratio"] = f.skip_ratio;
  config["skip_power"] = f.skip_power;
  json diag;
  diag["kernel"] = resolved_kernel(g.quad);
  emit(g, config, results, diag, tbl);
  return 0;
}

struct YbcoOpts {
  std::string preset_name = "harshman";
  std::string model_file;
  double t_below = std::numeric_limits<double>::quiet_NaN();
  double t_above = std::numeric_limits<double>::quiet_NaN();
  bool exact = false;
};

int run_ybco(const GlobalOpts& g, const YbcoOpts& y) {
  const casimir::SuperconductorModel model =
      y.model_file.empty() ? casimir::preset(y.preset_name)
                           : casimir::load_model_file(y.model_file);
  double t_below = y.t_below;
  double t_above = y.t_above;
  if (std::isnan(t_below)) {
    t_below = y.preset_name == "archimedes" ? 87.0 : 90.0;
  }
  if (std::isnan(t_above)) {
    t_above = y.preset_name == "archimedes" ? 91.0 : 94.0;
  }

  const double om_sc = casimir::omega_superconducting(model, t_below);
  const double om_n = casimir::omega_normal(model, t_above);
  const casimir::TransitionEnergies closed =
      casimir::transition_energies(model, t_below, t_above);

  Table tbl;
  tbl.cols = {{"method", ""},        {"t_below", "K"},
              {"t_above", "K"},      {"omega_sc", "1/m"},
              {"omega_n", "1/m"},    {"e_sc", "J/m^2"},
              {"e_n", "J/m^2"},      {"delta_e", "J/m^2"},
              {"eta", ""}};
  auto add_row = [&](const std::string& method,
                     const casimir::TransitionEnergies& te) {
    tbl.rows.push_back({method, fmt_e(t_below), fmt_e(t_above), fmt_e(om_sc),
                        fmt_e(om_n), fmt_e(te.e_sc), fmt_e(te.e_n),
                        fmt_e(te.delta_e), fmt_e(te.eta)});
  };
  add_row("closed", closed);

  json results;
  auto te_json = [&](const casimir::TransitionEnergies& te) {
    json j;
    j["e_sc"] = te.e_sc;
    j["e_n"] = te.e_n;
    j["delta_e"] = te.delta_e;
    j["eta"] = te.eta;
    return j;
  };
  results["omega_sc"] = om_sc;
  results["omega_n"] = om_n;
  results["closed"] = te_json(closed);
  if (y.exact) {
    const casimir::TransitionEnergies exact =
        casimir::transition_energies_exact(model, t_below, t_above, g.quad);
    add_row("exact", exact);
    results["exact"] = te_json(exact);
  }

  json config;
  config["command"] = "ybco";
  config["preset"] = y.preset_name;
  if (!y.model_file.empty()) config["model_file"] = y.model_file;
  config["t_below"] = t_below;
  config["t_above"] = t_above;
  config["exact"] = y.exact;
  config["model"] = {{"t_c", model.t_c},
                     {"lambda_0", model.lambda_0},
                     {"d", model.d},
                     {"delta", model.delta},
                     {"n_3d_ref", model.n_3d_ref},
                     {"t_ref", model.t_ref},
                     {"omega_n_anchor", model.omega_n_anchor},
                     {"t_anchor", model.t_anchor},
                     {"pairing_exponent", model.pairing_exponent}};
  if (y.exact) config["quadrature"] = quad_json(g.quad);
  json diag;
  if (y.exact) diag["kernel"] = resolved_kernel(g.quad);
  emit(g, config, results, diag, tbl);
  return 0;
}

struct OracleOpts {
  std::string kind = "both";
  int points = 1000;
  std::uint64_t seed = 20260816u;
  double floor = 1e-6;
  double tol = 1e-10;
};

int run_oracle_check(const GlobalOpts& g, const OracleOpts& o) {
  std::vector<casimir::BoundaryKind> kinds;
  if (o.kind == "dielectric" || o.kind == "both") {
    kinds.push_back(casimir::BoundaryKind::DielectricCavities);
  }
  if (o.kind == "plasma" || o.kind == "both") {
    kinds.push_back(casimir::BoundaryKind::PlasmaSheetCavities);
  }
  if (kinds.empty()) {
    throw std::invalid_argument("oracle-check kind must be dielectric, "
                                "plasma, or both");
  }

  Table tbl;
  tbl.cols = {{"kind", ""},
              {"points_drawn", ""},
              {"points_admissible", ""},
              {"comparisons", ""},
              {"worst_rel", ""},
              {"tolerance", ""},
              {"pass", ""}};
  json rows = json::array();
  bool all_pass = true;
  for (casimir::BoundaryKind kind : kinds) {
    casimir::CrossCheckConfig cfg;
    cfg.kind = kind;
    cfg.target_points = o.points;
    cfg.seed = o.seed;
    cfg.admissible_floor = o.floor;
    const casimir::CrossCheckResult r = casimir::cross_check_random(cfg);
    const bool pass =
        r.worst_rel <= o.tol && r.points_admissible >= o.points;
    all_pass = all_pass && pass;
    const std::string kind_name =
        kind == casimir::BoundaryKind::DielectricCavities ? "dielectric"
                                                          : "plasma";
    tbl.rows.push_back({kind_name, fmt_i(r.points_drawn),
                        fmt_i(r.points_admissible), fmt_i(r.comparisons),
                        fmt_e(r.worst_rel), fmt_e(o.tol),
                        fmt_i(pass ? 1 : 0)});
    json row;
    row["kind"] = kind_name;
    row["points_drawn"] = r.points_drawn;
    row["points_admissible"] = r.points_admissible;
    row["comparisons"] = r.comparisons;
    row["worst_rel"] = r.worst_rel;
    row["worst_case"] = r.worst_case;
    row["pass"] = pass;
    rows.push_back(row);
  }

  json config;
  config["command"] = "oracle-check";
  config["kind"] = o.kind;
  config["points"] = o.points;
  config["seed"] = o.seed;
  config["admissible_floor"] = o.floor;
  config["tolerance"] = o.tol;
  json results;
  results["rows"] = rows;
  emit(g, config, results, json::object(), tbl);
  return all_pass ? 0 : 3;
}

int run_expand_delta(const GlobalOpts& g, int n) {
  const std::string text = casimir::expand_delta(n);
  const auto terms = casimir::partitions_with_multiplicity(n);
  unsigned long long q_sum = 0;
  json jterms = json::array();
  for (const auto& t : terms) {
    q_sum += t.multiplicity;
    jterms.push_back({{"multiplicity", t.multiplicity}, {"parts", t.parts}});
  }

  Table tbl;
  tbl.cols = {{"n", ""}, {"expansion", ""}};
  tbl.rows.push_back({fmt_i(n), text});

  json config;
  config["command"] = "expand-delta";
  config["n"] = n;
  json results;
  results["n"] = n;
  results["expansion"] = text;
  results["terms"] = jterms;
  results["multiplicity_sum"] = q_sum;
  json diag;
  emit(g, config, results, diag, tbl);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ncavity: finite-temperature Casimir energy of stacked cavities\n"
      "(dielectric slabs or zero-thickness plasma sheets)"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; [section] names a subcommand. "
                 "Command-line flags override file values.");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GlobalOpts g;
  app.add_option("--output", g.output, "write to file instead of stdout");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}))
      ->capture_default_str();
  app.add_option("--kernel", g.quad.kernel, "integrand kernel")
      ->check(CLI::IsMember({"scalar", "avx2", "auto"}))
      ->capture_default_str();
  app.add_option("--threads", g.quad.threads,
                 "worker threads for the frequency loop")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_option("--rel-tol", g.quad.rel_tol,
                 "momentum-integral relative tolerance")
      ->capture_default_str();
  app.add_option("--max-nodes", g.quad.max_nodes,
                 "abscissa budget per momentum integral")
      ->capture_default_str();
  app.add_option("--tail-tol", g.quad.matsubara_rel_tail,
                 "frequency-sum truncation target")
      ->capture_default_str();
  app.add_option("--l-max", g.quad.l_max_cap,
                 "hard cap on the Matsubara index")
      ->capture_default_str();

  StackOpts stack;
  auto add_stack_opts = [&stack](CLI::App* sc, bool with_n) {
    sc->add_option("--kind", stack.kind, "stack kind")
        ->check(CLI::IsMember({"plasma", "dielectric"}))
        ->capture_default_str();
    if (with_n) {
      sc->add_option("--n", stack.n, "number of cavities")
          ->check(CLI::Range(1, 64))
          ->capture_default_str();
    }
    sc->add_option("--d", stack.d, "gap width, m")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--omega", stack.omega, "sheet strength, 1/m (plasma)")
        ->capture_default_str();
    sc->add_option("--t", stack.t, "temperature, K")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sc->add_option("--eps-in", stack.eps_in,
                   "cavity permittivity (dielectric)")
        ->capture_default_str();
    sc->add_option("--eps-out", stack.eps_out,
                   "wall/outer permittivity (dielectric)")
        ->capture_default_str();
  };

  auto* c_energy =
      app.add_subcommand("energy", "energy per unit area of one stack");
  c_energy->fallthrough();
  c_energy->configurable();
  add_stack_opts(c_energy, true);

  int n_max = 19;
  std::vector<int> n_list;
  auto* c_ratio = app.add_subcommand(
      "ratio-table", "saturation table: E[N]/(N E[1]) per cavity count");
  c_ratio->fallthrough();
  c_ratio->configurable();
  add_stack_opts(c_ratio, false);
  c_ratio->add_option("--n-max", n_max, "largest cavity count")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  c_ratio->add_option("--n-list", n_list,
                      "explicit cavity counts (overrides --n-max)")
      ->check(CLI::Range(1, 64));

  double sweep_lo = 1e-9, sweep_hi = 1e-8;
  int sweep_points = 10;
  auto* c_sweep_d = app.add_subcommand(
      "sweep-d", "energy vs gap width (geometric grid), with the "
                 "closed-form curve");
  c_sweep_d->fallthrough();
  c_sweep_d->configurable();
  add_stack_opts(c_sweep_d, true);
  c_sweep_d->add_option("--d-min", sweep_lo, "smallest gap, m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sweep_d->add_option("--d-max", sweep_hi, "largest gap, m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sweep_d->add_option("--points", sweep_points, "grid size")
      ->check(CLI::Range(1, 10000))
      ->capture_default_str();

  double om_lo = 1e4, om_hi = 1e6;
  int om_points = 9;
  auto* c_sweep_om = app.add_subcommand(
      "sweep-omega", "energy vs sheet strength (geometric grid), with the "
                     "closed-form curve");
  c_sweep_om->fallthrough();
  c_sweep_om->configurable();
  add_stack_opts(c_sweep_om, true);
  c_sweep_om->add_option("--omega-min", om_lo, "smallest strength, 1/m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sweep_om->add_option("--omega-max", om_hi, "largest strength, 1/m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sweep_om->add_option("--points", om_points, "grid size")
      ->check(CLI::Range(1, 10000))
      ->capture_default_str();

  FitOpts fit;
  auto* c_fit = app.add_subcommand(
      "fit", "saturation-asymptote and power-law least-squares fits");
  c_fit->fallthrough();
  c_fit->configurable();
  add_stack_opts(c_fit, false);
  c_fit->add_option("--n-max", fit.n_max,
                    "largest cavity count for the saturation fit")
      ->check(CLI::Range(4, 64))
      ->capture_default_str();
  c_fit->add_option("--fit-n", fit.fit_n,
                    "cavity count for the power-law samples")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  c_fit->add_option("--fit-d", fit.d_list, "power-law gap grid, m");
  c_fit->add_option("--fit-omega", fit.omega_list,
                    "power-law strength grid, 1/m");
  c_fit->add_flag("--skip-ratio", fit.skip_ratio,
                  "skip the saturation fit");
  c_fit->add_flag("--skip-power", fit.skip_power, "skip the power-law fit");

  YbcoOpts ybco;
  auto* c_ybco = app.add_subcommand(
      "ybco", "superconductor transition energies and modulation factor");
  c_ybco->fallthrough();
  c_ybco->configurable();
  auto* opt_preset =
      c_ybco->add_option("--preset", ybco.preset_name, "parameter set")
          ->check(CLI::IsMember({"harshman", "archimedes", "figure5"}))
          ->capture_default_str();
  c_ybco->add_option("--model-file", ybco.model_file,
                     "key=value model file (replaces --preset)")
      ->excludes(opt_preset);
  c_ybco->add_option("--t-below", ybco.t_below,
                     "superconducting-state temperature, K");
  c_ybco->add_option("--t-above", ybco.t_above,
                     "normal-state temperature, K");
  c_ybco->add_flag("--exact", ybco.exact,
                   "also evaluate through the full frequency sum");

  OracleOpts oracle;
  auto* c_oracle = app.add_subcommand(
      "oracle-check",
      "randomized determinant-vs-series equivalence check");
  c_oracle->fallthrough();
  c_oracle->configurable();
  c_oracle->add_option("--check-kind", oracle.kind, "stack kinds to draw")
      ->check(CLI::IsMember({"dielectric", "plasma", "both"}))
      ->capture_default_str();
  c_oracle->add_option("--points", oracle.points,
                       "admissible spectral points per kind")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  c_oracle->add_option("--seed", oracle.seed, "draw seed")
      ->capture_default_str();
  c_oracle->add_option("--floor", oracle.floor,
                       "|Delta| floor below which draws are not compared")
      ->capture_default_str();
  c_oracle->add_option("--tol", oracle.tol, "pass/fail relative tolerance")
      ->capture_default_str();

  int expand_n = 1;
  auto* c_expand = app.add_subcommand(
      "expand-delta", "symbolic partition expansion of Delta_N");
  c_expand->fallthrough();
  c_expand->configurable();
  c_expand->add_option("n", expand_n, "cavity count")
      ->required()
      ->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_energy) return run_energy(g, stack);
    if (*c_ratio) return run_ratio_table(g, stack, n_max, n_list);
    if (*c_sweep_d) {
      return run_sweep(g, stack, true, sweep_lo, sweep_hi, sweep_points);
    }
    if (*c_sweep_om) {
      return run_sweep(g, stack, false, om_lo, om_hi, om_points);
    }
    if (*c_fit) return run_fit(g, stack, fit);
    if (*c_ybco) return run_ybco(g, ybco);
    if (*c_oracle) return run_oracle_check(g, oracle);
    if (*c_expand) return run_expand_delta(g, expand_n);
  } catch (const casimir::NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
