// Command-line front end: Monte Carlo sweeps, analytic curves, exponential
// fits, lattice-transformation scans and percolation cluster statistics,
// all emitted as figure-ready CSV/JSON with provenance headers.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eqc/analytic.hpp"
#include "eqc/csv.hpp"
#include "eqc/fitting.hpp"
#include "eqc/lattice.hpp"
#include "eqc/monte_carlo.hpp"
#include "eqc/percolation.hpp"
#include "eqc/transform.hpp"

namespace {

using namespace eqc;

// Sweep syntax: "a..b[:step]" or a single value.
std::vector<double> parse_range(const std::string& text, double default_step) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {std::stod(text)};
  const auto colon = text.find(':', dots);
  const double a = std::stod(text.substr(0, dots));
  const double b = std::stod(colon == std::string::npos
                                 ? text.substr(dots + 2)
                                 : text.substr(dots + 2, colon - dots - 2));
  const double step =
      colon == std::string::npos ? default_step : std::stod(text.substr(colon + 1));
  if (step <= 0.0 || b < a) throw CLI::ValidationError("range", "invalid range: " + text);
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double v = a + i * step;
    if (v > b + 1e-9) break;
    values.push_back(v);
  }
  return values;
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_range(text, 1.0)) out.push_back(static_cast<int>(v + 0.5));
  return out;
}

struct CommonOpts {
  std::string kind = "square";
  int extent = 40;
  long trials = 20000;
  std::uint64_t seed = 42;
  int threads = 1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_kind = true) {
  if (with_kind) {
    cmd->add_option("--kind", o.kind, "lattice kind")->required();
  }
  cmd->add_option("--L", o.extent, "patch half-width (lattice spacings)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--threads", o.threads, "worker threads (output-invariant)");
  cmd->add_option("--out", o.out, "output file path");
}

std::vector<std::string> provenance(const CommonOpts& o, const std::string& extra) {
  std::ostringstream meta;
  meta << "kind=" << o.kind << " L=" << o.extent << " trials=" << o.trials
       << " seed=" << o.seed << (extra.empty() ? "" : " ") << extra;
  return {std::string("eqc ") + kVersion, meta.str()};
}

void emit(const CsvTable& table, const std::string& out_path) {
  if (!out_path.empty()) {
    write_csv(out_path, table);
    return;
  }
  for (const auto& c : table.comments) std::cout << "# " << c << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    std::cout << (i ? "," : "") << table.columns[i];
  }
  std::cout << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? "," : "") << format_number(row[i]);
    }
    std::cout << "\n";
  }
}

int cmd_simulate(const CommonOpts& o, const std::string& mode_name,
                 const std::string& p_text, const std::string& d_text, int k, int sep) {
  const LatticeGraph graph = generate(lattice_kind_from_string(o.kind), o.extent);
  const ScenarioMode mode = scenario_mode_from_string(mode_name);
  const auto p_values = parse_range(p_text, 0.05);
  const auto d_values = parse_int_range(d_text);

  ScenarioSpec sc;
  sc.mode = mode;
  sc.k = k;
  sc.separation = sep;

  CsvTable table;
  std::ostringstream extra;
  extra << "scenario=" << mode_name << " k=" << k << " sep=" << sep;
  table.columns = {"x", "mean", "std_error", "trials", "N1"};

  std::vector<CurvePoint> curve;
  if (d_values.size() > 1) {
    if (p_values.size() != 1) {
      throw CLI::ValidationError("simulate", "sweep either --p or --d, not both");
    }
    extra << " sweep=d p=" << format_number(p_values[0]);
    curve = eqc_curve_vs_distance(graph, mode, p_values[0], d_values, o.trials, o.seed,
                                  o.threads);
  } else {
    sc.d = d_values[0];
    extra << " sweep=p d=" << sc.d;
    curve = eqc_curve_vs_p(graph, sc, p_values, o.trials, o.seed, o.threads);
  }
  table.comments = provenance(o, extra.str());
  for (const auto& pt : curve) {
    table.rows.push_back({pt.x, pt.est.mean, pt.est.std_error,
                          static_cast<double>(pt.est.trials),
                          static_cast<double>(pt.est.normalizer)});
  }
  emit(table, o.out);
  std::cout << "simulate: " << curve.size() << " points, kind=" << o.kind
            << " mode=" << mode_name << "\n";
  for (const auto& pt : curve) {
    std::cout << "  x=" << format_number(pt.x) << "  EQC=" << format_number(pt.est.mean)
              << " +- " << format_number(pt.est.std_error) << "\n";
  }
  return 0;
}

int cmd_fit(const std::string& in_path, const std::string& out_path, double anchor) {
  const CsvTable table = read_csv(in_path);
  std::vector<FitPoint> curve = curve_from_csv(table);
  if (anchor > 0.0) curve = relative_curve(curve, anchor);
  const FitResult fit = fit_exponential(curve);
  const std::string report = fit_report_json(fit);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << report << "\n";
  }
  std::cout << report << "\n";
  return 0;
}

int cmd_analytic(const CommonOpts& o, int b, int m, double alpha, int k,
                 const std::string& p_text, const std::string& fit_against) {
  const auto p_values = parse_range(p_text, 0.05);
  double used_alpha = alpha;
  if (!fit_against.empty()) {
    const auto mc = curve_from_csv(read_csv(fit_against));
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : mc) pts.emplace_back(pt.d, pt.mean);
    used_alpha = fit_alpha(b, m, pts, k);
    std::cout << "fitted alpha = " << format_number(used_alpha) << "\n";
  }
  CsvTable table;
  std::ostringstream extra;
  extra << "b=" << b << " m=" << m << " alpha=" << format_number(used_alpha)
        << " k=" << k;
  table.comments = {std::string("eqc ") + kVersion, extra.str()};
  table.columns = {"p", "E0", "extrapolated"};
  const LatticeIndex index{b, m, used_alpha};
  for (double p : p_values) {
    table.rows.push_back({p, analytic_e0(index, p, k),
                          analytic_extrapolated(p) ? 1.0 : 0.0});
  }
  emit(table, o.out);
  return 0;
}

int cmd_transform(const CommonOpts& o, const std::string& name,
                  const std::string& p_text, const std::string& mode_name, int d) {
  const TransformKind kind = transform_kind_from_string(name);
  const auto p_values = parse_range(p_text, 0.05);
  ScenarioSpec sc;
  sc.mode = scenario_mode_from_string(mode_name);
  sc.d = d;
  const CrossoverScan scan =
      crossover_scan(kind, p_values, o.extent, sc, o.trials, o.seed, o.threads);
  CsvTable table;
  std::ostringstream extra;
  extra << "scenario=" << mode_name << " d=" << d;
  CommonOpts oo = o;
  oo.kind = name;
  table.comments = provenance(oo, extra.str());
  table.columns = {"p", "eqc_original", "eqc_transformed", "diff", "diff_stderr"};
  for (const auto& pt : scan.points) {
    table.rows.push_back({pt.p, pt.original.mean, pt.transformed.mean, pt.diff,
                          pt.diff_stderr});
  }
  emit(table, o.out);
  if (scan.bracket) {
    std::cout << "crossing: " << scan.sign_changes << " sign change(s), first in ["
              << format_number(scan.bracket->first) << ", "
              << format_number(scan.bracket->second) << "]\n";
  } else {
    std::cout << "no crossing\n";
  }
  return 0;
}

int cmd_theta(const CommonOpts& o, const std::string& p_text, int d) {
  const LatticeGraph graph = generate(lattice_kind_from_string(o.kind), o.extent);
  const auto p_values = parse_range(p_text, 0.05);
  ScenarioSpec sc;
  sc.mode = ScenarioMode::PointToPoint;
  sc.d = d;
  CsvTable table;
  table.comments = provenance(o, "d=" + std::to_string(d));
  table.columns = {"p", "theta", "theta_stderr", "eqc", "eqc_stderr"};
  for (size_t i = 0; i < p_values.size(); ++i) {
    const double p = p_values[i];
    const ClusterStats theta = estimate_theta(graph, p, o.trials, o.seed, o.threads);
    const EqcEstimate eqc = estimate_eqc(graph, sc, p, o.trials, o.seed, o.threads);
    table.rows.push_back({p, theta.theta_p, theta.std_error, eqc.mean, eqc.std_error});
  }
  emit(table, o.out);
  return 0;
}

int cmd_graph(const CommonOpts& o, double sample_p, bool with_sample) {
  const LatticeGraph graph = generate(lattice_kind_from_string(o.kind), o.extent);
  nlohmann::json j = nlohmann::json::parse(to_json(graph));
  if (with_sample) {
    const PercolationSample s = sample(graph, {sample_p, o.seed, 0});
    nlohmann::json open = nlohmann::json::array();
    for (const auto& e : graph.edges) {
      open.push_back({{"edge", e.id}, {"open", s.open_capacity[e.id]}});
    }
    j["sample"] = {{"p", sample_p}, {"seed", o.seed}, {"open_capacity", open}};
  }
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + o.out);
    out << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exclusive-quantum-channel simulator"};
  app.set_config("--config");
  app.require_subcommand(1);

  CommonOpts sim_opts;
  std::string sim_mode = "p2p", sim_p = "1.0", sim_d = "3";
  int sim_k = 1, sim_sep = 6;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo EQC sweep");
  add_common(sim, sim_opts);
  sim->add_option("--mode", sim_mode, "p2p|toinf|ktok|onetok");
  sim->add_option("--p", sim_p, "conversion probability or sweep a..b[:step]");
  sim->add_option("--d", sim_d, "terminal distance or sweep a..b[:step]");
  sim->add_option("--k", sim_k, "party size (ktok, onetok)");
  sim->add_option("--sep", sim_sep, "intra-party node separation");

  std::string fit_in, fit_out;
  double fit_anchor = 0.0;
  auto* fit = app.add_subcommand("fit", "exponential distance-law fit");
  fit->add_option("--in", fit_in, "curve CSV (x, mean, std_error)")->required();
  fit->add_option("--out", fit_out, "JSON report path");
  fit->add_option("--anchor", fit_anchor, "normalize curve at this distance first");

  CommonOpts ana_opts;
  int ana_b = 4, ana_m = 3, ana_k = 1;
  double ana_alpha = 2.6;
  std::string ana_p = "0.6..0.95", ana_fit_against;
  auto* ana = app.add_subcommand("analytic", "closed-form EQC curve");
  add_common(ana, ana_opts, /*with_kind=*/false);
  ana->add_option("--b", ana_b, "internal bonds per circle");
  ana->add_option("--m", ana_m, "peripheral escape exponent");
  ana->add_option("--alpha", ana_alpha, "medium index");
  ana->add_option("--k", ana_k, "party size");
  ana->add_option("--p", ana_p, "probability sweep a..b[:step]");
  ana->add_option("--fit-against", ana_fit_against, "fit alpha to this MC curve CSV");

  CommonOpts tr_opts;
  std::string tr_p = "0.45..0.95", tr_mode = "p2p";
  int tr_d = 8;
  auto* tr = app.add_subcommand("transform", "lattice-transformation crossover scan");
  add_common(tr, tr_opts);
  tr->get_option("--kind")->description("transform kind (dhex2tri|dhexsep|tdhex2sq|tdhexjoint|tdhexsep)");
  tr->add_option("--p", tr_p, "probability sweep a..b[:step]");
  tr->add_option("--mode", tr_mode, "scenario mode");
  tr->add_option("--d", tr_d, "terminal distance");

  CommonOpts th_opts;
  std::string th_p = "0.3..0.45:0.02";
  int th_d = 8;
  auto* th = app.add_subcommand("theta", "largest-cluster fraction vs EQC");
  add_common(th, th_opts);
  th->add_option("--p", th_p, "probability sweep a..b[:step]");
  th->add_option("--d", th_d, "EQC terminal distance");

  CommonOpts gr_opts;
  double gr_sample_p = -1.0;
  auto* gr = app.add_subcommand("graph", "serialize a lattice patch to JSON");
  add_common(gr, gr_opts);
  gr->add_option("--sample-p", gr_sample_p, "attach one percolation sample at this p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sim) return cmd_simulate(sim_opts, sim_mode, sim_p, sim_d, sim_k, sim_sep);
    if (*fit) return cmd_fit(fit_in, fit_out, fit_anchor);
    if (*ana) return cmd_analytic(ana_opts, ana_b, ana_m, ana_alpha, ana_k, ana_p,
                                  ana_fit_against);
    if (*tr) return cmd_transform(tr_opts, tr_opts.kind, tr_p, tr_mode, tr_d);
    if (*th) return cmd_theta(th_opts, th_p, th_d);
    if (*gr) return cmd_graph(gr_opts, gr_sample_p, gr_sample_p >= 0.0);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
