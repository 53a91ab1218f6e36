// flowforms: discretize torus flows into weighted flow graphs, locate
// chain-recurrent and class-recurrent cells, check the cycle conditions and
// synthesize a smooth Lyapunov 1-form in a prescribed cohomology class.
//
// Exit codes: 0 success / conditions hold; 2 configuration errors; 3 a
// checked condition fails (witness written); 4 synthesis infeasible
// (witness written); 5 verification of the smooth form fails.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flowforms/asymptotic.hpp"
#include "flowforms/errors.hpp"
#include "flowforms/flow_graph.hpp"
#include "flowforms/io.hpp"
#include "flowforms/plot.hpp"
#include "flowforms/presets.hpp"
#include "flowforms/recurrence.hpp"
#include "flowforms/synthesis.hpp"
#include "graph_oracle.hpp"

namespace ff = flowforms;
using nlohmann::json;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  int threads = -1;        // -1: take from config
  long long seed = -1;     // -1: take from config
  std::string condition;   // "", "II", "III", "IV"
};

struct RunConfig {
  ff::TorusFlowSpec spec;
  ff::ClosedOneForm form;
  ff::Grid grid;
  bool has_grid = false;
  double tau = 2.0;
  int padding = 1;
  int samples_per_cell = 1;
  std::optional<double> theta, epsilon, margin, y_bound;
  std::optional<int> max_frequency;
  int n_samples = 10000;
  double t_total = 1000.0;
  std::optional<double> traj_step;
  std::vector<ff::Vec> x0s;
  int threads = 0;
  uint64_t seed = 0;
};

json parse_config_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = ff::io::line_col_of(text, e.byte);
    std::ostringstream os;
    os << "config: JSON parse error at line " << line << ", column " << col
       << ": " << e.what();
    throw ff::ConfigError(os.str());
  }
}

ff::Vec vec_from_json(const json& arr, int dim, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != dim)
    throw ff::ConfigError(std::string(what) + ": need one number per axis");
  ff::Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = arr[i].get<double>();
  return v;
}

RunConfig load_config(const Options& opt, bool need_grid) {
  std::string text;
  try {
    text = ff::io::read_text_file(opt.config_path);
  } catch (const ff::InputError& e) {
    throw ff::ConfigError(e.what());
  }
  json j = parse_config_json(text);
  if (!j.is_object()) throw ff::ConfigError("config: top level must be an object");

  static const char* known[] = {"flow",       "form",          "grid",
                                "tau",        "padding",       "samples_per_cell",
                                "theta",      "epsilon",       "max_frequency",
                                "margin",     "y_bound",       "n_samples",
                                "trajectory", "threads",       "seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ff::ConfigError("config: unknown key \"" + it.key() + "\"");
  }

  RunConfig cfg;
  try {
    if (!j.contains("flow")) throw ff::ConfigError("config: missing \"flow\"");
    const json& fj = j["flow"];
    if (fj.contains("preset")) {
      cfg.spec = ff::preset_by_name(fj.at("preset").get<std::string>(),
                                    fj.value("dim", 2));
    } else {
      cfg.spec = ff::io::flow_spec_from_json(fj.dump());
    }

    if (!j.contains("form")) throw ff::ConfigError("config: missing \"form\"");
    cfg.form = ff::io::form_from_json(j["form"].dump());
    if (cfg.form.dim() != cfg.spec.dim)
      throw ff::ConfigError("config: form and flow dimensions differ");

    if (j.contains("grid")) {
      const json& gj = j["grid"];
      if (!gj.is_array() || static_cast<int>(gj.size()) != cfg.spec.dim)
        throw ff::ConfigError("config: grid needs one resolution per axis");
      std::array<int, 3> res{1, 1, 1};
      for (int i = 0; i < cfg.spec.dim; ++i) res[static_cast<size_t>(i)] = gj[i].get<int>();
      cfg.grid = ff::Grid(cfg.spec.dim, res);
      cfg.has_grid = true;
    } else if (need_grid) {
      throw ff::ConfigError("config: missing \"grid\"");
    }

    cfg.tau = j.value("tau", 2.0);
    cfg.padding = j.value("padding", 1);
    cfg.samples_per_cell = j.value("samples_per_cell", 1);
    if (j.contains("theta") && !j["theta"].is_null())
      cfg.theta = j["theta"].get<double>();
    if (j.contains("epsilon") && !j["epsilon"].is_null())
      cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("max_frequency") && !j["max_frequency"].is_null())
      cfg.max_frequency = j["max_frequency"].get<int>();
    if (j.contains("margin") && !j["margin"].is_null())
      cfg.margin = j["margin"].get<double>();
    if (j.contains("y_bound") && !j["y_bound"].is_null())
      cfg.y_bound = j["y_bound"].get<double>();
    cfg.n_samples = j.value("n_samples", 10000);

    if (j.contains("trajectory")) {
      const json& tj = j["trajectory"];
      cfg.t_total = tj.value("t_total", 1000.0);
      if (tj.contains("step") && !tj["step"].is_null())
        cfg.traj_step = tj["step"].get<double>();
      if (tj.contains("x0")) {
        for (const json& p : tj["x0"])
          cfg.x0s.push_back(vec_from_json(p, cfg.spec.dim, "config trajectory x0"));
      }
    }
    if (cfg.x0s.empty()) {
      ff::Vec x(cfg.spec.dim);
      const double defaults[3] = {0.15, 0.35, 0.55};
      for (int i = 0; i < cfg.spec.dim; ++i) x[i] = defaults[i];
      cfg.x0s.push_back(x);
    }

    cfg.threads = j.value("threads", 0);
    cfg.seed = j.value("seed", uint64_t{0});
  } catch (const json::exception& e) {
    throw ff::ConfigError(std::string("config: ") + e.what());
  }

  if (opt.threads >= 0) cfg.threads = opt.threads;
  if (opt.seed >= 0) cfg.seed = static_cast<uint64_t>(opt.seed);
  return cfg;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// The config with every default the command resolved filled in.
json effective_config(const RunConfig& cfg) {
  json j;
  j["flow"] = json::parse(ff::io::flow_spec_to_json(cfg.spec));
  j["form"] = json::parse(ff::io::form_to_json(cfg.form));
  if (cfg.has_grid) {
    json res = json::array();
    for (int i = 0; i < cfg.grid.dim; ++i) res.push_back(cfg.grid.res[static_cast<size_t>(i)]);
    j["grid"] = res;
  }
  j["tau"] = cfg.tau;
  j["padding"] = cfg.padding;
  j["samples_per_cell"] = cfg.samples_per_cell;
  j["theta"] = optional_number(cfg.theta);
  j["epsilon"] = optional_number(cfg.epsilon);
  j["max_frequency"] = cfg.max_frequency ? json(*cfg.max_frequency) : json(nullptr);
  j["margin"] = optional_number(cfg.margin);
  j["y_bound"] = optional_number(cfg.y_bound);
  j["n_samples"] = cfg.n_samples;
  json x0s = json::array();
  for (const ff::Vec& x : cfg.x0s) {
    json p = json::array();
    for (int i = 0; i < x.dim(); ++i) p.push_back(x[i]);
    x0s.push_back(p);
  }
  j["trajectory"] = json{{"t_total", cfg.t_total},
                         {"step", optional_number(cfg.traj_step)},
                         {"x0", x0s}};
  j["threads"] = cfg.threads;
  j["seed"] = cfg.seed;
  return j;
}

void write_effective_config(const RunConfig& cfg, const std::string& out_dir) {
  ff::io::write_text_file(out_dir + "/effective_config.json",
                          effective_config(cfg).dump(2) + "\n");
}

std::string out_path(const std::string& dir, const char* name) {
  return dir + "/" + name;
}

ff::FlowGraph obtain_graph(RunConfig& cfg, const std::string& out_dir) {
  const std::string csv = out_path(out_dir, "graph.csv");
  const std::string meta = out_path(out_dir, "graph_meta.json");
  if (std::filesystem::exists(csv) && std::filesystem::exists(meta)) {
    try {
      ff::FlowGraph loaded = ff::io::load_flow_graph(csv, meta);
      if (loaded.grid.dim == cfg.grid.dim && loaded.grid.res == cfg.grid.res &&
          loaded.tau == cfg.tau && loaded.padding == cfg.padding &&
          loaded.samples_per_cell == cfg.samples_per_cell) {
        return ff::reweight(loaded, cfg.form);
      }
    } catch (const ff::ConfigError&) {
      // stale or foreign files: rebuild below
    }
  }
  return ff::build_flow_graph(cfg.spec, cfg.form, cfg.grid, cfg.tau,
                              cfg.samples_per_cell, cfg.padding, cfg.threads);
}

void save_graph(const ff::FlowGraph& graph, const std::string& out_dir) {
  ff::io::save_flow_graph(graph, out_path(out_dir, "graph.csv"),
                          out_path(out_dir, "graph_meta.json"));
}

void resolve_graph_params(RunConfig& cfg, const ff::FlowGraph& graph) {
  if (!cfg.theta) cfg.theta = ff::default_theta(graph, cfg.form);
  if (!cfg.epsilon) cfg.epsilon = ff::default_epsilon(graph);
  if (!cfg.margin) cfg.margin = *cfg.epsilon / (2.0 * cfg.tau);
  if (!cfg.y_bound) cfg.y_bound = 1.0;
  if (!cfg.max_frequency) {
    int min_res = cfg.grid.res[0];
    for (int i = 1; i < cfg.grid.dim; ++i)
      min_res = std::min(min_res, cfg.grid.res[static_cast<size_t>(i)]);
    cfg.max_frequency = std::min(10, (min_res - 1) / 2);
  }
}

int cmd_discretize(const Options& opt) {
  RunConfig cfg = load_config(opt, true);
  ff::FlowGraph graph =
      ff::build_flow_graph(cfg.spec, cfg.form, cfg.grid, cfg.tau,
                           cfg.samples_per_cell, cfg.padding, cfg.threads);
  resolve_graph_params(cfg, graph);
  save_graph(graph, opt.out_dir);
  write_effective_config(cfg, opt.out_dir);
  std::cout << "graph: " << graph.cell_count() << " cells, "
            << graph.edges.size() << " edges, tau = " << graph.tau
            << ", integration step = " << graph.integration_step << "\n";
  return 0;
}

int cmd_analyze(const Options& opt) {
  RunConfig cfg = load_config(opt, true);
  ff::FlowGraph graph = obtain_graph(cfg, opt.out_dir);
  resolve_graph_params(cfg, graph);
  save_graph(graph, opt.out_dir);
  write_effective_config(cfg, opt.out_dir);

  ff::RecurrenceReport report =
      ff::xi_recurrent_cells(graph, *cfg.theta, cfg.threads);
  ff::io::write_text_file(out_path(opt.out_dir, "recurrence.json"),
                          ff::io::recurrence_to_json(report));
  if (cfg.grid.dim == 2) {
    ff::io::write_text_file(
        out_path(opt.out_dir, "recurrence.svg"),
        ff::svg_cell_overlay(cfg.grid, report.R, report.R_xi, report.C_xi));
  }
  std::cout << "cells: " << graph.cell_count() << ", |R| = " << report.R.size()
            << ", |R_xi| = " << report.R_xi.size()
            << ", |C_xi| = " << report.C_xi.size() << ", theta = " << *cfg.theta
            << "\n";

  std::vector<ff::Condition> wanted;
  if (opt.condition == "II") wanted = {ff::Condition::II};
  else if (opt.condition == "III") wanted = {ff::Condition::III};
  else if (opt.condition == "IV") wanted = {ff::Condition::IV};
  else wanted = {ff::Condition::II, ff::Condition::III, ff::Condition::IV};

  bool all_hold = true;
  for (ff::Condition c : wanted) {
    ff::ConditionReport rep =
        c == ff::Condition::II    ? ff::check_condition_II(graph, report)
        : c == ff::Condition::III ? ff::check_condition_III(graph, report)
                                  : ff::check_condition_IV(graph, report);
    const char* name = c == ff::Condition::II    ? "II"
                       : c == ff::Condition::III ? "III"
                                                 : "IV";
    ff::io::write_text_file(
        out_path(opt.out_dir, (std::string("condition_") + name + ".json").c_str()),
        ff::io::condition_to_json(rep));
    std::cout << "condition " << name << ": "
              << (rep.holds ? "holds" : "fails") << " (" << rep.notes << ")\n";
    all_hold = all_hold && rep.holds;
  }
  return all_hold ? 0 : 3;
}

int cmd_synthesize(const Options& opt) {
  RunConfig cfg = load_config(opt, true);
  ff::FlowGraph graph = obtain_graph(cfg, opt.out_dir);
  resolve_graph_params(cfg, graph);
  save_graph(graph, opt.out_dir);
  write_effective_config(cfg, opt.out_dir);

  ff::RecurrenceReport report =
      ff::xi_recurrent_cells(graph, *cfg.theta, cfg.threads);
  ff::io::write_text_file(out_path(opt.out_dir, "recurrence.json"),
                          ff::io::recurrence_to_json(report));

  ff::PotentialResult pot =
      ff::synthesize_potential(graph, report, *cfg.epsilon);
  if (!pot.feasible) {
    ff::DiscreteLyapunovData data;
    data.epsilon = *cfg.epsilon;
    data.feasible = false;
    data.witness = pot.witness;
    data.notes = pot.notes;
    ff::io::write_text_file(out_path(opt.out_dir, "lyapunov.json"),
                            ff::io::lyapunov_data_to_json(data));
    std::cout << "synthesis infeasible: " << pot.notes << "\n";
    return 4;
  }

  std::vector<double> L = ff::conley_lyapunov(graph);
  ff::DiscreteLyapunovData data =
      ff::combine(graph, pot.g, L, report, *cfg.epsilon);
  if (!data.feasible) {
    ff::io::write_text_file(out_path(opt.out_dir, "lyapunov.json"),
                            ff::io::lyapunov_data_to_json(data));
    std::cout << "combination failed: " << data.notes << "\n";
    return 4;
  }

  ff::TrigFit fit_g =
      ff::fit_smooth_correction(cfg.grid, data.g, *cfg.max_frequency);
  std::vector<double> lambda_l(L.size());
  for (size_t i = 0; i < L.size(); ++i) lambda_l[i] = data.lambda * L[i];
  ff::TrigFit fit_l =
      ff::fit_smooth_correction(cfg.grid, lambda_l, *cfg.max_frequency);
  {
    std::ostringstream os;
    os << data.notes << "; fit residuals: g " << fit_g.max_residual
       << ", lambda*L " << fit_l.max_residual;
    data.notes = os.str();
  }
  ff::io::write_text_file(out_path(opt.out_dir, "lyapunov.json"),
                          ff::io::lyapunov_data_to_json(data));

  ff::SmoothLyapunovForm candidate{cfg.form, fit_g.poly, fit_l.poly};
  ff::ClosedOneForm total = candidate.total_form();
  ff::io::write_text_file(out_path(opt.out_dir, "total_form.json"),
                          ff::io::form_to_json(total));

  if (cfg.grid.dim == 2) {
    std::vector<double> iota(static_cast<size_t>(graph.cell_count()));
    for (int c = 0; c < graph.cell_count(); ++c) {
      iota[static_cast<size_t>(c)] =
          ff::pair_form_with_field(total, cfg.spec, cfg.grid.center(c));
    }
    ff::io::write_text_file(out_path(opt.out_dir, "iota_heatmap.svg"),
                            ff::svg_heatmap(cfg.grid, iota, "iota_V(omega_2)"));
  }

  ff::VerificationReport ver =
      ff::verify_lyapunov(cfg.spec, candidate, cfg.grid, report.R_xi,
                          cfg.n_samples, *cfg.margin, *cfg.y_bound, cfg.seed);
  ff::io::write_text_file(out_path(opt.out_dir, "verification.json"),
                          ff::io::verification_to_json(ver));
  std::cout << "lambda = " << data.lambda << ", epsilon = " << data.epsilon
            << ", theta = " << *cfg.theta << "\n"
            << "verification: " << ver.notes << "\n";
  if (!ver.pass()) {
    std::cout << "verification failed\n";
    return 5;
  }
  std::cout << "smooth Lyapunov form verified\n";
  return 0;
}

int cmd_asymptotic(const Options& opt) {
  RunConfig cfg = load_config(opt, false);
  double step;
  if (cfg.traj_step) {
    step = *cfg.traj_step;
  } else {
    double sup = ff::sup_speed(cfg.spec);
    step = std::min(0.01, sup > 0.0 ? 0.2 / sup : 0.01);
    cfg.traj_step = step;
  }
  std::vector<ff::AsymptoticCycleEstimate> rows;
  for (const ff::Vec& x0 : cfg.x0s) {
    rows.push_back(
        ff::estimate_asymptotic_cycle(cfg.spec, x0, cfg.t_total, step));
  }
  write_effective_config(cfg, opt.out_dir);
  ff::io::write_text_file(out_path(opt.out_dir, "asymptotic.csv"),
                          ff::io::asymptotic_csv(rows, cfg.form));
  for (const auto& r : rows) {
    std::cout << "A(";
    for (int i = 0; i < r.x0.dim(); ++i)
      std::cout << (i ? "," : "") << r.x0[i];
    std::cout << ") ~= (";
    for (int i = 0; i < r.A.dim(); ++i) std::cout << (i ? "," : "") << r.A[i];
    std::cout << "), pairing " << ff::pair_class(cfg.form.periods, r.A)
              << ", gap " << r.convergence_gap << "\n";
  }
  return 0;
}

bool report_check(const char* what, bool ok) {
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
  return ok;
}

int cmd_oracle_selftest(uint64_t seed) {
  namespace oracle = flowforms::oracle;
  ff::SplitMix64 rng(seed + 0x51e57e57);
  bool all = true;

  {
    int bad = 0;
    for (int t = 0; t < 25; ++t) {
      int n = rng.next_int(2, 8);
      double p = (1.0 + 1.5 * rng.next_double()) / n;
      ff::FlowGraph g = oracle::random_graph(n, p, -3, 3, rng);
      ff::RecurrenceReport rep = ff::xi_recurrent_cells(g, 0.0, 1);
      oracle::ReferenceAnalysis ref = oracle::enumerate_reference(g, 0.0);
      bool ok = rep.R == ref.R && rep.R_xi == ref.R_xi && rep.C_xi == ref.C_xi;
      for (int v = 0; ok && v < n; ++v) {
        double a = rep.m_value[static_cast<size_t>(v)];
        double b = ref.m[static_cast<size_t>(v)];
        ok = (std::isinf(a) || std::isinf(b)) ? a == b : std::fabs(a - b) < 1e-9;
      }
      if (!ok) ++bad;
    }
    all &= report_check("recurrence classes match exhaustive enumeration (25 graphs)",
                        bad == 0);
  }

  {
    int bad = 0, used = 0;
    for (int t = 0; t < 25; ++t) {
      int n = rng.next_int(2, 8);
      double p = (1.0 + 1.5 * rng.next_double()) / n;
      ff::FlowGraph g = oracle::random_graph(n, p, -3, 3, rng);
      ff::RecurrenceReport rep = ff::xi_recurrent_cells(g, 0.0, 1);
      if (rep.R.empty()) continue;
      ++used;
      double lib = ff::max_cycle_mean_through(g, rep.R).mean;
      double karp = oracle::karp_max_cycle_mean(g);
      if (std::isnan(karp) || std::fabs(lib - karp) > 1e-8) ++bad;
    }
    all &= report_check("max cycle mean agrees with Karp's algorithm", bad == 0 && used > 0);
  }

  {
    int bad = 0;
    for (int t = 0; t < 25; ++t) {
      int n = rng.next_int(2, 8);
      double p = (1.0 + 1.5 * rng.next_double()) / n;
      ff::FlowGraph g = oracle::random_graph(n, p, -3, 3, rng);
      ff::RecurrenceReport rep = ff::xi_recurrent_cells(g, 0.0, 1);
      ff::PotentialResult pot = ff::synthesize_potential(g, rep, 0.25);
      if (pot.feasible != oracle::constraints_feasible_fw(g, rep, 0.25)) ++bad;
    }
    all &= report_check("difference-constraint feasibility matches Floyd-Warshall",
                        bad == 0);
  }

  {
    ff::Grid grid = ff::Grid::square(2, 16);
    std::vector<double> values(static_cast<size_t>(grid.cell_count()));
    ff::TrigPoly truth(2);
    truth.add_term(0.7, {1, 0, 0}, ff::Basis::Cos);
    truth.add_term(-0.4, {2, 1, 0}, ff::Basis::Sin);
    truth.add_term(0.25, {0, 3, 0}, ff::Basis::Cos);
    for (int c = 0; c < grid.cell_count(); ++c)
      values[static_cast<size_t>(c)] = truth.eval(grid.center(c));
    ff::TrigFit fit = ff::fit_smooth_correction(grid, values, 4);
    all &= report_check("trig interpolation reproduces a known polynomial",
                        fit.max_residual < 1e-9);
  }

  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smooth Lyapunov 1-forms for flows on flat tori"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* c = cmd->add_option("--config", opt.config_path,
                              "run configuration (JSON)");
    if (config_required) c->required();
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    cmd->add_option("--seed", opt.seed, "override the sampling seed");
  };

  CLI::App* discretize =
      app.add_subcommand("discretize", "build and store the weighted flow graph");
  add_common(discretize, true);
  CLI::App* analyze = app.add_subcommand(
      "analyze", "recurrence classes and cycle condition checks");
  add_common(analyze, true);
  analyze->add_option("--condition", opt.condition,
                      "check a single condition instead of all three")
      ->check(CLI::IsMember({"II", "III", "IV"}));
  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "discrete data, smooth fit and verification");
  add_common(synthesize, true);
  CLI::App* asymptotic = app.add_subcommand(
      "asymptotic", "Schwartzman averages along trajectories");
  add_common(asymptotic, true);
  CLI::App* selftest = app.add_subcommand(
      "oracle-selftest", "cross-check the algorithms against reference oracles");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    std::filesystem::create_directories(opt.out_dir);
    if (discretize->parsed()) return cmd_discretize(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (synthesize->parsed()) return cmd_synthesize(opt);
    if (asymptotic->parsed()) return cmd_asymptotic(opt);
    if (selftest->parsed())
      return cmd_oracle_selftest(opt.seed >= 0 ? static_cast<uint64_t>(opt.seed) : 0);
  } catch (const ff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ff::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
