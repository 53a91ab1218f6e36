#include "flowforms/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flowforms/errors.hpp"
#include "json.hpp"

namespace flowforms::io {

namespace {

using nlohmann::json;

// Nonfinite doubles have no JSON encoding; use string sentinels.
json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim(); ++i) a.push_back(num(v[i]));
  return a;
}

json poly_json(const TrigPoly& p, int dim) {
  json terms = json::array();
  for (const TrigTerm& t : p.terms()) {
    json k = json::array();
    for (int i = 0; i < dim; ++i) k.push_back(t.k[i]);
    terms.push_back(
        {{"c", num(t.c)}, {"k", k}, {"basis", t.basis == Basis::Sin ? "sin" : "cos"}});
  }
  return terms;
}

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col_of(text, e.byte);
    std::ostringstream os;
    os << what << ": JSON parse error at line " << line << ", column " << col
       << ": " << e.what();
    throw ConfigError(os.str());
  }
}

TrigPoly poly_from_json(const json& terms, int dim, const char* what) {
  if (!terms.is_array())
    throw ConfigError(std::string(what) + ": term list must be an array");
  TrigPoly p(dim);
  for (const json& t : terms) {
    std::array<int, 3> k{0, 0, 0};
    const json& kj = t.at("k");
    if (!kj.is_array() || static_cast<int>(kj.size()) != dim)
      throw ConfigError(std::string(what) + ": each k needs one entry per axis");
    for (int i = 0; i < dim; ++i) k[static_cast<size_t>(i)] = kj[i].get<int>();
    std::string basis = t.at("basis").get<std::string>();
    if (basis != "sin" && basis != "cos")
      throw ConfigError(std::string(what) + ": basis must be \"sin\" or \"cos\"");
    p.add_term(t.at("c").get<double>(), k,
               basis == "sin" ? Basis::Sin : Basis::Cos);
  }
  return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double parse_double_field(const std::string& field, const char* what) {
  char* end = nullptr;
  double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw ConfigError(std::string(what) + ": bad number '" + field + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::pair<int, int> line_col_of(const std::string& text, size_t byte_offset) {
  // nlohmann reports 1-based byte positions.
  size_t pos = byte_offset > 0 ? byte_offset - 1 : 0;
  if (pos > text.size()) pos = text.size();
  int line = 1, col = 1;
  for (size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open for reading: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open for writing: " + path);
  out << content;
  if (!out) throw InputError("write failed: " + path);
}

std::string flow_spec_to_json(const TorusFlowSpec& spec) {
  spec.validate();
  json comps = json::array();
  for (const TrigPoly& p : spec.components) comps.push_back(poly_json(p, spec.dim));
  json j{{"dim", spec.dim}, {"components", comps}};
  if (!spec.name.empty()) j["name"] = spec.name;
  return dump(j);
}

TorusFlowSpec flow_spec_from_json(const std::string& text) {
  json j = parse_text(text, "flow spec");
  TorusFlowSpec spec;
  try {
    spec.dim = j.at("dim").get<int>();
    if (spec.dim < 1 || spec.dim > 3)
      throw ConfigError("flow spec: dim must be 1, 2 or 3");
    const json& comps = j.at("components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != spec.dim)
      throw ConfigError("flow spec: need one component list per axis");
    for (const json& c : comps)
      spec.components.push_back(poly_from_json(c, spec.dim, "flow spec"));
    if (j.contains("name")) spec.name = j.at("name").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("flow spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string form_to_json(const ClosedOneForm& form) {
  form.validate();
  json j{{"periods", vec_json(form.periods)},
         {"potential", poly_json(form.potential, form.dim())}};
  return dump(j);
}

ClosedOneForm form_from_json(const std::string& text) {
  json j = parse_text(text, "form");
  ClosedOneForm form;
  try {
    const json& per = j.at("periods");
    if (!per.is_array() || per.size() < 1 || per.size() > 3)
      throw ConfigError("form: periods needs 1 to 3 entries");
    form.periods = Vec(static_cast<int>(per.size()));
    for (int i = 0; i < form.periods.dim(); ++i)
      form.periods[i] = per[i].get<double>();
    if (j.contains("potential"))
      form.potential = poly_from_json(j.at("potential"), form.dim(), "form");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("form: ") + e.what());
  }
  form.validate();
  return form;
}

void save_flow_graph(const FlowGraph& graph, const std::string& csv_path,
                     const std::string& meta_path) {
  const int d = graph.grid.dim;
  json res = json::array();
  for (int i = 0; i < d; ++i) res.push_back(graph.grid.res[static_cast<size_t>(i)]);
  json meta{{"format", "flowgraph/1"},
            {"grid", json{{"dim", d}, {"res", res}}},
            {"tau", num(graph.tau)},
            {"padding", graph.padding},
            {"samples_per_cell", graph.samples_per_cell},
            {"integration_step", num(graph.integration_step)},
            {"edge_count", graph.edges.size()}};
  write_text_file(meta_path, dump(meta));

  std::ostringstream csv;
  csv << "tail,head";
  for (int i = 0; i < d; ++i) csv << ",disp" << i;
  csv << ",weight\r\n";
  for (const Edge& e : graph.edges) {
    csv << e.tail << ',' << e.head;
    for (int i = 0; i < d; ++i) csv << ',' << format_double(e.disp[i]);
    csv << ',' << format_double(e.weight) << "\r\n";
  }
  write_text_file(csv_path, csv.str());
}

FlowGraph load_flow_graph(const std::string& csv_path,
                          const std::string& meta_path) {
  json meta = parse_text(read_text_file(meta_path), "graph metadata");
  FlowGraph g;
  size_t expected = 0;
  try {
    const json& gj = meta.at("grid");
    int d = gj.at("dim").get<int>();
    std::array<int, 3> res{0, 0, 0};
    const json& rj = gj.at("res");
    if (!rj.is_array() || static_cast<int>(rj.size()) != d)
      throw ConfigError("graph metadata: res needs one entry per axis");
    for (int i = 0; i < d; ++i) res[static_cast<size_t>(i)] = rj[i].get<int>();
    g.grid = Grid(d, res);
    g.tau = meta.at("tau").get<double>();
    g.padding = meta.at("padding").get<int>();
    g.samples_per_cell = meta.at("samples_per_cell").get<int>();
    g.integration_step = meta.at("integration_step").get<double>();
    expected = meta.at("edge_count").get<size_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("graph metadata: ") + e.what());
  }

  const std::string csv = read_text_file(csv_path);
  const int d = g.grid.dim;
  const int cells = g.grid.cell_count();
  size_t pos = 0;
  bool header = true;
  while (pos < csv.size()) {
    size_t nl = csv.find('\n', pos);
    size_t end = nl == std::string::npos ? csv.size() : nl;
    size_t len = end - pos;
    if (len > 0 && csv[pos + len - 1] == '\r') --len;
    std::string line = csv.substr(pos, len);
    pos = nl == std::string::npos ? csv.size() : nl + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    size_t fpos = 0;
    while (true) {
      size_t comma = line.find(',', fpos);
      fields.push_back(line.substr(fpos, comma == std::string::npos
                                             ? std::string::npos
                                             : comma - fpos));
      if (comma == std::string::npos) break;
      fpos = comma + 1;
    }
    if (static_cast<int>(fields.size()) != d + 3)
      throw ConfigError("graph CSV: wrong field count in line '" + line + "'");
    Edge e;
    e.tail = static_cast<int>(parse_double_field(fields[0], "graph CSV"));
    e.head = static_cast<int>(parse_double_field(fields[1], "graph CSV"));
    if (e.tail < 0 || e.tail >= cells || e.head < 0 || e.head >= cells)
      throw ConfigError("graph CSV: cell id out of range in line '" + line + "'");
    e.disp = Vec(d);
    for (int i = 0; i < d; ++i)
      e.disp[i] = parse_double_field(fields[static_cast<size_t>(2 + i)], "graph CSV");
    e.weight = parse_double_field(fields[static_cast<size_t>(2 + d)], "graph CSV");
    g.edges.push_back(e);
  }
  if (g.edges.size() != expected)
    throw ConfigError("graph CSV: edge count does not match metadata");
  for (size_t i = 1; i < g.edges.size(); ++i) {
    const Edge& a = g.edges[i - 1];
    const Edge& b = g.edges[i];
    if (a.tail > b.tail || (a.tail == b.tail && a.head >= b.head))
      throw ConfigError("graph CSV: edges must be sorted by (tail, head), unique");
  }
  return g;
}

namespace {

json cycle_json(const Cycle& cycle) {
  json cells = json::array();
  for (int c : cycle.cells) cells.push_back(c);
  return json{{"cells", cells},
              {"length", cycle.length()},
              {"weight", num(cycle.weight)},
              {"mean", num(cycle.mean())},
              {"displacement", vec_json(cycle.displacement)}};
}

json int_array(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

}  // namespace

std::string cycle_to_json(const Cycle& cycle) { return dump(cycle_json(cycle)); }

std::string recurrence_to_json(const RecurrenceReport& report) {
  json pos = json::array();
  for (const Cycle& c : report.positive_witnesses) pos.push_back(cycle_json(c));
  json rxi = json::array();
  for (const Cycle& c : report.rxi_witnesses) rxi.push_back(cycle_json(c));
  json j{{"theta", num(report.theta)},
         {"R", int_array(report.R)},
         {"R_xi", int_array(report.R_xi)},
         {"C_xi", int_array(report.C_xi)},
         {"scc_id", int_array(report.scc_id)},
         {"m_value", num_array(report.m_value)},
         {"positive_cycle_sccs", int_array(report.positive_cycle_sccs)},
         {"positive_witnesses", pos},
         {"rxi_witnesses", rxi}};
  return dump(j);
}

std::string condition_to_json(const ConditionReport& report) {
  const char* name = report.condition == Condition::II
                         ? "II"
                         : report.condition == Condition::III ? "III" : "IV";
  json j{{"condition", name},
         {"holds", report.holds},
         {"eta", num(report.eta)},
         {"eta_per_time", num(report.eta_per_time)},
         {"theta", num(report.theta)},
         {"delta", num(report.delta)},
         {"T", num(report.T)},
         {"notes", report.notes}};
  j["witness"] = report.witness ? cycle_json(*report.witness) : json(nullptr);
  return dump(j);
}

std::string lyapunov_data_to_json(const DiscreteLyapunovData& data) {
  json j{{"lambda", num(data.lambda)},
         {"epsilon", num(data.epsilon)},
         {"feasible", data.feasible},
         {"g", num_array(data.g)},
         {"L", num_array(data.L)},
         {"w2", num_array(data.w2)},
         {"notes", data.notes}};
  j["witness"] = data.witness ? cycle_json(*data.witness) : json(nullptr);
  return dump(j);
}

std::string verification_to_json(const VerificationReport& report) {
  json j{{"decrease_pass", report.decrease_pass},
         {"worst_pairing", num(report.worst_pairing)},
         {"worst_point", vec_json(report.worst_point)},
         {"samples_checked", report.samples_checked},
         {"vanishing_pass", report.vanishing_pass},
         {"y_sup", num(report.y_sup)},
         {"y_worst_point", vec_json(report.y_worst_point)},
         {"y_samples", report.y_samples},
         {"margin", num(report.margin)},
         {"y_bound", num(report.y_bound)},
         {"pass", report.pass()},
         {"notes", report.notes}};
  return dump(j);
}

std::string asymptotic_csv(const std::vector<AsymptoticCycleEstimate>& rows,
                           const ClosedOneForm& form) {
  const int d = form.dim();
  std::ostringstream csv;
  for (int i = 0; i < d; ++i) csv << "x0_" << i << ',';
  for (int i = 0; i < d; ++i) csv << "A_" << i << ',';
  csv << "pairing,t_total,convergence_gap\r\n";
  for (const AsymptoticCycleEstimate& r : rows) {
    if (r.A.dim() != d) throw InputError("asymptotic_csv: dimension mismatch");
    for (int i = 0; i < d; ++i) csv << format_double(r.x0[i]) << ',';
    for (int i = 0; i < d; ++i) csv << format_double(r.A[i]) << ',';
    csv << format_double(pair_class(form.periods, r.A)) << ','
        << format_double(r.t_total) << ',' << format_double(r.convergence_gap)
        << "\r\n";
  }
  return csv.str();
}

}  // namespace flowforms::io
