#include "lqw/config.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "lqw/errors.hpp"
#include "lqw/io.hpp"

namespace lqw {

using nlohmann::json;

namespace {

Vec2 parse_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CurveDef parse_curve_def(const json& j) {
  if (!j.is_object()) throw ConfigError("curve: expected an object");
  CurveDef def;
  def.builtin = j.value("builtin", "");
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("curve.params: expected object");
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      if (!it.value().is_number()) {
        throw ConfigError("curve.params." + it.key() + ": expected number");
      }
      def.params[it.key()] = it.value().get<double>();
    }
  }
  if (j.contains("polyline")) {
    for (const auto& p : j["polyline"]) {
      def.polyline.push_back(parse_point(p, "curve.polyline"));
    }
  }
  if (j.contains("samples")) {
    for (const auto& row : j["samples"]) {
      if (!row.is_array() || row.size() != 3) {
        throw ConfigError("curve.samples: expected rows [t, x, y]");
      }
      def.sample_ts.push_back(row[0].get<double>());
      def.sample_pts.push_back({row[1].get<double>(), row[2].get<double>()});
    }
  }
  def.samples_csv = j.value("samples_csv", "");
  def.truncation_T = j.value("truncation_T", defaults::kTruncation);
  def.samples_n = j.value("samples_n", defaults::kNodes);
  if (!(def.truncation_T > 0.0)) {
    throw ConfigError("curve.truncation_T: must be positive");
  }
  if (def.samples_n < 8) throw ConfigError("curve.samples_n: must be >= 8");
  return def;
}

LeakyGraph parse_graph(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw ConfigError("graph: expected {vertices, edges}");
  }
  LeakyGraph g;
  for (const auto& v : j["vertices"]) {
    g.vertices.push_back(parse_point(v, "graph.vertices"));
  }
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to")) {
      throw ConfigError("graph.edges: expected {from, to, [waypoints]}");
    }
    LeakyGraph::Edge edge;
    edge.from = e["from"].get<int>();
    edge.to = e["to"].get<int>();
    if (e.contains("waypoints")) {
      for (const auto& w : e["waypoints"]) {
        edge.waypoints.push_back(parse_point(w, "graph.edges.waypoints"));
      }
    }
    g.edges.push_back(std::move(edge));
  }
  return g;
}

SolverSettings parse_solver(const json& j) {
  SolverSettings s;
  if (j.is_null()) return s;
  if (!j.is_object()) throw ConfigError("solver: expected an object");
  s.n = j.value("n", defaults::kNodes);
  s.top_k = j.value("top_k", defaults::kTopBranches);
  s.grid_m = j.value("grid_m", defaults::kChordArcGrid);
  s.refine_r = j.value("refine_levels", defaults::kRefineLevels);
  if (j.contains("kappa_min")) s.kappa_min = j["kappa_min"].get<double>();
  if (j.contains("kappa_max")) s.kappa_max = j["kappa_max"].get<double>();
  const std::string rule = j.value("diagonal_rule", "log_subtraction");
  if (rule == "log_subtraction") {
    s.rule = DiagonalRule::LogSubtraction;
  } else if (rule == "panel_gauss") {
    s.rule = DiagonalRule::PanelGauss;
  } else {
    throw ConfigError("solver.diagonal_rule: unknown rule '" + rule + "'");
  }
  const std::string ext = j.value("extension", "tangent_rays");
  if (ext == "tangent_rays") {
    s.extension = ExtensionSpec::Strategy::TangentRays;
  } else if (ext == "close_loop") {
    s.extension = ExtensionSpec::Strategy::CloseLoop;
  } else {
    throw ConfigError("solver.extension: unknown strategy '" + ext + "'");
  }
  s.find_states = j.value("find_states", true);
  if (s.n < 16) throw ConfigError("solver.n: must be >= 16");
  if (s.top_k < 1) throw ConfigError("solver.top_k: must be >= 1");
  if (s.grid_m < 16) throw ConfigError("solver.grid_m: must be >= 16");
  if (s.refine_r < 0) throw ConfigError("solver.refine_levels: must be >= 0");
  if (s.kappa_min && s.kappa_max && !(*s.kappa_min < *s.kappa_max)) {
    throw ConfigError("solver: kappa_min must be < kappa_max");
  }
  if (s.kappa_min && !(*s.kappa_min > 0.0)) {
    throw ConfigError("solver.kappa_min: must be positive");
  }
  return s;
}

SweepDef parse_sweep(const json& j) {
  if (!j.is_object() || !j.contains("param") || !j.contains("values")) {
    throw ConfigError("sweep: expected {param, values, [command]}");
  }
  SweepDef s;
  s.param = j["param"].get<std::string>();
  if (s.param != "beta" && s.param != "alpha" && s.param != "kappa" &&
      s.param != "n") {
    throw ConfigError("sweep.param: must be one of beta, alpha, kappa, n");
  }
  for (const auto& v : j["values"]) {
    if (!v.is_number()) throw ConfigError("sweep.values: expected numbers");
    s.values.push_back(v.get<double>());
  }
  if (s.values.empty()) throw ConfigError("sweep.values: empty");
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (!(s.values[i] > s.values[i - 1])) {
      throw ConfigError("sweep.values: must be strictly increasing");
    }
  }
  const std::string cmd = j.value("command", "cconst");
  if (cmd == "cconst") {
    s.command = Command::CConst;
  } else if (cmd == "bound") {
    s.command = Command::Bound;
  } else {
    throw ConfigError("sweep.command: must be cconst or bound");
  }
  return s;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": top level must be an object");
  RunConfig cfg;
  if (j.contains("curve")) cfg.curve = parse_curve_def(j["curve"]);
  if (j.contains("graph")) cfg.graph = parse_graph(j["graph"]);
  if (cfg.curve && cfg.graph) {
    throw ConfigError(origin + ": specify either curve or graph, not both");
  }
  cfg.alpha = j.value("alpha", 1.0);
  if (!(cfg.alpha > 0.0)) throw ConfigError("alpha: must be positive");
  cfg.solver = parse_solver(j.contains("solver") ? j["solver"] : json());
  if (j.contains("sweep")) cfg.sweep = parse_sweep(j["sweep"]);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config_text(text, path);
}

namespace {

std::pair<std::vector<double>, std::vector<Vec2>> parse_samples_csv(
    const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream is(text);
  std::string line;
  std::vector<double> ts;
  std::vector<Vec2> pts;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double t, x, y;
    char c1, c2;
    if (!(ls >> t >> c1 >> x >> c2 >> y) || c1 != ',' || c2 != ',') {
      if (lineno == 1) continue;  // header row
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 't,x,y'");
    }
    ts.push_back(t);
    pts.push_back({x, y});
  }
  return {ts, pts};
}

double get_param(const CurveDef& def, const std::string& key, double fallback,
                 bool required = false) {
  auto it = def.params.find(key);
  if (it != def.params.end()) return it->second;
  if (required) {
    throw ConfigError("curve.params." + key + ": required for builtin '" +
                      def.builtin + "'");
  }
  return fallback;
}

}  // namespace

Curve make_curve(const CurveDef& def) {
  const int n = def.samples_n;
  try {
    if (!def.builtin.empty()) {
      const std::string& b = def.builtin;
      if (b == "line") return curves::line(def.truncation_T, n);
      if (b == "angle") {
        return curves::angle(get_param(def, "beta", 0.0, true),
                             def.truncation_T, n);
      }
      if (b == "circle") return curves::circle(get_param(def, "R", 1.0), n);
      if (b == "circular_arc") {
        return curves::circular_arc(get_param(def, "R", 1.0),
                                    get_param(def, "phi0", 0.0),
                                    get_param(def, "phi1", 1.5707963267948966),
                                    n);
      }
      if (b == "spinode") return curves::spinode(get_param(def, "t_max", 1.0), n);
      if (b == "rhamphoid") {
        return curves::rhamphoid(get_param(def, "t_max", 1.0), n);
      }
      if (b == "cusp_family") {
        return curves::cusp_family(
            static_cast<int>(get_param(def, "n", 0.0, true)),
            static_cast<int>(get_param(def, "m", 0.0, true)),
            get_param(def, "t_max", 1.0), n);
      }
      throw ConfigError("curve.builtin: unknown builtin '" + b + "'");
    }
    if (!def.polyline.empty()) return curves::polyline(def.polyline, n);
    if (!def.sample_ts.empty()) {
      return curves::sampled(def.sample_ts, def.sample_pts, n);
    }
    if (!def.samples_csv.empty()) {
      auto [ts, pts] = parse_samples_csv(def.samples_csv);
      return curves::sampled(ts, pts, n);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("curve: ") + e.what());
  }
  throw ConfigError("curve: needs builtin, polyline, samples, or samples_csv");
}

}  // namespace lqw
