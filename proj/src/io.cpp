#include "lqw/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lqw/errors.hpp"

namespace lqw {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string eigenvalue_curve_csv(const std::vector<EigenCurveRow>& rows) {
  std::ostringstream os;
  const std::size_t k = rows.empty() ? 0 : rows.front().mu.size();
  os << "kappa";
  for (std::size_t j = 0; j < k; ++j) os << ",mu_" << (j + 1);
  os << "\n";
  for (const auto& row : rows) {
    os << format_double(row.kappa);
    for (double m : row.mu) os << "," << format_double(m);
    os << "\n";
  }
  return os.str();
}

std::string bound_states_json(const std::vector<BoundState>& states) {
  json arr = json::array();
  for (const auto& st : states) {
    arr.push_back({{"kappa", st.kappa},
                   {"lambda", st.lambda},
                   {"branch", st.branch},
                   {"residual", st.residual},
                   {"multiplicity", st.multiplicity},
                   {"bracket", {st.bracket_lo, st.bracket_hi}}});
  }
  return arr.dump(2) + "\n";
}

std::string report_json(const SpectralReport& rep) {
  json j;
  j["curve"] = rep.curve_name;
  j["alpha"] = rep.alpha;
  j["ess_threshold"] = rep.ess_threshold;
  j["ess_diagnostic_only"] = rep.ess_diagnostic_only;
  j["bound"] = rep.bound;
  j["bound_kind"] = rep.bound_kind;
  if (rep.direct_bound) j["direct_bound"] = *rep.direct_bound;
  if (rep.composite_bound_value) j["composite_bound"] = *rep.composite_bound_value;
  if (rep.chord_arc >= 0.0) j["chord_arc"] = rep.chord_arc;
  json pieces = json::array();
  for (const auto& p : rep.pieces) {
    pieces.push_back({{"c", p.c}, {"extension", p.extension}});
  }
  j["pieces"] = pieces;
  json states = json::array();
  for (std::size_t i = 0; i < rep.states.size(); ++i) {
    const auto& st = rep.states[i];
    states.push_back({{"lambda", st.lambda},
                      {"kappa", st.kappa},
                      {"branch", st.branch},
                      {"residual", st.residual},
                      {"multiplicity", st.multiplicity},
                      {"pass", i < rep.verdicts.size() ? rep.verdicts[i] : true}});
  }
  j["states"] = states;
  j["all_pass"] = rep.all_pass;
  j["notes"] = rep.notes;
  return j.dump(2) + "\n";
}

SpectralReport parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("report JSON parse error: ") + e.what());
  }
  auto need = [&](const char* key) {
    if (!j.contains(key)) {
      throw ConfigError(std::string("report JSON missing field: ") + key);
    }
  };
  for (const char* key :
       {"alpha", "ess_threshold", "bound", "bound_kind", "pieces", "states"}) {
    need(key);
  }
  if (!j["pieces"].is_array() || !j["states"].is_array()) {
    throw ConfigError("report JSON: pieces/states must be arrays");
  }
  SpectralReport rep;
  rep.curve_name = j.value("curve", "");
  rep.alpha = j["alpha"].get<double>();
  rep.ess_threshold = j["ess_threshold"].get<double>();
  rep.ess_diagnostic_only = j.value("ess_diagnostic_only", false);
  rep.bound = j["bound"].get<double>();
  rep.bound_kind = j["bound_kind"].get<std::string>();
  if (j.contains("direct_bound")) rep.direct_bound = j["direct_bound"].get<double>();
  if (j.contains("composite_bound")) {
    rep.composite_bound_value = j["composite_bound"].get<double>();
  }
  rep.chord_arc = j.value("chord_arc", -1.0);
  for (const auto& p : j["pieces"]) {
    if (!p.contains("c") || !p.contains("extension")) {
      throw ConfigError("report JSON: piece missing c/extension");
    }
    rep.pieces.push_back({p["c"].get<double>(), p["extension"].get<std::string>()});
  }
  rep.all_pass = j.value("all_pass", true);
  for (const auto& s : j["states"]) {
    for (const char* key : {"lambda", "kappa", "residual", "pass"}) {
      if (!s.contains(key)) {
        throw ConfigError(std::string("report JSON: state missing ") + key);
      }
    }
    BoundState st;
    st.lambda = s["lambda"].get<double>();
    st.kappa = s["kappa"].get<double>();
    st.branch = s.value("branch", 0);
    st.residual = s["residual"].get<double>();
    st.multiplicity = s.value("multiplicity", 1);
    rep.states.push_back(std::move(st));
    rep.verdicts.push_back(s["pass"].get<bool>());
  }
  return rep;
}

std::string chord_arc_json(const ChordArcResult& r) {
  json j;
  j["c"] = r.c;
  j["pair_infimum"] = r.pair_infimum;
  j["diagonal_limit"] = r.diagonal_limit;
  j["argmin"] = {r.arg_s, r.arg_s2};
  j["cusp"] = r.cusp;
  j["self_intersection"] = r.self_intersection;
  j["level_estimates"] = r.level_estimates;
  return j.dump(2) + "\n";
}

std::string chord_arc_csv(const ChordArcResult& r) {
  std::ostringstream os;
  os << "c,arg_s,arg_s2,cusp,self_intersection\n";
  os << format_double(r.c) << "," << format_double(r.arg_s) << ","
     << format_double(r.arg_s2) << "," << (r.cusp ? 1 : 0) << ","
     << (r.self_intersection ? 1 : 0) << "\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path);
  f << content;
  if (!f) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace lqw
