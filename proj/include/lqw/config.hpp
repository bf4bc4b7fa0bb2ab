#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lqw/curve.hpp"
#include "lqw/spectral_bounds.hpp"

namespace lqw {

enum class Command { CConst, Spectrum, Bound, Sweep, SelftestK0 };
enum class OutputFormat { CSV, JSON };

// Declarative curve description (the nested record of the config file).
struct CurveDef {
  std::string builtin;  // catalogue name; empty for polyline/sampled input
  std::map<std::string, double> params;
  std::vector<Vec2> polyline;
  std::vector<double> sample_ts;
  std::vector<Vec2> sample_pts;
  std::string samples_csv;  // path to a CSV with columns t,x,y
  double truncation_T = defaults::kTruncation;
  int samples_n = defaults::kNodes;
};

struct SweepDef {
  std::string param;  // "beta" | "alpha" | "kappa" | "n"
  std::vector<double> values;
  Command command = Command::CConst;  // inner command for beta/alpha/n sweeps
};

struct RunConfig {
  Command command = Command::Bound;
  std::optional<CurveDef> curve;
  std::optional<LeakyGraph> graph;
  double alpha = 1.0;
  SolverSettings solver;
  std::optional<SweepDef> sweep;
};

// Parse and validate; throws ConfigError with field diagnostics.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

// Instantiate a curve from its definition (builtin catalogue dispatch).
Curve make_curve(const CurveDef& def);

}  // namespace lqw
