#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqw/birman_schwinger.hpp"
#include "lqw/chord_arc.hpp"
#include "lqw/curve.hpp"

namespace lqw {

// inf sigma(H) >= -alpha^2 / (4 c^2). Throws BoundUndefinedError for c <= 0
// (cusp or self-intersection present).
double single_bound(double alpha, double c);

// inf sigma(H) >= -N * sum_i alpha^2 / (4 c_i^2), N = |c_list|.
double composite_bound(double alpha, const std::vector<double>& c_list);

struct EssentialSpectrumResult {
  double threshold = 0.0;
  // Set on unbounded curves whose asymptotic straightness was not verified:
  // the threshold is then a diagnostic, only the discrete spectrum is bounded.
  bool diagnostic_only = false;
};
EssentialSpectrumResult essential_spectrum(CurveKind kind, double alpha,
                                           bool a2_ok);

struct PieceReport {
  double c = 0.0;
  std::string extension;
};

struct SpectralReport {
  std::string curve_name;
  double alpha = 0.0;
  double ess_threshold = 0.0;
  bool ess_diagnostic_only = false;
  double bound = 0.0;       // operative (tightest available) lower bound
  std::string bound_kind;   // "single" | "composite" | "graph"
  std::optional<double> direct_bound;
  std::optional<double> composite_bound_value;
  double chord_arc = -1.0;  // headline c of the direct route, -1 when unused
  std::vector<PieceReport> pieces;
  std::vector<BoundState> states;
  std::vector<bool> verdicts;  // lambda >= bound - slack and lambda < ess
  bool all_pass = true;
  std::vector<std::string> notes;
};

// Metric graph: segments meeting only at shared endpoints.
struct LeakyGraph {
  struct Edge {
    int from = -1;
    int to = -1;
    std::vector<Vec2> waypoints;  // optional interior polyline points
  };
  std::vector<Vec2> vertices;
  std::vector<Edge> edges;
};

struct SolverSettings {
  int n = defaults::kNodes;
  int top_k = defaults::kTopBranches;
  int grid_m = defaults::kChordArcGrid;
  int refine_r = defaults::kRefineLevels;
  std::optional<double> kappa_min;
  std::optional<double> kappa_max;
  DiagonalRule rule = DiagonalRule::LogSubtraction;
  bool find_states = true;
  ExtensionSpec::Strategy extension = ExtensionSpec::Strategy::TangentRays;
};

// End-to-end pipeline for a single curve: chord-arc constant (or cusp
// decomposition), bounds, essential spectrum, bound states, verdicts.
SpectralReport verify_report(const Curve& curve, double alpha,
                             const SolverSettings& settings = {});

// Quantum-graph pipeline: extends every edge, computes per-edge chord-arc
// constants, applies the composite bound with N = edge count, and (optionally)
// computes bound states of the whole graph.
SpectralReport graph_bound(const LeakyGraph& graph, double alpha,
                           const SolverSettings& settings = {});

// Edge list -> curves (validates that edges meet only at shared endpoints).
std::vector<Curve> graph_edge_curves(const LeakyGraph& graph, int n_per_edge);

}  // namespace lqw
