#pragma once

#include <string>
#include <vector>

#include "lqw/curve.hpp"
#include "lqw/defaults.hpp"

namespace lqw {

enum class DiagonalRule { LogSubtraction, PanelGauss };

// Arc-length midpoint quadrature for the integral operator, plus cached
// geometry: node positions and per-panel Gauss points (full panels for
// near-field product integration, half panels for the singular diagonal).
struct Discretization {
  enum class Domain { LoopPeriodic, TruncatedLine };

  std::vector<double> nodes;    // arc midpoints
  std::vector<double> weights;  // panel widths
  Domain domain = Domain::TruncatedLine;
  double total_length = 0.0;
  bool wrap = false;
  DiagonalRule rule = DiagonalRule::LogSubtraction;
  int gauss_order = defaults::kPanelGaussOrder;

  std::vector<Vec2> points;  // gamma(nodes)
  // Full-panel Gauss data, gauss_order entries per panel.
  std::vector<double> gauss_params;
  std::vector<Vec2> gauss_points;
  std::vector<double> gauss_weights;
  // Half-panel Gauss data (for the diagonal), gauss_order entries per panel
  // (order/2 per half).
  std::vector<double> half_params;
  std::vector<Vec2> half_points;
  std::vector<double> half_weights;
  // Geodesic distance is defined within one connected curve only; for
  // concatenated graph edges it is marked unavailable.
  bool geodesic_valid = true;

  int size() const { return static_cast<int>(nodes.size()); }
  double min_spacing() const;

  static Discretization build(const Curve& curve, int n,
                              DiagonalRule rule = DiagonalRule::LogSubtraction,
                              int order = defaults::kPanelGaussOrder);
  // Concatenated discretization over several disjoint curve pieces (graph
  // edges). Only the plane-distance kernel applies.
  static Discretization concat(const std::vector<Curve>& pieces,
                               int n_per_piece,
                               DiagonalRule rule = DiagonalRule::LogSubtraction,
                               int order = defaults::kPanelGaussOrder);

  double geodesic(double s1, double s2) const;
};

// Dense symmetric matrix of the discretized operator at fixed (alpha, kappa).
struct BSMatrix {
  int n = 0;
  double alpha = 0.0;
  double kappa = 0.0;
  std::vector<double> a;        // row-major n*n
  std::vector<double> weights;  // quadrature weights (for norm bounds)

  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Symmetrized Nystrom assembly of the kernel (alpha/2pi) K0(kappa |x - y|):
// far pairs use point values sqrt(w_i w_j) K0, near pairs (within a
// kappa-adaptive band) use panel product integration, and the diagonal panel
// integrates its logarithmic singularity per the chosen rule.
BSMatrix assemble_bs_matrix(double alpha, double kappa,
                            const Discretization& disc);

// Comparison operator with kernel (alpha/2pi) K0(kappa c dist_Gamma(s, s')),
// assembled with the same panel rules; entrywise dominates the plane-distance
// matrix when c <= c(Gamma).
BSMatrix assemble_comparison_matrix(double c, double alpha, double kappa,
                                    const Discretization& disc);

// Schur bound sqrt(sup_i sum_j K_ij w_j * sup_j sum_i K_ij w_i) on the
// kernel-times-weight form; an upper bound for the operator norm.
double schur_row_bound(const BSMatrix& b);

// Exact norm of the comparison operator on the full line: alpha/(2 c kappa).
double bs_norm_line_analytic(double alpha, double c, double kappa);

struct EigenPairs {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // matching, normalized
};

// Top-k eigenpairs: dense eigendecomposition up to the cutoff, Lanczos with
// full reorthogonalization beyond it.
EigenPairs top_eigenpairs(const BSMatrix& b, int k,
                          int dense_cutoff = defaults::kDenseEigenCutoff);

struct LargestEig {
  double value = 0.0;
  std::vector<double> vector;
  int iterations = 0;
};
// Largest eigenvalue to ~1e-10; throws ConvergenceError (carrying the last
// Rayleigh quotient) if the Krylov iteration stalls.
LargestEig largest_eigenvalue(const BSMatrix& b);

struct EigenCurveRow {
  double kappa = 0.0;
  std::vector<double> mu;
};
std::vector<EigenCurveRow> eigenvalue_curve(double alpha,
                                            const std::vector<double>& kappas,
                                            const Discretization& disc,
                                            int top_k);

struct BoundState {
  double kappa = 0.0;
  double lambda = 0.0;  // -kappa^2
  int branch = 0;
  double residual = 0.0;  // |mu(kappa) - 1|
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int multiplicity = 1;
  std::vector<double> eigenvector;
};

struct BoundStateSearch {
  std::vector<BoundState> states;  // sorted by lambda ascending
  std::vector<std::string> notes;  // per-branch bracket diagnostics
};

// Locates mu_j(kappa) = 1 per branch by bisection (mu_j strictly decreasing
// in kappa). Branches that never cross 1 on [kappa_min, kappa_max] yield a
// note, not an error.
BoundStateSearch find_bound_states(double alpha, double kappa_min,
                                   double kappa_max,
                                   const Discretization& disc, int top_k,
                                   double mu_tol = defaults::kRootResidualTol,
                                   double bracket_floor =
                                       defaults::kBracketFloor);

// Worker count for row-parallel assembly (default 1; set from the CLI).
void set_compute_threads(int k);
int compute_threads();

}  // namespace lqw
