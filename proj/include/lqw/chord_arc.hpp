#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lqw/curve.hpp"
#include "lqw/defaults.hpp"

namespace lqw {

// Result of the chord-arc constant estimation
//   c(Gamma) = inf |gamma(s) - gamma(s')| / dist_Gamma(s, s').
// The headline value c is 0 when a cusp or self-intersection is present.
// level_estimates[k] is the running estimate after refinement level k
// (level 0 = coarse grid); it combines the off-diagonal pair infimum with a
// near-diagonal limit estimated from the turning of one-sided tangents on a
// window that shrinks with the level.
struct ChordArcResult {
  double c = 0.0;
  double pair_infimum = std::numeric_limits<double>::infinity();
  double diagonal_limit = 1.0;
  std::vector<double> level_estimates;
  double arg_s = 0.0;
  double arg_s2 = 0.0;
  bool cusp = false;
  bool self_intersection = false;
};

struct ChordArcOptions {
  double diag_floor_factor = defaults::kDiagFloorFactor;
  double self_intersect_chord = defaults::kSelfIntersectChord;
  double self_intersect_geo_factor = defaults::kSelfIntersectGeoFactor;
  bool run_cusp_detection = true;
};

ChordArcResult chord_arc_constant(const Curve& curve,
                                  int m = defaults::kChordArcGrid,
                                  int r = defaults::kRefineLevels,
                                  const ChordArcOptions& opt = {});

// --- decomposition into pieces with extensions (composite bound input) ---

struct DecompositionPiece {
  Curve piece;
  std::optional<Curve> extension;
  double c = -1.0;  // chord-arc constant of the extension, once computed
  std::string label;
};

struct Decomposition {
  std::vector<DecompositionPiece> pieces;
};

// Cut the curve at the given source parameters (strictly increasing, interior).
// Pieces partition the parent domain; for loops the last piece wraps around.
Decomposition split_at(const Curve& curve, const std::vector<double>& params,
                       int n_per_piece = defaults::kNodes);

struct ExtensionSpec {
  enum class Strategy { TangentRays, CloseLoop, Explicit } strategy =
      Strategy::TangentRays;
  std::optional<Curve> explicit_curve;
  double ray_truncation = 0.0;  // 0 -> max(default T, 2 * piece length)
};

// Extends a piece to a curve with positive chord-arc constant: straight
// tangent rays at both ends (unbounded extension) or a tangent-continuous
// biarc closure (loop extension). Recomputes c on the extension and throws
// ExtensionError when the extension self-intersects or c stays at the floor.
Curve extend_piece(const Curve& piece, const ExtensionSpec& spec,
                   int n = defaults::kNodes,
                   const std::string& piece_label = "piece");

}  // namespace lqw
