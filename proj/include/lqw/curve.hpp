#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lqw/defaults.hpp"
#include "lqw/vec2.hpp"

namespace lqw {

enum class CurveKind { Loop, Infinite, Segment };

// Parametric description of a planar curve: evaluator, optional analytic
// derivative, domain, and the structural metadata the geometry code needs
// (smoothness breakpoints, known cusp parameters).
struct CurveSource {
  std::function<Vec2(double)> eval;
  std::function<Vec2(double)> deriv;  // empty -> finite differences where needed
  double t0 = 0.0;
  double t1 = 1.0;
  bool unit_speed = false;        // |gamma'(t)| == 1 identically
  bool piecewise_linear = false;  // exact chord arithmetic applies
  bool periodic = false;          // eval may be wrapped mod (t1 - t0)
  std::vector<double> breakpoints;     // interior params where C^1 fails
  std::vector<double> declared_cusps;  // known cusp params (builtin families)
  std::string name = "custom";

  Vec2 eval_wrapped(double t) const;
};

// A curve carries its source plus an arc-length parametrization: a cumulative
// length table per smooth piece and n+1 uniformly spaced arc samples.
class Curve {
 public:
  Curve() = default;

  // Arc-length reparametrization: builds the length table adaptively
  // (respecting source breakpoints) and resamples at spacing length/n.
  // Throws DegenerateCurveError when the arc-length integral does not settle
  // and DomainError for bad arguments (n < 8, loop failing to close, ...).
  static Curve build(std::shared_ptr<const CurveSource> src, CurveKind kind,
                     int n);

  CurveKind kind() const { return kind_; }
  double length() const { return length_; }
  // Arc half-width for truncated unbounded curves.
  double truncation() const { return 0.5 * length_; }
  int segments() const { return n_; }

  const std::vector<double>& sample_params() const { return sample_s_; }
  const std::vector<Vec2>& sample_points() const { return sample_p_; }

  // gamma(s) for arc-length s in [0, length]; loops wrap, open curves allow
  // a small tolerance past the ends.
  Vec2 point_at(double s) const;
  // Source parameter t(s).
  double source_param(double s) const;
  // Arc length s(t) of a source parameter.
  double arc_of_source_param(double t) const;

  const CurveSource& source() const { return *src_; }
  std::shared_ptr<const CurveSource> source_ptr() const { return src_; }

  // Kind-aware distance along the curve between two arc parameters.
  double geodesic(double s1, double s2) const;

  // Arc positions of interior source breakpoints / declared cusps.
  std::vector<double> breakpoint_arcs() const;
  std::vector<double> declared_cusp_arcs() const;

  // Sub-curve gamma([ta, tb]) in source parameters, re-parametrized by arc
  // length as a Segment. For loops tb may exceed the domain (wraps).
  Curve restrict_source(double ta, double tb, int n) const;

  bool unit_speed() const { return src_->unit_speed; }

 private:
  std::shared_ptr<const CurveSource> src_;
  CurveKind kind_ = CurveKind::Segment;
  int n_ = 0;
  double length_ = 0.0;
  // Cumulative arc-length table: t increasing, s(t) cumulative, derivative
  // cached where analytic.
  std::vector<double> tab_t_;
  std::vector<double> tab_s_;
  std::vector<double> sample_s_;
  std::vector<Vec2> sample_p_;

  double speed(double t) const;
  double piece_integral(double ta, double tb) const;
};

// Spec operation: uniform arc-length resampling of an existing curve.
Curve arc_length_reparametrize(const Curve& curve, int n);

// Kind-aware geodesic distance with domain validation.
double geodesic_distance(const Curve& curve, double s1, double s2);

// 1 - |gamma(s) - gamma(s')| / |s - s'|, in [0, 1]. Throws for s == s'.
double straightness_deficit(const Curve& curve, double s1, double s2);

// Least-squares diagnostic for the asymptotic-straightness decay model
// deficit ~ d [1 + |s+s'|^{2 mu}]^{-1/2} over the sector
// omega <= s/s' <= 1/omega (arc parameters measured from the curve center).
struct A2Fit {
  double d = 0.0;
  double mu = 0.0;
  bool consistent = false;  // fit supports mu > 1/2
  bool straight = false;    // deficits at rounding level everywhere
  double max_deficit = 0.0;
};
A2Fit fit_a2(const Curve& curve, double omega = defaults::kSectorOmega);

// Parameters where the raw-velocity norm vanishes and the local chord/arc
// ratio collapses. Builtin cusp families report exactly their known cusps.
std::vector<double> detect_cusps(const Curve& curve,
                                 double tol = defaults::kCuspVelocityTol);

// Builtin catalogue. Every builder returns an arc-length parametrized curve
// with n panels.
namespace curves {
Curve line(double T = defaults::kTruncation, int n = defaults::kNodes);
Curve angle(double beta, double T = defaults::kTruncation,
            int n = defaults::kNodes);
Curve circle(double R = 1.0, int n = defaults::kNodes);
Curve circular_arc(double R, double phi0, double phi1, int n = defaults::kNodes);
Curve cusp_family(int nn, int mm, double t_max = 1.0, int n = defaults::kNodes);
Curve spinode(double t_max = 1.0, int n = defaults::kNodes);
Curve rhamphoid(double t_max = 1.0, int n = defaults::kNodes);
Curve polyline(const std::vector<Vec2>& pts, int n = defaults::kNodes);
Curve sampled(const std::vector<double>& ts, const std::vector<Vec2>& pts,
              int n = defaults::kNodes);
Curve from_source(CurveSource src, CurveKind kind, int n = defaults::kNodes);
}  // namespace curves

}  // namespace lqw
