#include "lqw/chord_arc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lqw/errors.hpp"
#include "lqw/simd/kernels.hpp"

namespace lqw {

namespace {

double wrap_param(double s, double L) {
  double u = std::fmod(s, L);
  if (u < 0.0) u += L;
  return u;
}

// sin(beta/2) for the angle beta between the one-sided chord directions
// u, v away from the point: sqrt((1 - cos beta)/2). Straight point -> 1,
// corner -> sin(beta/2), cusp -> 0.
double turn_limit_at(const Curve& curve, double sh, double w) {
  const double L = curve.length();
  const bool loop = curve.kind() == CurveKind::Loop;
  double weff = w;
  if (!loop) {
    weff = std::min({w, 0.9 * sh, 0.9 * (L - sh)});
    if (weff <= 64.0 * std::numeric_limits<double>::epsilon() * L) return 1.0;
  }
  const Vec2 p = curve.point_at(loop ? wrap_param(sh, L) : sh);
  const Vec2 u = (curve.point_at(loop ? wrap_param(sh - weff, L) : sh - weff) - p)
                     .normalized();
  const Vec2 v = (curve.point_at(loop ? wrap_param(sh + weff, L) : sh + weff) - p)
                     .normalized();
  const double cosb = std::clamp(u.dot(v), -1.0, 1.0);
  return std::sqrt(std::max(0.0, 0.5 * (1.0 - cosb)));
}

struct GridScan {
  double ratio2 = std::numeric_limits<double>::infinity();
  double sa = 0.0, sb = 0.0;
  double sep_chord2 = std::numeric_limits<double>::infinity();
};

// Cross-scan two small window grids around the running argmin.
GridScan scan_windows(const Curve& curve, const std::vector<double>& sa,
                      const std::vector<double>& sb, double eps_floor,
                      double sep_gate) {
  const double L = curve.length();
  const bool wrap = curve.kind() == CurveKind::Loop;
  std::vector<Vec2> pa(sa.size()), pb(sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) pa[i] = curve.point_at(sa[i]);
  for (std::size_t i = 0; i < sb.size(); ++i) pb[i] = curve.point_at(sb[i]);
  GridScan best;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      double geo = std::fabs(sa[i] - sb[j]);
      if (wrap) {
        geo = std::fmod(geo, L);
        geo = std::min(geo, L - geo);
      }
      const Vec2 d = pa[i] - pb[j];
      const double chord2 = d.norm2();
      if (geo >= eps_floor) {
        const double r2 = chord2 / (geo * geo);
        if (r2 < best.ratio2) {
          best.ratio2 = r2;
          best.sa = sa[i];
          best.sb = sb[j];
        }
      }
      if (geo > sep_gate && chord2 < best.sep_chord2) {
        best.sep_chord2 = chord2;
      }
    }
  }
  return best;
}

std::vector<double> window_grid(double center, double halfw, int pts) {
  std::vector<double> g(pts);
  for (int i = 0; i < pts; ++i) {
    g[i] = center - halfw + 2.0 * halfw * i / (pts - 1);
  }
  return g;
}

}  // namespace

ChordArcResult chord_arc_constant(const Curve& curve, int m, int r,
                                  const ChordArcOptions& opt) {
  if (m < 16) throw DomainError("chord_arc_constant: grid m must be >= 16");
  if (r < 0) throw DomainError("chord_arc_constant: refinement levels r >= 0");

  const double L = curve.length();
  const bool wrap = curve.kind() == CurveKind::Loop;
  const double eps_floor = opt.diag_floor_factor * L;
  const double sep_gate = opt.self_intersect_geo_factor * L;

  ChordArcResult res;

  // Coarse pair grid.
  const int npts = wrap ? m : m + 1;
  std::vector<double> xs(npts), ys(npts), ss(npts);
  for (int k = 0; k < npts; ++k) {
    const double s = std::min(L, k * (L / m));
    const Vec2 p = curve.point_at(s);
    xs[k] = p.x;
    ys[k] = p.y;
    ss[k] = s;
  }
  const auto& kern = simd::active_kernels();
  const simd::PairMinResult scan = kern.pair_ratio_min(
      xs.data(), ys.data(), ss.data(), npts, wrap, L, eps_floor, sep_gate);

  if (std::sqrt(scan.min_sep_chord_sq) < opt.self_intersect_chord) {
    res.self_intersection = true;
  }

  // Diagonal hotspots: source corners, known and detected cusps, loop seam.
  std::vector<double> hotspots = curve.breakpoint_arcs();
  for (double s : curve.declared_cusp_arcs()) hotspots.push_back(s);
  if (opt.run_cusp_detection) {
    for (double t : detect_cusps(curve)) {
      hotspots.push_back(curve.arc_of_source_param(t));
      res.cusp = true;
    }
  }
  if (wrap) hotspots.push_back(0.0);
  std::sort(hotspots.begin(), hotspots.end());
  hotspots.erase(std::unique(hotspots.begin(), hotspots.end(),
                             [L](double a, double b) {
                               return std::fabs(a - b) < 1e-12 * L;
                             }),
                 hotspots.end());

  auto diag_estimate = [&](double w) {
    double est = 1.0;
    for (double sh : hotspots) est = std::min(est, turn_limit_at(curve, sh, w));
    return est;
  };

  double pair_min =
      scan.any_pair ? std::sqrt(scan.min_ratio_sq) : 1.0;
  double best_sa = scan.any_pair ? ss[scan.arg_i] : 0.0;
  double best_sb = scan.any_pair ? ss[scan.arg_j] : 0.0;

  const double h0 = L / m;
  double turn_w = h0;
  double running = std::min(pair_min, diag_estimate(turn_w));
  res.level_estimates.push_back(running);
  res.diagonal_limit = diag_estimate(turn_w);

  double min_sep_chord = std::sqrt(scan.min_sep_chord_sq);
  double halfw = h0;
  for (int level = 1; level <= r; ++level) {
    if (scan.any_pair) {
      auto ga = window_grid(best_sa, halfw, 17);
      auto gb = window_grid(best_sb, halfw, 17);
      if (!wrap) {
        for (auto& v : ga) v = std::clamp(v, 0.0, L);
        for (auto& v : gb) v = std::clamp(v, 0.0, L);
      }
      const GridScan ref = scan_windows(curve, ga, gb, eps_floor, sep_gate);
      if (ref.ratio2 < pair_min * pair_min) {
        pair_min = std::sqrt(ref.ratio2);
        best_sa = ref.sa;
        best_sb = ref.sb;
      }
      min_sep_chord = std::min(min_sep_chord, std::sqrt(ref.sep_chord2));
      halfw /= 8.0;
    }
    turn_w = h0 / std::pow(4.0, level);
    res.diagonal_limit = diag_estimate(turn_w);
    running = std::min({running, pair_min, res.diagonal_limit});
    res.level_estimates.push_back(running);
  }

  res.pair_infimum = pair_min;
  res.arg_s = wrap ? wrap_param(best_sa, L) : best_sa;
  res.arg_s2 = wrap ? wrap_param(best_sb, L) : best_sb;
  if (min_sep_chord < opt.self_intersect_chord) res.self_intersection = true;

  if (res.cusp || res.self_intersection) {
    res.c = 0.0;
    return res;
  }
  double c = std::min(res.level_estimates.back(), 1.0);
  // The true field is bounded by 1 (chord <= arc). Coordinates carry absolute
  // rounding at the curve scale, so ratios at the eps_diag separation floor
  // are only trustworthy to ~eps/diag_floor_factor; anything this close to 1
  // is a straight line at working precision.
  if (c > 1.0 - 1e-11) c = 1.0;
  res.c = c;
  return res;
}

Decomposition split_at(const Curve& curve, const std::vector<double>& params,
                       int n_per_piece) {
  const CurveSource& src = curve.source();
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0 && !(params[i] > params[i - 1])) {
      throw DomainError("split_at: parameters must be strictly increasing");
    }
    if (!(params[i] > src.t0) || !(params[i] < src.t1)) {
      throw DomainError("split_at: parameter outside the source domain");
    }
  }
  Decomposition dec;
  if (curve.kind() == CurveKind::Loop) {
    if (params.empty()) {
      throw DomainError("split_at: a loop needs at least one cut");
    }
    const double period = src.t1 - src.t0;
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double ta = params[i];
      const double tb =
          (i + 1 < params.size()) ? params[i + 1] : params.front() + period;
      DecompositionPiece p;
      p.piece = curve.restrict_source(ta, tb, n_per_piece);
      p.label = "piece " + std::to_string(i + 1);
      dec.pieces.push_back(std::move(p));
    }
    return dec;
  }
  std::vector<double> knots = {src.t0};
  knots.insert(knots.end(), params.begin(), params.end());
  knots.push_back(src.t1);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    DecompositionPiece p;
    p.piece = curve.restrict_source(knots[i], knots[i + 1], n_per_piece);
    p.label = "piece " + std::to_string(i + 1);
    dec.pieces.push_back(std::move(p));
  }
  return dec;
}

namespace {

struct ArcSeg {
  Vec2 p0;
  Vec2 tan0;
  double curv = 0.0;
  double len = 0.0;

  Vec2 at(double sig) const {
    if (std::fabs(curv) < 1e-14) return p0 + tan0 * sig;
    const double th = curv * sig;
    const Vec2 n0 = tan0.perp();
    return p0 + tan0 * (std::sin(th) / curv) + n0 * ((1.0 - std::cos(th)) / curv);
  }
  Vec2 tangent_at(double sig) const {
    const double th = curv * sig;
    const Vec2 n0 = tan0.perp();
    return tan0 * std::cos(th) + n0 * std::sin(th);
  }
};

ArcSeg arc_through(const Vec2& p, const Vec2& tan, const Vec2& q,
                   const std::string& label) {
  ArcSeg a;
  a.p0 = p;
  a.tan0 = tan;
  const Vec2 chord = q - p;
  const double e = chord.norm();
  if (e < 1e-300) {
    a.len = 0.0;
    return a;
  }
  const Vec2 m = chord * (1.0 / e);
  const double psi = std::atan2(tan.cross(m), tan.dot(m));
  if (std::fabs(psi) > 0.5 * 3.14159265358979323846 + 1e-9) {
    throw ExtensionError("closure arc turns by more than a half-circle", label);
  }
  const double sinc = std::fabs(psi) < 1e-8 ? 1.0 : std::sin(psi) / psi;
  a.len = e / sinc;
  a.curv = 2.0 * psi / a.len;
  return a;
}

// Tangent-continuous biarc from (p0, t0) to (p1, t1); junction chosen with
// equal chord parameters.
std::pair<ArcSeg, ArcSeg> biarc(const Vec2& p0, const Vec2& t0, const Vec2& p1,
                                const Vec2& t1, const std::string& label) {
  const Vec2 v = p1 - p0;
  const double vv = v.norm2();
  if (vv < 1e-28) {
    throw ExtensionError("piece endpoints coincide; nothing to close", label);
  }
  const Vec2 tsum = t0 + t1;
  const double vt = v.dot(tsum);
  const double two = 2.0 * (1.0 - t0.dot(t1));
  double k;
  if (two < 1e-12) {
    if (vt <= 1e-12 * std::sqrt(vv)) {
      throw ExtensionError("degenerate closure (antiparallel tangents)", label);
    }
    k = vv / (2.0 * vt);
  } else {
    k = (-vt + std::sqrt(vt * vt + two * vv)) / two;
  }
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ExtensionError("no valid biarc closure", label);
  }
  const Vec2 w = v - tsum * k;
  Vec2 u;
  const double wn = w.norm();
  if (wn > 1e-9 * std::sqrt(vv)) {
    u = w * (1.0 / wn);
  } else if (tsum.norm() > 1e-9) {
    u = tsum.normalized();
  } else {
    u = v.normalized();
  }
  const Vec2 junction = p0 + (t0 + u) * k;
  ArcSeg a1 = arc_through(p0, t0, junction, label);
  ArcSeg a2 = arc_through(junction, u, p1, label);
  const double scale = std::sqrt(vv);
  if ((a2.at(a2.len) - p1).norm() > 1e-7 * std::max(1.0, scale)) {
    throw ExtensionError("biarc closure failed to land on the start point",
                         label);
  }
  return {a1, a2};
}

}  // namespace

Curve extend_piece(const Curve& piece, const ExtensionSpec& spec, int n,
                   const std::string& piece_label) {
  const double lp = piece.length();
  auto body = std::make_shared<Curve>(piece);
  const double delta = 1e-7 * std::max(1.0, lp);
  const Vec2 p_start = body->point_at(0.0);
  const Vec2 p_end = body->point_at(lp);
  const Vec2 d_start = (body->point_at(delta) - p_start).normalized();
  const Vec2 d_end = (p_end - body->point_at(lp - delta)).normalized();

  Curve ext;
  switch (spec.strategy) {
    case ExtensionSpec::Strategy::TangentRays: {
      const double tray = spec.ray_truncation > 0.0
                              ? spec.ray_truncation
                              : std::max(defaults::kTruncation, 2.0 * lp);
      CurveSource s;
      s.eval = [body, lp, p_start, p_end, d_start, d_end](double tau) {
        if (tau < 0.0) return p_start + d_start * tau;
        if (tau > lp) return p_end + d_end * (tau - lp);
        return body->point_at(tau);
      };
      s.t0 = -tray;
      s.t1 = lp + tray;
      s.unit_speed = true;
      s.breakpoints = {0.0, lp};
      for (double b : body->breakpoint_arcs()) s.breakpoints.push_back(b);
      std::sort(s.breakpoints.begin(), s.breakpoints.end());
      s.name = piece_label + "+rays";
      ext = curves::from_source(std::move(s), CurveKind::Infinite, n);
      break;
    }
    case ExtensionSpec::Strategy::CloseLoop: {
      auto [a1, a2] = biarc(p_end, d_end, p_start, d_start, piece_label);
      const double l1 = a1.len, l2 = a2.len;
      CurveSource s;
      s.eval = [body, lp, a1, a2, l1](double tau) {
        if (tau <= lp) return body->point_at(tau);
        if (tau <= lp + l1) return a1.at(tau - lp);
        return a2.at(tau - lp - l1);
      };
      s.t0 = 0.0;
      s.t1 = lp + l1 + l2;
      s.unit_speed = true;
      s.periodic = true;
      s.breakpoints = {lp, lp + l1};
      for (double b : body->breakpoint_arcs()) s.breakpoints.push_back(b);
      std::sort(s.breakpoints.begin(), s.breakpoints.end());
      s.name = piece_label + "+loop";
      ext = curves::from_source(std::move(s), CurveKind::Loop, n);
      break;
    }
    case ExtensionSpec::Strategy::Explicit: {
      if (!spec.explicit_curve) {
        throw ExtensionError("explicit extension missing its curve",
                             piece_label);
      }
      ext = *spec.explicit_curve;
      // Containment: every piece sample must lie near the extension.
      for (const Vec2& p : piece.sample_points()) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const Vec2& q : ext.sample_points()) {
          dmin = std::min(dmin, (p - q).norm());
        }
        if (dmin > 2.0 * ext.length() / ext.segments()) {
          throw ExtensionError("explicit extension does not contain the piece",
                               piece_label);
        }
      }
      break;
    }
  }

  const ChordArcResult cc = chord_arc_constant(ext, 256, 6);
  if (cc.self_intersection) {
    throw ExtensionError("extension self-intersects", piece_label);
  }
  if (!(cc.c > defaults::kChordArcFloor)) {
    throw ExtensionError("extension has vanishing chord-arc constant",
                         piece_label);
  }
  return ext;
}

}  // namespace lqw
