#include "lqw/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lqw/detail/gauss.hpp"
#include "lqw/errors.hpp"

namespace lqw {

namespace {

constexpr double kPi = std::numbers::pi;

double ipow(double x, int p) {
  double r = 1.0, b = x;
  for (int e = p; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

}  // namespace

Vec2 CurveSource::eval_wrapped(double t) const {
  if (periodic) {
    const double per = t1 - t0;
    double u = std::fmod(t - t0, per);
    if (u < 0.0) u += per;
    return eval(t0 + u);
  }
  return eval(std::clamp(t, t0, t1));
}

double Curve::speed(double t) const {
  if (src_->unit_speed) return 1.0;
  if (src_->deriv) return src_->deriv(t).norm();
  const double h = 1e-7 * std::max(1.0, src_->t1 - src_->t0);
  return (src_->eval_wrapped(t + h) - src_->eval_wrapped(t - h)).norm() /
         (2.0 * h);
}

double Curve::piece_integral(double ta, double tb) const {
  return detail::gauss(detail::kGL12, ta, tb,
                       [this](double t) { return speed(t); });
}

namespace {

// Adaptive arc-length accumulation over one smooth piece. Records table
// entries at every accepted leaf midpoint/endpoint.
struct ArcBuilder {
  const std::function<double(double)>& speed;
  double rel_tol;
  double piece_scale;  // rough piece length for error scaling
  double piece_width;
  std::vector<double>* ts;
  std::vector<double>* ss;
  double acc;

  double integ(double a, double b) const {
    return detail::gauss(detail::kGL12, a, b, speed);
  }

  void refine(double a, double b, double iab, int depth) {
    const double m = 0.5 * (a + b);
    const double i1 = integ(a, m);
    const double i2 = integ(m, b);
    const double budget =
        rel_tol * piece_scale * ((b - a) / piece_width) + 1e-300;
    if (std::fabs(i1 + i2 - iab) <= budget) {
      acc += i1;
      ts->push_back(m);
      ss->push_back(acc);
      acc += i2;
      ts->push_back(b);
      ss->push_back(acc);
      return;
    }
    if (depth >= defaults::kArcLengthMaxDepth) {
      throw DegenerateCurveError(
          "arc length integral does not converge under adaptive refinement "
          "(non-rectifiable or wildly oscillating curve)");
    }
    refine(a, m, i1, depth + 1);
    refine(m, b, i2, depth + 1);
  }
};

}  // namespace

Curve Curve::build(std::shared_ptr<const CurveSource> src, CurveKind kind,
                   int n) {
  if (!src || !src->eval) throw DomainError("curve source has no evaluator");
  if (n < 8) throw DomainError("node count must be at least 8");
  if (!(src->t1 > src->t0)) throw DomainError("empty parameter domain");

  Curve c;
  c.src_ = std::move(src);
  c.kind_ = kind;
  c.n_ = n;

  const CurveSource& s = *c.src_;

  if (s.unit_speed && !s.piecewise_linear) {
    c.tab_t_ = {s.t0, s.t1};
    c.tab_s_ = {0.0, s.t1 - s.t0};
    c.length_ = s.t1 - s.t0;
  } else if (s.piecewise_linear) {
    // Vertex table with exact cumulative chords.
    std::vector<double> knots = {s.t0};
    for (double b : s.breakpoints) {
      if (b > s.t0 && b < s.t1) knots.push_back(b);
    }
    knots.push_back(s.t1);
    std::sort(knots.begin(), knots.end());
    c.tab_t_ = {knots.front()};
    c.tab_s_ = {0.0};
    double acc = 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i) {
      acc += (s.eval(knots[i]) - s.eval(knots[i - 1])).norm();
      c.tab_t_.push_back(knots[i]);
      c.tab_s_.push_back(acc);
    }
    c.length_ = acc;
  } else {
    std::vector<double> knots = {s.t0};
    for (double b : s.breakpoints) {
      if (b > s.t0 && b < s.t1) knots.push_back(b);
    }
    knots.push_back(s.t1);
    std::sort(knots.begin(), knots.end());

    auto speed_fn = [&c](double t) { return c.speed(t); };
    std::function<double(double)> speed_ref = speed_fn;

    c.tab_t_ = {knots.front()};
    c.tab_s_ = {0.0};
    double acc = 0.0;
    const double rel_tol =
        c.src_->deriv ? defaults::kArcLengthRelTol : 1e-9;
    for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
      const double a = knots[p], b = knots[p + 1];
      ArcBuilder builder{speed_ref, rel_tol, 0.0, b - a, &c.tab_t_, &c.tab_s_,
                         acc};
      builder.piece_scale =
          std::max(builder.integ(a, b), 1e-3 * (b - a));
      // Seed with 64 uniform leaves, then let each converge.
      const int seed = 64;
      for (int k = 0; k < seed; ++k) {
        const double la = a + (b - a) * k / seed;
        const double lb = a + (b - a) * (k + 1) / seed;
        builder.refine(la, lb, builder.integ(la, lb), 0);
      }
      acc = builder.acc;
    }
    c.length_ = acc;
  }

  if (!(c.length_ > 0.0) || !std::isfinite(c.length_)) {
    throw DegenerateCurveError("curve has zero or non-finite length");
  }

  if (kind == CurveKind::Loop) {
    const double gap = (s.eval(s.t0) - s.eval(s.t1)).norm();
    if (gap > 1e-9 * std::max(1.0, c.length_)) {
      throw DomainError("loop curve does not close");
    }
  }

  const double h = c.length_ / n;
  c.sample_s_.resize(n + 1);
  c.sample_p_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    double sk = std::min(k * h, c.length_);
    c.sample_s_[k] = sk;
    c.sample_p_[k] = c.point_at(sk);
  }
  return c;
}

double Curve::source_param(double s) const {
  const CurveSource& src = *src_;
  if (kind_ == CurveKind::Loop) {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
  } else {
    s = std::clamp(s, 0.0, length_);
  }
  if (src.unit_speed && !src.piecewise_linear) return src.t0 + s;

  // Bracket in the cumulative table.
  auto it = std::upper_bound(tab_s_.begin(), tab_s_.end(), s);
  std::size_t k = (it == tab_s_.begin())
                      ? 0
                      : static_cast<std::size_t>(it - tab_s_.begin()) - 1;
  if (k + 1 >= tab_t_.size()) k = tab_t_.size() - 2;
  double ta = tab_t_[k], tb = tab_t_[k + 1];
  double sa = tab_s_[k], sb = tab_s_[k + 1];

  if (src.piecewise_linear) {
    if (sb <= sa) return ta;
    return ta + (s - sa) * (tb - ta) / (sb - sa);
  }

  // Safeguarded Newton on g(t) = sa + int_ta^t speed - s.
  double lo = ta, hi = tb;
  double t = (sb > sa) ? ta + (s - sa) * (tb - ta) / (sb - sa)
                       : 0.5 * (ta + tb);
  for (int iter = 0; iter < 60; ++iter) {
    const double g = sa + piece_integral(ta, t) - s;
    if (std::fabs(g) <= 1e-14 * std::max(1.0, length_)) break;
    if (g > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    const double v = speed(t);
    double tn = (v > 1e-14) ? t - g / v : 0.5 * (lo + hi);
    if (!(tn > lo) || !(tn < hi)) tn = 0.5 * (lo + hi);
    if (std::fabs(tn - t) <= 1e-16 * std::max(1.0, std::fabs(t))) {
      t = tn;
      break;
    }
    t = tn;
  }
  return t;
}

double Curve::arc_of_source_param(double t) const {
  const CurveSource& src = *src_;
  if (src.unit_speed && !src.piecewise_linear) return t - src.t0;
  auto it = std::upper_bound(tab_t_.begin(), tab_t_.end(), t);
  std::size_t k = (it == tab_t_.begin())
                      ? 0
                      : static_cast<std::size_t>(it - tab_t_.begin()) - 1;
  if (k + 1 >= tab_t_.size()) k = tab_t_.size() - 2;
  if (src.piecewise_linear) {
    const double ta = tab_t_[k], tb = tab_t_[k + 1];
    const double w = (tb > ta) ? (t - ta) / (tb - ta) : 0.0;
    return tab_s_[k] + w * (tab_s_[k + 1] - tab_s_[k]);
  }
  return tab_s_[k] + piece_integral(tab_t_[k], t);
}

Vec2 Curve::point_at(double s) const {
  return src_->eval_wrapped(source_param(s));
}

double Curve::geodesic(double s1, double s2) const {
  double d = std::fabs(s1 - s2);
  if (kind_ == CurveKind::Loop) d = std::min(d, length_ - d);
  return d;
}

std::vector<double> Curve::breakpoint_arcs() const {
  std::vector<double> out;
  for (double b : src_->breakpoints) {
    if (b > src_->t0 && b < src_->t1) out.push_back(arc_of_source_param(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> Curve::declared_cusp_arcs() const {
  std::vector<double> out;
  for (double b : src_->declared_cusps) {
    if (b > src_->t0 && b < src_->t1) out.push_back(arc_of_source_param(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Curve Curve::restrict_source(double ta, double tb, int n) const {
  if (!(tb > ta)) throw DomainError("restrict: requires tb > ta");
  const auto parent = src_;
  const bool wraps = tb > parent->t1;
  if (wraps && kind_ != CurveKind::Loop) {
    throw DomainError("restrict: parameters outside the source domain");
  }
  auto piece = std::make_shared<CurveSource>();
  piece->eval = [parent](double t) { return parent->eval_wrapped(t); };
  if (parent->deriv) {
    auto deriv = parent->deriv;
    const double t0 = parent->t0, per = parent->t1 - parent->t0;
    const bool periodic = parent->periodic;
    piece->deriv = [deriv, t0, per, periodic](double t) {
      if (periodic) {
        double u = std::fmod(t - t0, per);
        if (u < 0.0) u += per;
        return deriv(t0 + u);
      }
      return deriv(t);
    };
  }
  piece->t0 = ta;
  piece->t1 = tb;
  piece->unit_speed = parent->unit_speed;
  piece->piecewise_linear = parent->piecewise_linear;
  piece->periodic = false;
  for (double b : parent->breakpoints) {
    for (double shift : {0.0, parent->t1 - parent->t0}) {
      const double bb = b + shift;
      if (bb > ta && bb < tb) piece->breakpoints.push_back(bb);
    }
  }
  for (double b : parent->declared_cusps) {
    for (double shift : {0.0, parent->t1 - parent->t0}) {
      const double bb = b + shift;
      if (bb > ta && bb < tb) piece->declared_cusps.push_back(bb);
    }
  }
  std::sort(piece->breakpoints.begin(), piece->breakpoints.end());
  std::sort(piece->declared_cusps.begin(), piece->declared_cusps.end());
  piece->name = parent->name + "-piece";
  return Curve::build(piece, CurveKind::Segment, n);
}

Curve arc_length_reparametrize(const Curve& curve, int n) {
  return Curve::build(curve.source_ptr(), curve.kind(), n);
}

double geodesic_distance(const Curve& curve, double s1, double s2) {
  const double L = curve.length();
  const double tol = 1e-9 * std::max(1.0, L);
  if (s1 < -tol || s1 > L + tol || s2 < -tol || s2 > L + tol) {
    throw DomainError("geodesic_distance: parameter outside [0, L]");
  }
  return curve.geodesic(std::clamp(s1, 0.0, L), std::clamp(s2, 0.0, L));
}

double straightness_deficit(const Curve& curve, double s1, double s2) {
  const double L = curve.length();
  const double tol = 1e-9 * std::max(1.0, L);
  if (s1 < -tol || s1 > L + tol || s2 < -tol || s2 > L + tol) {
    throw DomainError("straightness_deficit: parameter outside [0, L]");
  }
  if (s1 == s2) throw DomainError("straightness_deficit: s == s'");
  const double chord = (curve.point_at(s1) - curve.point_at(s2)).norm();
  const double d = 1.0 - chord / std::fabs(s1 - s2);
  return std::clamp(d, 0.0, 1.0);
}

A2Fit fit_a2(const Curve& curve, double omega) {
  if (!(omega > 0.0) || !(omega < 1.0)) {
    throw DomainError("fit_a2: omega must lie in (0, 1)");
  }
  const double L = curve.length();
  const double center = 0.5 * L;

  A2Fit fit;
  std::vector<double> lx, ly;
  const double ratios[] = {omega, 0.5 * (1.0 + omega), 0.95};
  for (double sign : {1.0, -1.0}) {
    for (int k = 0; k < 28; ++k) {
      // log-spaced magnitudes from 1% to 45% of the (half-)length
      const double mag =
          0.01 * center * std::pow(45.0, k / 27.0);
      for (double rho : ratios) {
        const double sigma = sign * mag;
        const double sigma2 = sigma * rho;
        const double s1 = center + sigma, s2 = center + sigma2;
        if (s1 <= 0.0 || s1 >= L || s2 <= 0.0 || s2 >= L || s1 == s2) continue;
        const double def = straightness_deficit(curve, s1, s2);
        fit.max_deficit = std::max(fit.max_deficit, def);
        const double x = std::fabs(sigma + sigma2);
        if (def > 1e-14 && x > 1e-12) {
          lx.push_back(std::log(x));
          ly.push_back(std::log(def));
        }
      }
    }
  }
  if (fit.max_deficit < 1e-12) {
    fit.straight = true;
    fit.consistent = true;
    fit.d = 0.0;
    fit.mu = std::numeric_limits<double>::infinity();
    return fit;
  }
  if (lx.size() < 8) {
    fit.consistent = false;
    return fit;
  }
  // Tail regression ln(def) ~ ln(d) - mu * ln|s+s'| on the upper half of the
  // abscissa range (the model's large-|s+s'| regime).
  const double xmax = *std::max_element(lx.begin(), lx.end());
  const double xmin = *std::min_element(lx.begin(), lx.end());
  const double cut = 0.5 * (xmax + xmin);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (lx[i] < cut) continue;
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
    ++m;
  }
  if (m < 4) {
    fit.consistent = false;
    return fit;
  }
  const double denom = m * sxx - sx * sx;
  if (std::fabs(denom) < 1e-30) {
    fit.consistent = false;
    return fit;
  }
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;
  fit.mu = -slope;
  fit.d = std::exp(intercept);
  fit.consistent = fit.mu > 0.5;
  return fit;
}

std::vector<double> detect_cusps(const Curve& curve, double tol) {
  const CurveSource& src = curve.source();
  const double t0 = src.t0, t1 = src.t1;
  const double h = defaults::kCuspFdStep;
  auto vel = [&](double t) {
    return (src.eval_wrapped(t + h) - src.eval_wrapped(t - h)).norm() /
           (2.0 * h);
  };
  // Local chord/arc ratio around t over half-window w in source parameter.
  auto local_ratio = [&](double t, double w) {
    const Vec2 a = src.eval_wrapped(t - w);
    const Vec2 b = src.eval_wrapped(t + w);
    const double chord = (a - b).norm();
    double arc = 0.0;
    const int pieces = 16;
    for (int i = 0; i < pieces; ++i) {
      const double u0 = t - w + 2.0 * w * i / pieces;
      const double u1 = t - w + 2.0 * w * (i + 1) / pieces;
      arc += (src.eval_wrapped(u1) - src.eval_wrapped(u0)).norm();
    }
    return arc > 0.0 ? chord / arc : 1.0;
  };

  const int grid = 4096;
  const double margin = 4.0 * h;
  const double a = t0 + margin, b = t1 - margin;
  std::vector<double> out;
  if (!(b > a)) return out;

  std::vector<double> v(grid + 1);
  for (int i = 0; i <= grid; ++i) v[i] = vel(a + (b - a) * i / grid);

  const double wscale = 0.5 * (t1 - t0);
  for (int i = 1; i < grid; ++i) {
    if (!(v[i] < v[i - 1] && v[i] <= v[i + 1])) continue;
    // Golden-section refinement of the velocity minimum.
    double lo = a + (b - a) * (i - 1) / grid;
    double hi = a + (b - a) * (i + 1) / grid;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = vel(x1), f2 = vel(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12 * wscale; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = vel(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = vel(x2);
      }
    }
    const double tstar = 0.5 * (lo + hi);
    if (vel(tstar) >= tol) continue;
    // Velocity vanishes; confirm the chord/arc ratio collapses too (rules
    // out curves that are merely parametrized with a stationary point).
    const double r_big = local_ratio(tstar, 1e-2 * wscale);
    const double r_small = local_ratio(tstar, 1e-3 * wscale);
    if (!(r_small < 0.5 && r_small < 0.75 * r_big)) continue;
    double t_cusp = tstar;
    for (double d : src.declared_cusps) {
      if (std::fabs(d - tstar) <= 1e-4 * wscale) t_cusp = d;
    }
    if (out.empty() || std::fabs(out.back() - t_cusp) > 1e-6 * wscale) {
      out.push_back(t_cusp);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace curves {

Curve from_source(CurveSource src, CurveKind kind, int n) {
  return Curve::build(std::make_shared<CurveSource>(std::move(src)), kind, n);
}

Curve line(double T, int n) {
  if (!(T > 0.0)) throw DomainError("line: truncation must be positive");
  CurveSource s;
  s.eval = [](double t) { return Vec2{t, 0.0}; };
  s.deriv = [](double) { return Vec2{1.0, 0.0}; };
  s.t0 = -T;
  s.t1 = T;
  s.unit_speed = true;
  s.name = "line";
  return from_source(std::move(s), CurveKind::Infinite, n);
}

Curve angle(double beta, double T, int n) {
  if (!(beta > 0.0) || beta > kPi + 1e-12) {
    throw DomainError("angle: beta must lie in (0, pi]");
  }
  if (!(T > 0.0)) throw DomainError("angle: truncation must be positive");
  const Vec2 dplus{std::cos(0.5 * beta), std::sin(0.5 * beta)};
  const Vec2 dminus{std::cos(0.5 * beta), -std::sin(0.5 * beta)};
  CurveSource s;
  s.eval = [dplus, dminus](double t) {
    return t >= 0.0 ? dplus * t : dminus * (-t);
  };
  s.deriv = [dplus, dminus](double t) {
    return t >= 0.0 ? dplus : dminus * (-1.0);
  };
  s.t0 = -T;
  s.t1 = T;
  s.unit_speed = true;
  s.breakpoints = {0.0};
  s.name = "angle";
  return from_source(std::move(s), CurveKind::Infinite, n);
}

Curve circle(double R, int n) {
  if (!(R > 0.0)) throw DomainError("circle: radius must be positive");
  CurveSource s;
  s.eval = [R](double t) {
    return Vec2{R * std::cos(t / R), R * std::sin(t / R)};
  };
  s.deriv = [R](double t) {
    return Vec2{-std::sin(t / R), std::cos(t / R)};
  };
  s.t0 = 0.0;
  s.t1 = 2.0 * kPi * R;
  s.unit_speed = true;
  s.periodic = true;
  s.name = "circle";
  return from_source(std::move(s), CurveKind::Loop, n);
}

Curve circular_arc(double R, double phi0, double phi1, int n) {
  if (!(R > 0.0)) throw DomainError("circular_arc: radius must be positive");
  if (!(phi1 > phi0) || phi1 - phi0 >= 2.0 * kPi) {
    throw DomainError("circular_arc: need 0 < phi1 - phi0 < 2*pi");
  }
  CurveSource s;
  s.eval = [R](double t) {
    return Vec2{R * std::cos(t / R), R * std::sin(t / R)};
  };
  s.deriv = [R](double t) {
    return Vec2{-std::sin(t / R), std::cos(t / R)};
  };
  s.t0 = R * phi0;
  s.t1 = R * phi1;
  s.unit_speed = true;
  s.name = "circular_arc";
  return from_source(std::move(s), CurveKind::Segment, n);
}

Curve cusp_family(int nn, int mm, double t_max, int n) {
  if (nn < 1 || mm < nn) {
    throw DomainError("cusp_family: requires integers m >= n >= 1");
  }
  if (!(t_max > 0.0)) throw DomainError("cusp_family: t_max must be positive");
  CurveSource s;
  s.eval = [nn, mm](double t) {
    return Vec2{ipow(t, 2 * nn), ipow(t, 2 * mm + 1)};
  };
  s.deriv = [nn, mm](double t) {
    return Vec2{2.0 * nn * ipow(t, 2 * nn - 1),
                (2.0 * mm + 1.0) * ipow(t, 2 * mm)};
  };
  s.t0 = -t_max;
  s.t1 = t_max;
  s.breakpoints = {0.0};
  s.declared_cusps = {0.0};
  s.name = (nn == 1 && mm == 1) ? "spinode"
           : (nn == 1 && mm == 2) ? "rhamphoid"
                                  : "cusp_family";
  return from_source(std::move(s), CurveKind::Segment, n);
}

Curve spinode(double t_max, int n) { return cusp_family(1, 1, t_max, n); }

Curve rhamphoid(double t_max, int n) { return cusp_family(1, 2, t_max, n); }

Curve polyline(const std::vector<Vec2>& pts, int n) {
  if (pts.size() < 2) throw DomainError("polyline: needs at least 2 points");
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double seg = (pts[i] - pts[i - 1]).norm();
    if (!(seg > 0.0)) throw DomainError("polyline: duplicate vertex");
    cum[i] = cum[i - 1] + seg;
  }
  const bool closed = (pts.front() - pts.back()).norm() <
                      1e-12 * std::max(1.0, cum.back());
  auto points = std::make_shared<std::vector<Vec2>>(pts);
  auto knots = std::make_shared<std::vector<double>>(cum);
  CurveSource s;
  s.eval = [points, knots](double t) {
    const auto& k = *knots;
    auto it = std::upper_bound(k.begin(), k.end(), t);
    std::size_t i =
        (it == k.begin()) ? 0 : static_cast<std::size_t>(it - k.begin()) - 1;
    if (i + 1 >= k.size()) i = k.size() - 2;
    const double w = (t - k[i]) / (k[i + 1] - k[i]);
    const Vec2 a = (*points)[i], b = (*points)[i + 1];
    return Vec2{a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
  };
  s.t0 = 0.0;
  s.t1 = cum.back();
  s.unit_speed = true;
  s.piecewise_linear = true;
  s.periodic = closed;
  s.breakpoints.assign(cum.begin() + 1, cum.end() - 1);
  s.name = "polyline";
  return from_source(std::move(s), closed ? CurveKind::Loop : CurveKind::Segment,
                     n);
}

Curve sampled(const std::vector<double>& ts, const std::vector<Vec2>& pts,
              int n) {
  if (ts.size() != pts.size() || ts.size() < 2) {
    throw DomainError("sampled: needs matching t/point lists, length >= 2");
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1])) {
      throw DomainError("sampled: parameters must be strictly increasing");
    }
  }
  double chord_total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    chord_total += (pts[i] - pts[i - 1]).norm();
  }
  const bool closed =
      (pts.front() - pts.back()).norm() < 1e-12 * std::max(1.0, chord_total);
  auto tv = std::make_shared<std::vector<double>>(ts);
  auto pv = std::make_shared<std::vector<Vec2>>(pts);
  CurveSource s;
  s.eval = [tv, pv](double t) {
    const auto& k = *tv;
    auto it = std::upper_bound(k.begin(), k.end(), t);
    std::size_t i =
        (it == k.begin()) ? 0 : static_cast<std::size_t>(it - k.begin()) - 1;
    if (i + 1 >= k.size()) i = k.size() - 2;
    const double w = (t - k[i]) / (k[i + 1] - k[i]);
    const Vec2 a = (*pv)[i], b = (*pv)[i + 1];
    return Vec2{a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
  };
  s.t0 = ts.front();
  s.t1 = ts.back();
  s.piecewise_linear = true;
  s.periodic = closed;
  s.breakpoints.assign(ts.begin() + 1, ts.end() - 1);
  s.name = "sampled";
  return from_source(std::move(s), closed ? CurveKind::Loop : CurveKind::Segment,
                     n);
}

}  // namespace curves

}  // namespace lqw
