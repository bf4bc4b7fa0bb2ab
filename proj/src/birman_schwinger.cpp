#include "lqw/birman_schwinger.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "lqw/detail/gauss.hpp"
#include "lqw/errors.hpp"
#include "lqw/macdonald.hpp"
#include "lqw/simd/kernels.hpp"

namespace lqw {

namespace {

constexpr double kPi = std::numbers::pi;

std::atomic<int> g_threads{1};

void parallel_rows(int n, const std::function<void(int, int)>& body) {
  const int k = std::min(compute_threads(), n);
  if (k <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int t = 0; t < k; ++t) {
    const int lo = static_cast<int>(static_cast<long long>(n) * t / k);
    const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / k);
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

// Upper bound for K1, used in the near-band tail error estimate.
double k1_upper(double z) {
  return std::sqrt(0.5 * kPi / z) * std::exp(-z) * (1.0 + 0.375 / z);
}

// Kernel argument threshold below which pairs get panel product integration.
// The Euler-Maclaurin boundary term of the point-value tail is about
// (h^2 kappa / 12) K1(z); keep it below 3e-6 so that eigenvalues move at the
// 1e-6 level or less when n doubles.
double near_threshold(double h, double kappa) {
  double z = 2.0;
  const double pref = h * h * kappa / 12.0;
  while (z < 400.0 && pref * k1_upper(z) > 3e-6) z += 2.0;
  return z;
}

}  // namespace

void set_compute_threads(int k) { g_threads.store(std::max(1, k)); }
int compute_threads() { return g_threads.load(); }

double Discretization::min_spacing() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    m = std::min(m, nodes[i] - nodes[i - 1]);
  }
  return m;
}

double Discretization::geodesic(double s1, double s2) const {
  double d = std::fabs(s1 - s2);
  if (wrap) d = std::min(d, total_length - d);
  return d;
}

Discretization Discretization::build(const Curve& curve, int n,
                                     DiagonalRule rule, int order) {
  if (n < 16) throw DomainError("discretization: n must be >= 16");
  if (order < 4 || order % 2 != 0) {
    throw DomainError("discretization: gauss order must be even and >= 4");
  }
  Discretization d;
  d.rule = rule;
  d.gauss_order = order;
  d.total_length = curve.length();
  d.wrap = curve.kind() == CurveKind::Loop;
  d.domain = d.wrap ? Domain::LoopPeriodic : Domain::TruncatedLine;

  const double h = curve.length() / n;
  d.nodes.resize(n);
  d.weights.assign(n, h);
  d.points.resize(n);
  d.gauss_params.resize(static_cast<std::size_t>(n) * order);
  d.gauss_points.resize(static_cast<std::size_t>(n) * order);
  d.gauss_weights.resize(static_cast<std::size_t>(n) * order);
  d.half_params.resize(static_cast<std::size_t>(n) * order);
  d.half_points.resize(static_cast<std::size_t>(n) * order);
  d.half_weights.resize(static_cast<std::size_t>(n) * order);

  // Full-panel rule (order points) and two half-panel rules (order/2 each).
  std::vector<detail::GLPoint> full, half;
  auto pick = [](int m) {
    std::vector<detail::GLPoint> v;
    if (m <= 6) {
      v.assign(detail::kGL6.begin(), detail::kGL6.end());
    } else if (m <= 12) {
      v.assign(detail::kGL12.begin(), detail::kGL12.end());
    } else {
      v.assign(detail::kGL16.begin(), detail::kGL16.end());
    }
    return v;
  };
  full = pick(order);
  half = pick(order / 2);

  for (int i = 0; i < n; ++i) {
    const double s0 = i * h;
    const double si = s0 + 0.5 * h;
    d.nodes[i] = si;
    d.points[i] = curve.point_at(si);
    const std::size_t base = static_cast<std::size_t>(i) * order;
    for (std::size_t g = 0; g < full.size(); ++g) {
      const double s = si + 0.5 * h * full[g].x;
      d.gauss_params[base + g] = s;
      d.gauss_points[base + g] = curve.point_at(s);
      d.gauss_weights[base + g] = 0.5 * h * full[g].w;
    }
    // Halves [s0, si] and [si, s0 + h].
    for (std::size_t g = 0; g < half.size(); ++g) {
      const double sl = s0 + 0.25 * h + 0.25 * h * half[g].x;
      const double sr = si + 0.25 * h + 0.25 * h * half[g].x;
      d.half_params[base + g] = sl;
      d.half_points[base + g] = curve.point_at(sl);
      d.half_weights[base + g] = 0.25 * h * half[g].w;
      d.half_params[base + half.size() + g] = sr;
      d.half_points[base + half.size() + g] = curve.point_at(sr);
      d.half_weights[base + half.size() + g] = 0.25 * h * half[g].w;
    }
  }
  return d;
}

Discretization Discretization::concat(const std::vector<Curve>& pieces,
                                      int n_per_piece, DiagonalRule rule,
                                      int order) {
  if (pieces.empty()) throw DomainError("concat: no pieces");
  Discretization out;
  double offset = 0.0;
  for (const Curve& c : pieces) {
    Discretization d = build(c, n_per_piece, rule, order);
    const int base_order = d.gauss_order;
    for (double& s : d.nodes) s += offset;
    for (double& s : d.gauss_params) s += offset;
    for (double& s : d.half_params) s += offset;
    out.nodes.insert(out.nodes.end(), d.nodes.begin(), d.nodes.end());
    out.weights.insert(out.weights.end(), d.weights.begin(), d.weights.end());
    out.points.insert(out.points.end(), d.points.begin(), d.points.end());
    out.gauss_params.insert(out.gauss_params.end(), d.gauss_params.begin(),
                            d.gauss_params.end());
    out.gauss_points.insert(out.gauss_points.end(), d.gauss_points.begin(),
                            d.gauss_points.end());
    out.gauss_weights.insert(out.gauss_weights.end(), d.gauss_weights.begin(),
                             d.gauss_weights.end());
    out.half_params.insert(out.half_params.end(), d.half_params.begin(),
                           d.half_params.end());
    out.half_points.insert(out.half_points.end(), d.half_points.begin(),
                           d.half_points.end());
    out.half_weights.insert(out.half_weights.end(), d.half_weights.begin(),
                            d.half_weights.end());
    out.gauss_order = base_order;
    offset += c.length();
  }
  out.total_length = offset;
  out.wrap = false;
  out.domain = Domain::TruncatedLine;
  out.rule = rule;
  out.geodesic_valid = false;
  return out;
}

namespace {

struct AssemblyContext {
  const Discretization& disc;
  double alpha;
  double kappa;
  bool comparison;  // kernel argument kappa*c*geo instead of kappa*chord
  double c = 1.0;
};

double diagonal_entry(const AssemblyContext& ctx, int i) {
  const Discretization& d = ctx.disc;
  const int G = d.gauss_order;
  const std::size_t base = static_cast<std::size_t>(i) * G;
  const double w = d.weights[i];
  const double scale = ctx.comparison ? ctx.kappa * ctx.c : ctx.kappa;

  if (d.rule == DiagonalRule::PanelGauss) {
    double acc = 0.0;
    for (int g = 0; g < G; ++g) {
      double arg;
      if (ctx.comparison) {
        arg = scale * std::fabs(d.half_params[base + g] - d.nodes[i]);
      } else {
        arg = ctx.kappa * (d.points[i] - d.half_points[base + g]).norm();
      }
      acc += d.half_weights[base + g] * macdonald_k0(arg);
    }
    return acc;
  }

  // Log subtraction: the straight-panel singular integral in closed form
  // (series), plus the smooth chord-vs-arc correction by half-panel Gauss.
  double acc = 2.0 * k0_panel_integral(0.5 * w, scale);
  if (!ctx.comparison) {
    for (int g = 0; g < G; ++g) {
      const double u = std::fabs(d.half_params[base + g] - d.nodes[i]);
      const double chord = (d.points[i] - d.half_points[base + g]).norm();
      acc += d.half_weights[base + g] *
             (macdonald_k0(ctx.kappa * chord) - macdonald_k0(ctx.kappa * u));
    }
  }
  return acc;
}

BSMatrix assemble_impl(const AssemblyContext& ctx) {
  const Discretization& d = ctx.disc;
  const int n = d.size();
  if (!(ctx.kappa > 0.0)) throw DomainError("assembly: kappa must be positive");
  if (!(ctx.alpha > 0.0)) throw DomainError("assembly: alpha must be positive");
  if (ctx.comparison && !(ctx.c > 0.0)) {
    throw DomainError("assembly: comparison constant c must be positive");
  }
  if (ctx.comparison && !d.geodesic_valid) {
    throw DomainError(
        "assembly: comparison kernel needs geodesic distances (single curve)");
  }
  for (int i = 0; i + 1 < n; ++i) {
    if ((d.points[i + 1] - d.points[i]).norm() <
        1e-12 * std::max(1.0, d.weights[i])) {
      throw AssemblyError("degenerate discretization: duplicate nodes");
    }
  }

  const double pref = ctx.alpha / (2.0 * kPi);
  const double hmax =
      *std::max_element(d.weights.begin(), d.weights.end());
  const double scale = ctx.comparison ? ctx.kappa * ctx.c : ctx.kappa;
  const double z_near = near_threshold(hmax, scale);
  // Beyond this argument K0 underflows to zero.
  const double z_zero = 746.0;

  BSMatrix b;
  b.n = n;
  b.alpha = ctx.alpha;
  b.kappa = ctx.kappa;
  b.weights = d.weights;
  b.a.assign(static_cast<std::size_t>(n) * n, 0.0);

  const auto& kern = simd::active_kernels();

  const int G = d.gauss_order;
  parallel_rows(n, [&](int row_lo, int row_hi) {
    std::vector<double> args;
    std::vector<double> vals;
    std::vector<int> near_idx;
    std::vector<int> far_idx;
    for (int i = row_lo; i < row_hi; ++i) {
      b.at(i, i) = pref * diagonal_entry(ctx, i);

      args.clear();
      near_idx.clear();
      far_idx.clear();
      // Classify pairs and gather every kernel argument of the row: near
      // pairs contribute 2G panel-Gauss arguments (both directions), far
      // pairs one point argument. One batched K0 sweep covers them all.
      for (int j = i + 1; j < n; ++j) {
        double arg;
        if (ctx.comparison) {
          arg = scale * d.geodesic(d.nodes[i], d.nodes[j]);
        } else {
          arg = ctx.kappa * (d.points[i] - d.points[j]).norm();
        }
        if (!(arg > 0.0)) {
          throw AssemblyError("degenerate discretization: coincident nodes");
        }
        if (arg <= z_near) {
          near_idx.push_back(j);
          const std::size_t bj = static_cast<std::size_t>(j) * G;
          const std::size_t bi = static_cast<std::size_t>(i) * G;
          if (ctx.comparison) {
            for (int g = 0; g < G; ++g) {
              args.push_back(scale *
                             d.geodesic(d.nodes[i], d.gauss_params[bj + g]));
            }
            for (int g = 0; g < G; ++g) {
              args.push_back(scale *
                             d.geodesic(d.nodes[j], d.gauss_params[bi + g]));
            }
          } else {
            for (int g = 0; g < G; ++g) {
              args.push_back(ctx.kappa *
                             (d.points[i] - d.gauss_points[bj + g]).norm());
            }
            for (int g = 0; g < G; ++g) {
              args.push_back(ctx.kappa *
                             (d.points[j] - d.gauss_points[bi + g]).norm());
            }
          }
        } else if (arg >= z_zero) {
          b.at(i, j) = 0.0;
          b.at(j, i) = 0.0;
        } else {
          args.push_back(arg);
          far_idx.push_back(j);
        }
      }
      if (args.empty()) continue;
      for (double& a : args) a = std::max(a, 1e-300);
      vals.resize(args.size());
      kern.k0_batch(args.data(), vals.data(), args.size());

      std::size_t cur = 0;
      for (int j : near_idx) {
        const std::size_t bj = static_cast<std::size_t>(j) * G;
        const std::size_t bi = static_cast<std::size_t>(i) * G;
        double int_ij = 0.0, int_ji = 0.0;
        for (int g = 0; g < G; ++g) int_ij += d.gauss_weights[bj + g] * vals[cur++];
        for (int g = 0; g < G; ++g) int_ji += d.gauss_weights[bi + g] * vals[cur++];
        // Symmetrized product integration: average of the two directional
        // panel means.
        const double avg =
            0.5 * (int_ij / d.weights[j] + int_ji / d.weights[i]);
        const double v = pref * std::sqrt(d.weights[i] * d.weights[j]) * avg;
        b.at(i, j) = v;
        b.at(j, i) = v;
      }
      for (int j : far_idx) {
        const double v =
            pref * std::sqrt(d.weights[i] * d.weights[j]) * vals[cur++];
        b.at(i, j) = v;
        b.at(j, i) = v;
      }
    }
  });
  return b;
}

}  // namespace

BSMatrix assemble_bs_matrix(double alpha, double kappa,
                            const Discretization& disc) {
  AssemblyContext ctx{disc, alpha, kappa, false, 1.0};
  return assemble_impl(ctx);
}

BSMatrix assemble_comparison_matrix(double c, double alpha, double kappa,
                                    const Discretization& disc) {
  AssemblyContext ctx{disc, alpha, kappa, true, c};
  return assemble_impl(ctx);
}

double schur_row_bound(const BSMatrix& b) {
  const int n = b.n;
  std::vector<double> sqw(n);
  for (int i = 0; i < n; ++i) sqw[i] = std::sqrt(b.weights[i]);
  std::vector<double> rs(n);
  simd::active_kernels().matvec(b.a.data(), n, sqw.data(), rs.data());
  double rmax = 0.0;
  for (int i = 0; i < n; ++i) rmax = std::max(rmax, rs[i] / sqw[i]);
  // Symmetric kernel: row and column suprema coincide.
  return rmax;
}

double bs_norm_line_analytic(double alpha, double c, double kappa) {
  if (!(alpha > 0.0) || !(c > 0.0) || !(kappa > 0.0)) {
    throw DomainError("bs_norm_line_analytic: all arguments must be positive");
  }
  return alpha / (2.0 * c * kappa);
}

}  // namespace lqw
