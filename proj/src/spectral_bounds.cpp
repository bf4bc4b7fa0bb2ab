#include "lqw/spectral_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "lqw/errors.hpp"

namespace lqw {

double single_bound(double alpha, double c) {
  if (!(alpha > 0.0)) throw DomainError("single_bound: alpha must be positive");
  if (!(c > 0.0)) {
    throw BoundUndefinedError(
        "single_bound: c <= 0 (cusp or self-intersection present)");
  }
  return -alpha * alpha / (4.0 * c * c);
}

double composite_bound(double alpha, const std::vector<double>& c_list) {
  if (!(alpha > 0.0)) {
    throw DomainError("composite_bound: alpha must be positive");
  }
  if (c_list.empty()) {
    throw BoundUndefinedError("composite_bound: empty piece list");
  }
  double sum = 0.0;
  for (double c : c_list) {
    if (!(c > 0.0)) {
      throw BoundUndefinedError("composite_bound: piece with c <= 0");
    }
    sum += alpha * alpha / (4.0 * c * c);
  }
  return -static_cast<double>(c_list.size()) * sum;
}

EssentialSpectrumResult essential_spectrum(CurveKind kind, double alpha,
                                           bool a2_ok) {
  if (!(alpha > 0.0)) {
    throw DomainError("essential_spectrum: alpha must be positive");
  }
  EssentialSpectrumResult r;
  switch (kind) {
    case CurveKind::Loop:
    case CurveKind::Segment:
      r.threshold = 0.0;
      break;
    case CurveKind::Infinite:
      r.threshold = -0.25 * alpha * alpha;
      r.diagnostic_only = !a2_ok;
      break;
  }
  return r;
}

namespace {

const char* strategy_name(ExtensionSpec::Strategy s) {
  switch (s) {
    case ExtensionSpec::Strategy::TangentRays:
      return "tangent-rays";
    case ExtensionSpec::Strategy::CloseLoop:
      return "close-loop";
    case ExtensionSpec::Strategy::Explicit:
      return "explicit";
  }
  return "?";
}

int states_n_for(double length, double kappa_max, int requested) {
  // Bound-state search precondition: node spacing <= 1/(4 kappa_max).
  const int needed =
      static_cast<int>(std::ceil(4.0 * kappa_max * length * 1.02)) + 1;
  return std::max(requested, needed);
}

void attach_states(SpectralReport& rep, const Discretization& disc,
                   double alpha, double kappa_min, double kappa_max,
                   int top_k) {
  BoundStateSearch search =
      find_bound_states(alpha, kappa_min, kappa_max, disc, top_k);
  rep.states = std::move(search.states);
  for (auto& note : search.notes) rep.notes.push_back(std::move(note));
  rep.verdicts.clear();
  for (const BoundState& st : rep.states) {
    const bool ok = st.lambda >= rep.bound - defaults::kVerdictSlack &&
                    st.lambda < rep.ess_threshold;
    rep.verdicts.push_back(ok);
    if (!ok) rep.all_pass = false;
  }
}

}  // namespace

SpectralReport verify_report(const Curve& curve, double alpha,
                             const SolverSettings& settings) {
  if (!(alpha > 0.0)) throw DomainError("verify_report: alpha must be positive");
  SpectralReport rep;
  rep.curve_name = curve.source().name;
  rep.alpha = alpha;

  const ChordArcResult cc =
      chord_arc_constant(curve, settings.grid_m, settings.refine_r);

  if (cc.self_intersection) {
    throw BoundUndefinedError("verify_report: curve self-intersects (c = 0)");
  }

  // Essential spectrum first; for unbounded curves run the straightness
  // diagnostic.
  bool a2_ok = true;
  if (curve.kind() == CurveKind::Infinite) {
    const A2Fit fit = fit_a2(curve);
    a2_ok = fit.consistent;
    if (!fit.straight) {
      rep.notes.push_back("a2 fit: mu = " + std::to_string(fit.mu) +
                          ", d = " + std::to_string(fit.d));
    }
  }
  const EssentialSpectrumResult ess =
      essential_spectrum(curve.kind(), alpha, a2_ok);
  rep.ess_threshold = ess.threshold;
  rep.ess_diagnostic_only = ess.diagnostic_only;

  // Direct route (Theorem-style single bound) when c > 0.
  if (!cc.cusp) {
    rep.chord_arc = cc.c;
    rep.direct_bound = single_bound(alpha, cc.c);
  }

  // Composite route: cut at cusps and corners, extend each piece.
  std::vector<double> cut_params = detect_cusps(curve);
  for (double b : curve.source().breakpoints) {
    if (b > curve.source().t0 && b < curve.source().t1) cut_params.push_back(b);
  }
  std::sort(cut_params.begin(), cut_params.end());
  cut_params.erase(std::unique(cut_params.begin(), cut_params.end()),
                   cut_params.end());

  if (!cut_params.empty()) {
    Decomposition dec = split_at(curve, cut_params, std::max(64, settings.n / 4));
    std::vector<double> cs;
    for (std::size_t i = 0; i < dec.pieces.size(); ++i) {
      ExtensionSpec spec;
      spec.strategy = settings.extension;
      Curve ext = extend_piece(dec.pieces[i].piece, spec, std::max(64, settings.n / 4),
                               dec.pieces[i].label);
      const ChordArcResult ce = chord_arc_constant(ext, 256, 4);
      dec.pieces[i].extension = ext;
      dec.pieces[i].c = ce.c;
      cs.push_back(ce.c);
      rep.pieces.push_back({ce.c, strategy_name(settings.extension)});
    }
    rep.composite_bound_value = composite_bound(alpha, cs);
  }

  if (!rep.direct_bound && !rep.composite_bound_value) {
    throw BoundUndefinedError(
        "verify_report: no bound available (cusp present and no decomposition)");
  }
  if (rep.direct_bound && rep.composite_bound_value) {
    // Report both; the operative bound is the tighter (larger) one.
    if (*rep.composite_bound_value > *rep.direct_bound) {
      rep.bound = *rep.composite_bound_value;
      rep.bound_kind = "composite";
    } else {
      rep.bound = *rep.direct_bound;
      rep.bound_kind = "single";
    }
  } else if (rep.direct_bound) {
    rep.bound = *rep.direct_bound;
    rep.bound_kind = "single";
  } else {
    rep.bound = *rep.composite_bound_value;
    rep.bound_kind = "composite";
  }

  if (settings.find_states) {
    const double kappa_cap = std::sqrt(-rep.bound) * 1.05;
    double kappa_min = settings.kappa_min.value_or(
        curve.kind() == CurveKind::Infinite ? 0.51 * alpha
                                            : std::max(0.02, 0.02 * alpha));
    double kappa_max = settings.kappa_max.value_or(kappa_cap);
    if (kappa_max <= kappa_min) kappa_max = kappa_min * 1.05;
    const int n_eff = states_n_for(curve.length(), kappa_max, settings.n);
    Discretization disc = Discretization::build(curve, n_eff, settings.rule);
    attach_states(rep, disc, alpha, kappa_min, kappa_max, settings.top_k);
  }
  return rep;
}

std::vector<Curve> graph_edge_curves(const LeakyGraph& graph, int n_per_edge) {
  if (graph.edges.empty()) throw DomainError("graph: no edges");
  std::vector<Curve> out;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& edge = graph.edges[e];
    if (edge.from < 0 || edge.to < 0 ||
        edge.from >= static_cast<int>(graph.vertices.size()) ||
        edge.to >= static_cast<int>(graph.vertices.size())) {
      throw DomainError("graph: edge " + std::to_string(e) +
                        " has invalid vertex index");
    }
    std::vector<Vec2> pts;
    pts.push_back(graph.vertices[edge.from]);
    for (const Vec2& w : edge.waypoints) pts.push_back(w);
    pts.push_back(graph.vertices[edge.to]);
    out.push_back(curves::polyline(pts, n_per_edge));
  }

  // Edges may meet only at shared endpoints: pairwise sample check.
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      const auto& pa = out[a].sample_points();
      const auto& pb = out[b].sample_points();
      const double la = out[a].length(), lb = out[b].length();
      const double tol = 1e-9 * std::max(1.0, std::max(la, lb));
      const double guard_a = 0.05 * la, guard_b = 0.05 * lb;
      const auto& sa = out[a].sample_params();
      const auto& sb = out[b].sample_params();
      for (std::size_t i = 0; i < pa.size(); ++i) {
        for (std::size_t j = 0; j < pb.size(); ++j) {
          if ((pa[i] - pb[j]).norm() > tol) continue;
          const bool near_end_a =
              sa[i] < guard_a || sa[i] > la - guard_a;
          const bool near_end_b =
              sb[j] < guard_b || sb[j] > lb - guard_b;
          if (!(near_end_a && near_end_b)) {
            throw DomainError("graph: edges " + std::to_string(a) + " and " +
                              std::to_string(b) +
                              " intersect away from shared endpoints");
          }
        }
      }
    }
  }
  return out;
}

SpectralReport graph_bound(const LeakyGraph& graph, double alpha,
                           const SolverSettings& settings) {
  if (!(alpha > 0.0)) throw DomainError("graph_bound: alpha must be positive");
  SpectralReport rep;
  rep.curve_name = "graph";
  rep.alpha = alpha;
  rep.ess_threshold = 0.0;  // finite graph of segments
  rep.bound_kind = "graph";

  const int n_edge_geom = 128;
  std::vector<Curve> edges = graph_edge_curves(graph, n_edge_geom);

  std::vector<double> cs;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    ExtensionSpec spec;
    spec.strategy = settings.extension;
    Curve ext =
        extend_piece(edges[e], spec, 256, "edge " + std::to_string(e));
    const ChordArcResult ce = chord_arc_constant(ext, 256, 4);
    cs.push_back(ce.c);
    rep.pieces.push_back({ce.c, strategy_name(settings.extension)});
  }
  rep.bound = composite_bound(alpha, cs);

  if (settings.find_states) {
    const double kappa_max =
        settings.kappa_max.value_or(std::sqrt(-rep.bound) * 1.05);
    const double kappa_min =
        settings.kappa_min.value_or(std::max(0.02, 0.02 * alpha));
    int n_per_edge = std::max(32, settings.n / static_cast<int>(edges.size()));
    for (const Curve& c : edges) {
      n_per_edge = std::max(
          n_per_edge,
          static_cast<int>(std::ceil(4.0 * kappa_max * c.length() * 1.02)) + 1);
    }
    Discretization disc =
        Discretization::concat(edges, n_per_edge, settings.rule);
    attach_states(rep, disc, alpha, kappa_min, kappa_max, settings.top_k);
  }
  return rep;
}

}  // namespace lqw
