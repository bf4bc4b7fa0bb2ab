#include "lqw/cli.hpp"

#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "lqw/config.hpp"
#include "lqw/errors.hpp"
#include "lqw/io.hpp"
#include "lqw/macdonald.hpp"
#include "lqw/simd/kernels.hpp"

namespace lqw {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  int threads = 1;
  bool verbose = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required) {
  auto* copt = cmd->add_option("--config", o.config_path, "config file (JSON)");
  if (config_required) copt->required();
  cmd->add_option("--out", o.out_path, "output path (stdout if omitted)");
  cmd->add_option("--format", o.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", o.threads, "worker threads for assembly");
  cmd->add_flag("--verbose", o.verbose, "chatty progress output");
}

void emit(const CommonOpts& o, const std::string& content, std::ostream& out) {
  if (o.out_path.empty()) {
    out << content;
  } else {
    write_file(o.out_path, content);
  }
}

// Default bound-state kappa window, matching the report pipeline.
std::pair<double, double> kappa_window(const RunConfig& cfg, CurveKind kind,
                                       double bound) {
  double kmin = cfg.solver.kappa_min.value_or(
      kind == CurveKind::Infinite ? 0.51 * cfg.alpha
                                  : std::max(0.02, 0.02 * cfg.alpha));
  double kmax = cfg.solver.kappa_max.value_or(std::sqrt(-bound) * 1.05);
  if (kmax <= kmin) kmax = kmin * 1.05;
  return {kmin, kmax};
}

int run_cconst(const RunConfig& cfg, const CommonOpts& o, std::ostream& out) {
  if (!cfg.curve) throw ConfigError("cconst: config needs a curve");
  Curve curve = make_curve(*cfg.curve);
  ChordArcResult r =
      chord_arc_constant(curve, cfg.solver.grid_m, cfg.solver.refine_r);
  out << "c = " << format_double(r.c) << "  argmin = (" << format_double(r.arg_s)
      << ", " << format_double(r.arg_s2) << ")";
  if (r.cusp) out << "  [cusp]";
  if (r.self_intersection) out << "  [self-intersection]";
  out << "\n";
  if (o.verbose) {
    for (std::size_t l = 0; l < r.level_estimates.size(); ++l) {
      out << "  level " << l << ": " << format_double(r.level_estimates[l])
          << "\n";
    }
  }
  if (!o.out_path.empty()) {
    emit(o, o.format == "csv" ? chord_arc_csv(r) : chord_arc_json(r), out);
  }
  return 0;
}

int run_bound(const RunConfig& cfg, const CommonOpts& o, std::ostream& out) {
  SpectralReport rep;
  if (cfg.graph) {
    rep = graph_bound(*cfg.graph, cfg.alpha, cfg.solver);
  } else if (cfg.curve) {
    rep = verify_report(make_curve(*cfg.curve), cfg.alpha, cfg.solver);
  } else {
    throw ConfigError("bound: config needs a curve or a graph");
  }
  const std::string text = report_json(rep);
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
    out << "bound = " << format_double(rep.bound) << " (" << rep.bound_kind
        << "), " << rep.states.size() << " state(s), "
        << (rep.all_pass ? "all pass" : "VERDICT FAIL") << "\n";
  }
  return rep.all_pass ? 0 : 3;
}

int run_spectrum(const RunConfig& cfg, const CommonOpts& o, std::ostream& out) {
  SolverSettings st = cfg.solver;
  st.find_states = true;
  SpectralReport rep;
  Discretization disc;
  double kmin = 0.0, kmax = 0.0;
  if (cfg.graph) {
    rep = graph_bound(*cfg.graph, cfg.alpha, st);
    std::tie(kmin, kmax) = kappa_window(cfg, CurveKind::Segment, rep.bound);
    std::vector<Curve> edges = graph_edge_curves(*cfg.graph, 128);
    int n_per_edge =
        std::max(32, st.n / static_cast<int>(edges.size()));
    for (const Curve& c : edges) {
      n_per_edge = std::max(
          n_per_edge,
          static_cast<int>(std::ceil(4.0 * kmax * c.length() * 1.02)) + 1);
    }
    disc = Discretization::concat(edges, n_per_edge, st.rule);
  } else if (cfg.curve) {
    Curve curve = make_curve(*cfg.curve);
    rep = verify_report(curve, cfg.alpha, st);
    std::tie(kmin, kmax) = kappa_window(cfg, curve.kind(), rep.bound);
    const int n_eff = std::max(
        st.n,
        static_cast<int>(std::ceil(4.0 * kmax * curve.length() * 1.02)) + 1);
    disc = Discretization::build(curve, n_eff, st.rule);
  } else {
    throw ConfigError("spectrum: config needs a curve or a graph");
  }

  // Log-spaced kappa grid for the eigenvalue table.
  std::vector<double> grid(defaults::kKappaGridPoints);
  for (int i = 0; i < defaults::kKappaGridPoints; ++i) {
    const double t = static_cast<double>(i) / (defaults::kKappaGridPoints - 1);
    grid[i] = kmin * std::pow(kmax / kmin, t);
  }
  const auto rows = eigenvalue_curve(cfg.alpha, grid, disc, st.top_k);

  const std::string states = bound_states_json(rep.states);
  const std::string table = eigenvalue_curve_csv(rows);
  if (o.out_path.empty()) {
    out << states;
  } else {
    write_file(o.out_path + ".json", states);
    write_file(o.out_path + ".csv", table);
    out << rep.states.size() << " state(s); wrote " << o.out_path << ".json, "
        << o.out_path << ".csv\n";
  }
  return 0;
}

int run_sweep(const RunConfig& cfg, const CommonOpts& o, std::ostream& out) {
  if (!cfg.sweep) throw ConfigError("sweep: config needs a sweep block");
  const SweepDef& sw = *cfg.sweep;
  std::ostringstream csv;

  if (sw.param == "kappa") {
    if (!cfg.curve) throw ConfigError("sweep kappa: config needs a curve");
    Curve curve = make_curve(*cfg.curve);
    const double kmax_req = sw.values.back();
    const int n_eff = std::max(
        cfg.solver.n,
        static_cast<int>(std::ceil(4.0 * kmax_req * curve.length() * 1.02)) + 1);
    Discretization disc = Discretization::build(curve, n_eff, cfg.solver.rule);
    csv << "kappa,mu_max\n";
    for (double kappa : sw.values) {
      BSMatrix b = assemble_bs_matrix(cfg.alpha, kappa, disc);
      csv << format_double(kappa) << ","
          << format_double(largest_eigenvalue(b).value) << "\n";
    }
    emit(o, csv.str(), out);
    return 0;
  }

  csv << sw.param << (sw.command == Command::CConst ? ",c" : ",bound") << "\n";
  for (double v : sw.values) {
    RunConfig item = cfg;
    if (sw.param == "beta") {
      if (!item.curve || item.curve->builtin != "angle") {
        throw ConfigError("sweep beta: curve must be the angle builtin");
      }
      item.curve->params["beta"] = v;
    } else if (sw.param == "alpha") {
      item.alpha = v;
      if (!(v > 0.0)) throw ConfigError("sweep alpha: values must be positive");
    } else if (sw.param == "n") {
      const int n = static_cast<int>(v);
      if (n < 16) throw ConfigError("sweep n: values must be >= 16");
      item.solver.n = n;
      if (item.curve) item.curve->samples_n = std::max(8, n);
      item.solver.grid_m = std::max(16, n);
    }
    if (sw.command == Command::CConst) {
      if (!item.curve) throw ConfigError("sweep: cconst needs a curve");
      Curve curve = make_curve(*item.curve);
      ChordArcResult r =
          chord_arc_constant(curve, item.solver.grid_m, item.solver.refine_r);
      csv << format_double(v) << "," << format_double(r.c) << "\n";
    } else {
      SolverSettings st = item.solver;
      st.find_states = false;
      SpectralReport rep;
      if (item.graph) {
        rep = graph_bound(*item.graph, item.alpha, st);
      } else if (item.curve) {
        rep = verify_report(make_curve(*item.curve), item.alpha, st);
      } else {
        throw ConfigError("sweep: bound needs a curve or a graph");
      }
      csv << format_double(v) << "," << format_double(rep.bound) << "\n";
    }
  }
  emit(o, csv.str(), out);
  return 0;
}

int run_selftest_k0(const CommonOpts& o, std::ostream& out) {
  struct Case {
    double kappa, c;
  };
  const Case cases[] = {{1.0, 1.0}, {2.0, 0.5}, {10.0, 1.0},
                        {0.3, 2.0}, {5.0, 5.0}, {0.25, 0.125}};
  std::ostringstream os;
  os << "kappa,c,integral,closed_form,residual\n";
  double worst = 0.0;
  for (const Case& cs : cases) {
    const double integral = k0_integral_check(cs.kappa, cs.c);
    const double closed = kPi / (cs.kappa * cs.c);
    const double residual = std::fabs(integral - closed);
    worst = std::max(worst, residual);
    os << format_double(cs.kappa) << "," << format_double(cs.c) << ","
       << format_double(integral) << "," << format_double(closed) << ","
       << format_double(residual) << "\n";
  }
  emit(o, os.str(), out);
  if (o.out_path.empty() && o.verbose) {
    out << "kernels: " << simd::active_kernels().name << "\n";
  }
  if (worst > 1e-8) {
    out << "selftest-k0 FAILED: residual " << format_double(worst) << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"spectral lower bounds and bound states of planar leaky wires"};
  app.require_subcommand(1);

  CommonOpts o_cconst, o_spectrum, o_bound, o_sweep, o_self;
  auto* c1 = app.add_subcommand("cconst", "chord-arc constant of a curve");
  add_common(c1, o_cconst, true);
  auto* c2 = app.add_subcommand("spectrum",
                                "bound states + eigenvalue table");
  add_common(c2, o_spectrum, true);
  auto* c3 = app.add_subcommand("bound", "spectral report with verdicts");
  add_common(c3, o_bound, true);
  auto* c4 = app.add_subcommand("sweep", "sweep one declared parameter");
  add_common(c4, o_sweep, true);
  auto* c5 = app.add_subcommand("selftest-k0",
                                "Macdonald integral identity residuals");
  add_common(c5, o_self, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out << app.help();
      return 0;
    }
    err << "argument error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c5->parsed()) {
      set_compute_threads(o_self.threads);
      return run_selftest_k0(o_self, out);
    }
    const CommonOpts& o = c1->parsed()   ? o_cconst
                          : c2->parsed() ? o_spectrum
                          : c3->parsed() ? o_bound
                                         : o_sweep;
    set_compute_threads(o.threads);
    RunConfig cfg = parse_config_file(o.config_path);
    if (c1->parsed()) return run_cconst(cfg, o, out);
    if (c2->parsed()) {
      cfg.command = Command::Spectrum;
      return run_spectrum(cfg, o, out);
    }
    if (c3->parsed()) {
      cfg.command = Command::Bound;
      return run_bound(cfg, o, out);
    }
    cfg.command = Command::Sweep;
    return run_sweep(cfg, o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const BoundUndefinedError& e) {
    err << "bound undefined: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace lqw
