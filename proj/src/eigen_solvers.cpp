#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "lqw/birman_schwinger.hpp"
#include "lqw/errors.hpp"
#include "lqw/simd/kernels.hpp"

namespace lqw {

namespace {

EigenPairs lanczos_eigenpairs(const BSMatrix& b, int k, int* iters_out);

EigenPairs dense_eigenpairs(const BSMatrix& b, int k) {
  const int n = b.n;
  Eigen::Map<const Eigen::MatrixXd> a(b.a.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    // The QR sweep can stall on exactly degenerate circulant-like matrices
    // (symmetric curves); the Krylov path resolves those fine.
    return lanczos_eigenpairs(b, k, nullptr);
  }
  EigenPairs out;
  const int kk = std::min(k, n);
  out.values.resize(kk);
  out.vectors.resize(kk);
  for (int j = 0; j < kk; ++j) {
    const int idx = n - 1 - j;  // Eigen sorts ascending
    out.values[j] = es.eigenvalues()(idx);
    out.vectors[j].assign(es.eigenvectors().col(idx).data(),
                          es.eigenvectors().col(idx).data() + n);
  }
  return out;
}

// Lanczos with full reorthogonalization. Converges the top-k Ritz pairs to
// residual tolerance; plain power iteration is hopeless here because the
// truncated-line matrices have relative spectral gaps of order 1e-5.
EigenPairs lanczos_eigenpairs(const BSMatrix& b, int k, int* iters_out) {
  const int n = b.n;
  const auto& kern = simd::active_kernels();
  const int m_max = std::min(n, 900);

  std::vector<double> basis;  // (m+1) x n
  basis.reserve(static_cast<std::size_t>(std::min(m_max + 1, 256)) * n);
  std::vector<double> diag, sub;
  std::vector<double> w(n);

  std::mt19937 rng(0x9e3779b9u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  basis.resize(n);
  for (int i = 0; i < n; ++i) basis[i] = gauss(rng);
  {
    double nrm = std::sqrt(kern.dot(basis.data(), basis.data(), n));
    for (int i = 0; i < n; ++i) basis[i] /= nrm;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  double theta_prev = 0.0;
  int m = 0;
  bool converged = false;

  for (int j = 0; j < m_max; ++j) {
    const double* vj = basis.data() + static_cast<std::size_t>(j) * n;
    kern.matvec(b.a.data(), n, vj, w.data());
    if (j > 0) {
      kern.axpy(-sub[j - 1], basis.data() + static_cast<std::size_t>(j - 1) * n,
                w.data(), n);
    }
    const double aj = kern.dot(w.data(), vj, n);
    diag.push_back(aj);
    kern.axpy(-aj, vj, w.data(), n);
    // Two passes of full reorthogonalization.
    for (int pass = 0; pass < 2; ++pass) {
      for (int l = 0; l <= j; ++l) {
        const double* vl = basis.data() + static_cast<std::size_t>(l) * n;
        const double c = kern.dot(w.data(), vl, n);
        if (c != 0.0) kern.axpy(-c, vl, w.data(), n);
      }
    }
    const double bj = std::sqrt(kern.dot(w.data(), w.data(), n));
    m = j + 1;

    const bool invariant = bj < 1e-14 * std::max(1.0, std::fabs(aj));
    const bool check = invariant || m == m_max || (m >= k + 2 && m % 8 == 0);
    if (check) {
      Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(diag.data(), m);
      Eigen::VectorXd e(m > 1 ? m - 1 : 0);
      for (int t = 0; t + 1 < m; ++t) e(t) = sub[t];
      tri.computeFromTridiagonal(d, e);
      const double theta1 = tri.eigenvalues()(m - 1);
      bool all_ok = m >= k;
      for (int t = 0; t < std::min(k, m) && all_ok; ++t) {
        const double res =
            bj * std::fabs(tri.eigenvectors()(m - 1, m - 1 - t));
        if (res > 1e-11 * std::max(std::fabs(theta1), 1e-8)) all_ok = false;
      }
      const bool stagnant =
          std::fabs(theta1 - theta_prev) < 1e-13 * std::max(1.0, theta1);
      theta_prev = theta1;
      if (invariant || (all_ok && m >= k) || (stagnant && m > 64 && m >= k)) {
        converged = true;
        break;
      }
    }
    if (m == m_max) break;
    sub.push_back(bj);
    basis.resize(static_cast<std::size_t>(m + 1) * n);
    double* vnext = basis.data() + static_cast<std::size_t>(m) * n;
    for (int i = 0; i < n; ++i) vnext[i] = w[i] / bj;
  }

  if (!converged) {
    throw ConvergenceError("lanczos: ritz values did not converge",
                           theta_prev);
  }
  if (iters_out) *iters_out = m;

  EigenPairs out;
  const int kk = std::min(k, m);
  out.values.resize(kk);
  out.vectors.resize(kk);
  for (int t = 0; t < kk; ++t) {
    out.values[t] = tri.eigenvalues()(m - 1 - t);
    std::vector<double> x(n, 0.0);
    for (int l = 0; l < m; ++l) {
      kern.axpy(tri.eigenvectors()(l, m - 1 - t),
                basis.data() + static_cast<std::size_t>(l) * n, x.data(), n);
    }
    double nrm = std::sqrt(kern.dot(x.data(), x.data(), n));
    if (nrm > 0.0) {
      for (double& v : x) v /= nrm;
    }
    out.vectors[t] = std::move(x);
  }
  return out;
}

}  // namespace

EigenPairs top_eigenpairs(const BSMatrix& b, int k, int dense_cutoff) {
  if (k < 1) throw DomainError("top_eigenpairs: k must be >= 1");
  if (b.n <= dense_cutoff) return dense_eigenpairs(b, k);
  return lanczos_eigenpairs(b, k, nullptr);
}

LargestEig largest_eigenvalue(const BSMatrix& b) {
  LargestEig r;
  int iters = 0;
  EigenPairs p = b.n <= 64 ? dense_eigenpairs(b, 1)
                           : lanczos_eigenpairs(b, 1, &iters);
  r.value = p.values.at(0);
  r.vector = std::move(p.vectors.at(0));
  r.iterations = iters;
  return r;
}

std::vector<EigenCurveRow> eigenvalue_curve(double alpha,
                                            const std::vector<double>& kappas,
                                            const Discretization& disc,
                                            int top_k) {
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    if (!(kappas[i] > 0.0)) {
      throw DomainError("eigenvalue_curve: kappa grid must be positive");
    }
    if (i > 0 && !(kappas[i] > kappas[i - 1])) {
      throw DomainError("eigenvalue_curve: kappa grid must be increasing");
    }
  }
  std::vector<EigenCurveRow> rows;
  rows.reserve(kappas.size());
  for (double kappa : kappas) {
    BSMatrix b = assemble_bs_matrix(alpha, kappa, disc);
    EigenPairs p = top_eigenpairs(b, top_k);
    EigenCurveRow row;
    row.kappa = kappa;
    row.mu = p.values;
    rows.push_back(std::move(row));
  }
  return rows;
}

BoundStateSearch find_bound_states(double alpha, double kappa_min,
                                   double kappa_max,
                                   const Discretization& disc, int top_k,
                                   double mu_tol, double bracket_floor) {
  if (!(0.0 < kappa_min) || !(kappa_min < kappa_max)) {
    throw DomainError("find_bound_states: need 0 < kappa_min < kappa_max");
  }
  const double spacing = disc.min_spacing() <= 0.0
                             ? disc.weights.front()
                             : disc.min_spacing();
  if (spacing > 1.0 / (4.0 * kappa_max) * (1.0 + 1e-12)) {
    throw DomainError(
        "find_bound_states: node spacing too coarse for kappa_max "
        "(need h <= 1/(4 kappa_max))");
  }

  std::map<double, EigenPairs> cache;
  auto eval = [&](double kappa) -> const EigenPairs& {
    auto it = cache.find(kappa);
    if (it == cache.end()) {
      BSMatrix b = assemble_bs_matrix(alpha, kappa, disc);
      it = cache.emplace(kappa, top_eigenpairs(b, top_k)).first;
    }
    return it->second;
  };

  BoundStateSearch out;
  const EigenPairs& at_min = eval(kappa_min);
  const EigenPairs& at_max = eval(kappa_max);

  for (int j = 0; j < top_k; ++j) {
    const double mu_lo_end =
        j < static_cast<int>(at_min.values.size()) ? at_min.values[j] : 0.0;
    const double mu_hi_end =
        j < static_cast<int>(at_max.values.size()) ? at_max.values[j] : 0.0;
    if (mu_lo_end < 1.0) {
      out.notes.push_back("branch " + std::to_string(j) +
                          ": mu < 1 on the whole bracket (no state)");
      continue;
    }
    if (mu_hi_end > 1.0) {
      out.notes.push_back("branch " + std::to_string(j) +
                          ": mu > 1 at kappa_max (root beyond bracket)");
      continue;
    }
    double lo = kappa_min, hi = kappa_max;
    double mid = 0.5 * (lo + hi);
    double residual = std::numeric_limits<double>::infinity();
    while (hi - lo > bracket_floor) {
      mid = 0.5 * (lo + hi);
      const EigenPairs& p = eval(mid);
      const double mu =
          j < static_cast<int>(p.values.size()) ? p.values[j] : 0.0;
      residual = std::fabs(mu - 1.0);
      if (residual <= mu_tol) break;
      if (mu > 1.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    BoundState st;
    st.kappa = mid;
    st.lambda = -mid * mid;
    st.branch = j;
    st.residual = residual;
    st.bracket_lo = lo;
    st.bracket_hi = hi;
    const EigenPairs& p = eval(mid);
    if (j < static_cast<int>(p.vectors.size())) st.eigenvector = p.vectors[j];
    out.states.push_back(std::move(st));
  }

  std::sort(out.states.begin(), out.states.end(),
            [](const BoundState& a, const BoundState& b) {
              return a.lambda < b.lambda;
            });
  // Degenerate branches cross 1 at (numerically) equal kappa; group them.
  for (std::size_t i = 0; i < out.states.size(); ++i) {
    int mult = 1;
    for (std::size_t j2 = 0; j2 < out.states.size(); ++j2) {
      if (i == j2) continue;
      const double tol =
          std::max(1e-8, 1e-6 * out.states[i].kappa);
      if (std::fabs(out.states[i].kappa - out.states[j2].kappa) <= tol) ++mult;
    }
    out.states[i].multiplicity = mult;
  }
  return out;
}

}  // namespace lqw
