#include "ergonode/nuc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "ergonode/objective.hpp"
#include "ergonode/rng.hpp"

namespace ergonode {

namespace {

// Top algebraic eigenpair of a symmetric matrix by restarted power
// iteration with Rayleigh-Ritz extraction over a reorthogonalized Krylov
// block {x, Mx, ..., M^(k-1) x}. The Ritz step resolves the near-degenerate
// top clusters that defeat plain power iteration while keeping the
// deterministic all-ones start vector (re-randomized from the seed on
// stagnation).
struct EigenPair {
  double value;
  Eigen::VectorXd vector;
};

EigenPair top_eigenpair(const Eigen::MatrixXd& M, double tol,
                        std::uint64_t seed) {
  const int n = static_cast<int>(M.rows());
  const int kmax = std::min(n, 12);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
  double best_residual = std::numeric_limits<double>::infinity();
  int stagnant = 0;
  for (int iter = 0; iter < 5000; ++iter) {
    // Krylov basis with two-pass Gram-Schmidt reorthogonalization.
    Eigen::MatrixXd V(n, kmax);
    int k = 0;
    Eigen::VectorXd candidate = x;
    while (k < kmax) {
      const double before = candidate.norm();
      for (int pass = 0; pass < 2; ++pass)
        for (int b = 0; b < k; ++b)
          candidate -= V.col(b).dot(candidate) * V.col(b);
      const double after = candidate.norm();
      if (after <= 1e-10 * std::max(before, 1e-300)) break;
      V.col(k) = candidate / after;
      ++k;
      candidate = M * V.col(k - 1);
    }
    const Eigen::MatrixXd B = V.leftCols(k).transpose() * M * V.leftCols(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(
        0.5 * (B + B.transpose()));
    x = (V.leftCols(k) * ritz.eigenvectors().col(k - 1)).normalized();
    const double rayleigh = ritz.eigenvalues()(k - 1);

    const double residual = (M * x - rayleigh * x).norm();
    if (residual <= tol * std::max(1.0, std::abs(rayleigh)))
      return {rayleigh, x};
    if (residual < 0.9 * best_residual) {
      best_residual = residual;
      stagnant = 0;
    } else if (++stagnant >= 50) {
      SplitMix64 rng(mix_seed(seed, 0x706f776572ULL, iter));
      for (int i = 0; i < n; ++i) x(i) = rng.next_double() - 0.5;
      x.normalize();
      best_residual = std::numeric_limits<double>::infinity();
      stagnant = 0;
    }
  }
  throw std::runtime_error("power iteration did not converge");
}

// Directional derivative g(gamma) = <grad f(X + gamma*D), D>.
double directional_derivative(const Eigen::MatrixXd& positive,
                              const Eigen::MatrixXd& negative,
                              const Eigen::MatrixXd& X,
                              const Eigen::MatrixXd& D, double gamma) {
  double g = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      const double d = D(i, j);
      if (d == 0.0) continue;
      const double x = X(i, j) + gamma * d;
      g += d * (-positive(i, j) * sigmoid(-x) + negative(i, j) * sigmoid(x));
    }
  return g;
}

}  // namespace

Eigen::MatrixXd frank_wolfe_atom(const Eigen::MatrixXd& gradient, double nu,
                                 double eig_tol, std::uint64_t seed) {
  if (nu < 0.0) throw std::invalid_argument("nuclear norm bound must be >= 0");
  const int n = static_cast<int>(gradient.rows());
  if (nu == 0.0) return Eigen::MatrixXd::Zero(n, n);
  const EigenPair top = top_eigenpair(-gradient, eig_tol, seed);
  if (top.value <= 0.0) return Eigen::MatrixXd::Zero(n, n);
  return nu * top.vector * top.vector.transpose();
}

NucResult solve_nuc(const Eigen::MatrixXd& positive,
                    const Eigen::MatrixXd& negative, const NucConfig& cfg) {
  if (cfg.nu < 0.0)
    throw std::invalid_argument("nuclear norm bound must be >= 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const int n = static_cast<int>(positive.rows());

  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
  if (cfg.init == NucInit::ScaledPmi && cfg.nu > 0.0) {
    LimitCoefficients limits{positive, negative, LimitRegime::ErgodicL};
    const Eigen::MatrixXd pmi = gram_ergo_pmi(limits).clipped(cfg.pmi_floor);
    X = project_psd_rank(pmi, n);
    const double tr = X.trace();
    if (tr > cfg.nu) X *= cfg.nu / tr;
  }

  NucResult result;
  double objective = objective_value(positive, negative, X);
  const double gap_tol =
      cfg.gap_tol > 0.0 ? cfg.gap_tol : 1e-7 * std::max(objective, 1e-300);

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    const Eigen::MatrixXd G = objective_gradient(positive, negative, X);
    const Eigen::MatrixXd S =
        frank_wolfe_atom(G, cfg.nu, cfg.eig_tol, cfg.seed);
    const double gap = (G.array() * (X - S).array()).sum();
    result.trace.push_back({iter, objective, gap, X.trace()});
    result.final_gap = gap;
    if (gap <= gap_tol) break;

    const Eigen::MatrixXd D = S - X;
    double gamma;
    if (cfg.fixed_step_schedule) {
      gamma = 2.0 / (iter + 1.0);
    } else {
      // phi(gamma) = f(X + gamma*D) is convex; bisect its derivative.
      double lo = 0.0, hi = 1.0;
      if (directional_derivative(positive, negative, X, D, 0.0) >= 0.0) {
        gamma = 0.0;
      } else if (directional_derivative(positive, negative, X, D, 1.0) <=
                 0.0) {
        gamma = 1.0;
      } else {
        for (int b = 0; b < 60; ++b) {
          const double mid = 0.5 * (lo + hi);
          if (directional_derivative(positive, negative, X, D, mid) < 0.0)
            lo = mid;
          else
            hi = mid;
        }
        gamma = 0.5 * (lo + hi);
      }
    }
    if (gamma == 0.0 && !cfg.fixed_step_schedule) break;
    X += gamma * D;
    objective = objective_value(positive, negative, X);
  }
  result.gram = std::move(X);
  return result;
}

void save_nuc_trace_csv(const std::vector<NucTraceRow>& trace,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  out.precision(17);
  out << "iter,objective,fw_gap,trace_norm\n";
  for (const NucTraceRow& row : trace)
    out << row.iter << ',' << row.objective << ',' << row.fw_gap << ','
        << row.trace_norm << '\n';
}

}  // namespace ergonode
