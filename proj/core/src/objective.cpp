#include "ergonode/objective.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ergonode/rng.hpp"

namespace ergonode {

double logistic_loss(double t) {
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

namespace {

void require_same_shape(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                        const Eigen::MatrixXd& c) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != c.rows() ||
      a.cols() != c.cols())
    throw std::invalid_argument("coefficient/variable shape mismatch");
}

}  // namespace

double objective_value(const Eigen::MatrixXd& positive,
                       const Eigen::MatrixXd& negative,
                       const Eigen::MatrixXd& X) {
  require_same_shape(positive, negative, X);
  double f = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      f += positive(i, j) * logistic_loss(X(i, j)) +
           negative(i, j) * logistic_loss(-X(i, j));
  return f;
}

Eigen::MatrixXd objective_gradient(const Eigen::MatrixXd& positive,
                                   const Eigen::MatrixXd& negative,
                                   const Eigen::MatrixXd& X) {
  require_same_shape(positive, negative, X);
  Eigen::MatrixXd G(X.rows(), X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      G(i, j) = -positive(i, j) * sigmoid(-X(i, j)) +
                negative(i, j) * sigmoid(X(i, j));
  return G;
}

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& U) {
  return U * U.transpose();
}

Eigen::MatrixXd factorize_gram(const Eigen::MatrixXd& X, int d) {
  if (d < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (X + X.transpose()));
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const int n = static_cast<int>(X.rows());
  const double top = std::max(std::abs(lambda(0)), std::abs(lambda(n - 1)));
  if (lambda(0) < -1e-6 * std::max(top, 1.0))
    throw std::invalid_argument(
        "factorize_gram input is not PSD; run project_psd_rank first");
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, d);
  for (int r = 0; r < std::min(d, n); ++r) {
    const int idx = n - 1 - r;
    const double kept = std::max(lambda(idx), 0.0);
    U.col(r) = std::sqrt(kept) * eig.eigenvectors().col(idx);
  }
  return U;
}

namespace {

// Minimized Frobenius distance over orthogonal alignments, used for the
// per-epoch embedding-change trace.
double procrustes_distance(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      B.transpose() * A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd P = svd.matrixU() * svd.matrixV().transpose();
  return (A - B * P).norm();
}

struct WeightedPair {
  int i;
  int j;
  double weight;
  double sign;  // +1 attract, -1 repel
};

}  // namespace

SgdResult solve_embeddings_sgd(const Eigen::MatrixXd& positive,
                               const Eigen::MatrixXd& negative,
                               const SgdConfig& cfg) {
  require_same_shape(positive, negative, positive);
  if (positive.minCoeff() < 0.0 || negative.minCoeff() < 0.0)
    throw std::invalid_argument("coefficient matrices must be nonnegative");
  if (cfg.dim < 1 || cfg.epochs < 1 || cfg.learning_rate <= 0.0 ||
      cfg.init_scale <= 0.0)
    throw std::invalid_argument("invalid SGD configuration");

  const int n = static_cast<int>(positive.rows());
  std::vector<WeightedPair> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (positive(i, j) != 0.0) pairs.push_back({i, j, positive(i, j), 1.0});
      if (negative(i, j) != 0.0) pairs.push_back({i, j, negative(i, j), -1.0});
    }
  }

  SplitMix64 rng(mix_seed(cfg.seed, 0x73676472756eULL));
  // Gaussian init via Box-Muller, sd = init_scale/sqrt(d).
  Eigen::MatrixXd U(n, cfg.dim);
  const double sd = cfg.init_scale / std::sqrt(static_cast<double>(cfg.dim));
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < cfg.dim; ++c) {
      double u1 = rng.next_double();
      while (u1 == 0.0) u1 = rng.next_double();
      const double u2 = rng.next_double();
      U(i, c) = sd * std::sqrt(-2.0 * std::log(u1)) *
                std::cos(2.0 * M_PI * u2);
    }
  }

  // Adam state.
  Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(n, cfg.dim);
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(n, cfg.dim);
  const double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
  double beta1_pow = 1.0, beta2_pow = 1.0;

  SgdResult result;
  Eigen::MatrixXd previous = U;
  double previous_objective =
      objective_value(positive, negative, gram_matrix(U));

  Eigen::VectorXd grad_i(cfg.dim), grad_j(cfg.dim);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    // Fisher-Yates shuffle from the run stream.
    for (std::size_t t = pairs.size(); t > 1; --t)
      std::swap(pairs[t - 1], pairs[rng.next_below(t)]);

    beta1_pow *= beta1;
    beta2_pow *= beta2;
    for (const WeightedPair& pair : pairs) {
      const double x = U.row(pair.i).dot(U.row(pair.j));
      const double coef = -pair.weight * pair.sign * sigmoid(-pair.sign * x);
      if (pair.i == pair.j) {
        grad_i = 2.0 * coef * U.row(pair.i).transpose();
        for (int c = 0; c < cfg.dim; ++c) {
          double& m = m1(pair.i, c);
          double& v = m2(pair.i, c);
          m = beta1 * m + (1.0 - beta1) * grad_i(c);
          v = beta2 * v + (1.0 - beta2) * grad_i(c) * grad_i(c);
          U(pair.i, c) -= cfg.learning_rate * (m / (1.0 - beta1_pow)) /
                          (std::sqrt(v / (1.0 - beta2_pow)) + adam_eps);
        }
        continue;
      }
      grad_i = coef * U.row(pair.j).transpose();
      grad_j = coef * U.row(pair.i).transpose();
      for (int c = 0; c < cfg.dim; ++c) {
        double& mi = m1(pair.i, c);
        double& vi = m2(pair.i, c);
        mi = beta1 * mi + (1.0 - beta1) * grad_i(c);
        vi = beta2 * vi + (1.0 - beta2) * grad_i(c) * grad_i(c);
        U(pair.i, c) -= cfg.learning_rate * (mi / (1.0 - beta1_pow)) /
                        (std::sqrt(vi / (1.0 - beta2_pow)) + adam_eps);
        double& mj = m1(pair.j, c);
        double& vj = m2(pair.j, c);
        mj = beta1 * mj + (1.0 - beta1) * grad_j(c);
        vj = beta2 * vj + (1.0 - beta2) * grad_j(c) * grad_j(c);
        U(pair.j, c) -= cfg.learning_rate * (mj / (1.0 - beta1_pow)) /
                        (std::sqrt(vj / (1.0 - beta2_pow)) + adam_eps);
      }
    }

    const double objective =
        objective_value(positive, negative, gram_matrix(U));
    if (!std::isfinite(objective))
      throw std::runtime_error(
          "SGD diverged (non-finite objective); reduce learning rate " +
          std::to_string(cfg.learning_rate));
    result.trace.push_back(
        {epoch, objective, procrustes_distance(U, previous)});
    const double rel_change =
        std::abs(previous_objective - objective) /
        std::max(std::abs(previous_objective), 1e-300);
    previous = U;
    previous_objective = objective;
    if (epoch > 1 && rel_change < cfg.tol_objective) break;
  }
  result.embeddings = std::move(U);
  return result;
}

void save_embeddings_csv(const Eigen::MatrixXd& U,
                         const std::vector<int>& labels,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embeddings: " + path);
  out.precision(17);
  out << "node,label";
  for (Eigen::Index c = 0; c < U.cols(); ++c) out << ",x" << (c + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    out << i << ','
        << (labels.empty() ? -1 : labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index c = 0; c < U.cols(); ++c) out << ',' << U(i, c);
    out << '\n';
  }
}

Eigen::MatrixXd load_embeddings_csv(const std::string& path,
                                    std::vector<int>* labels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty embedding file: " + path);
  std::vector<std::vector<double>> rows;
  if (labels) labels->clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');  // node id
    std::getline(ls, cell, ',');
    if (labels) labels->push_back(std::stoi(cell));
    std::vector<double> coords;
    while (std::getline(ls, cell, ',')) coords.push_back(std::stod(cell));
    rows.push_back(std::move(coords));
  }
  Eigen::MatrixXd U(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < rows[i].size(); ++c) U(i, c) = rows[i][c];
  return U;
}

void save_sgd_trace_csv(const std::vector<SgdTraceRow>& trace,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  out.precision(17);
  out << "epoch,objective,procrustes_change\n";
  for (const SgdTraceRow& row : trace)
    out << row.epoch << ',' << row.objective << ',' << row.procrustes_change
        << '\n';
}

}  // namespace ergonode
