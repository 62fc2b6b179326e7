#include "ergonode/ergodic.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ergonode {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_connected(const Graph& g, const char* what) {
  if (connected_components(g).count() != 1)
    throw std::invalid_argument(std::string(what) +
                                " requires a connected graph");
}

}  // namespace

Eigen::MatrixXd PmiMatrix::clipped(double floor) const {
  Eigen::MatrixXd out = values;
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if (!finite_mask(i, j) || out(i, j) < floor) out(i, j) = floor;
  return out;
}

LimitCoefficients ergodic_limits(const Graph& g, int window, double rate) {
  if (window < 1) throw std::invalid_argument("window must be at least 1");
  if (rate < 0.0) throw std::invalid_argument("negative rate k must be >= 0");
  // W of a disconnected graph is block diagonal, so the global power sum
  // already vanishes across components.
  const Eigen::MatrixXd W = transition_matrix(g);
  const Eigen::VectorXd pi = stationary_distribution(g);
  Eigen::MatrixXd power = W;
  Eigen::MatrixXd sum = W;
  for (int v = 2; v <= window; ++v) {
    power = power * W;
    sum += power;
  }
  LimitCoefficients limits;
  limits.positive = pi.asDiagonal() * sum;
  limits.negative = rate * window * (pi * pi.transpose());
  limits.regime = LimitRegime::ErgodicL;
  return limits;
}

LimitCoefficients weighted_ergodic_limits(const Graph& g,
                                          const WeightSpec& weights,
                                          double rate, bool double_regime) {
  require_connected(g, "weighted_ergodic_limits");
  if (weights.alpha.empty()) throw std::invalid_argument("empty weight spec");
  const Eigen::MatrixXd W = transition_matrix(g);
  const Eigen::VectorXd pi = stationary_distribution(g);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.n(), g.n());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (double a : weights.alpha) {
    power = power * W;
    if (a != 0.0) sum += a * power;
  }
  LimitCoefficients limits;
  limits.positive = pi.asDiagonal() * sum;
  limits.negative = rate * weights.total() * (pi * pi.transpose());
  limits.regime = double_regime ? LimitRegime::Double : LimitRegime::ErgodicL;
  return limits;
}

LimitCoefficients finite_r_limits(const Graph& g, const WeightSpec& weights,
                                  double rate, int walk_length) {
  require_connected(g, "finite_r_limits");
  if (walk_length < 2) throw std::invalid_argument("walk length must be >= 2");
  const int n = g.n();
  const int ell = walk_length;
  const Eigen::MatrixXd W = transition_matrix(g);

  // col_sums[s] = 1^T W^{s-1} for s = 1..ell; running prefix gives
  // T_i(L) = sum_{s=1}^{L} (1^T W^{s-1})_i.
  std::vector<Eigen::RowVectorXd> prefix(ell + 1,
                                         Eigen::RowVectorXd::Zero(n));
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Ones(n);
  for (int s = 1; s <= ell; ++s) {
    prefix[s] = prefix[s - 1] + row;
    row = row * W;
  }
  // pi^{(ell)}_j = (1/ell) sum_{u=1}^{ell} (1/n) (1^T W^{u-1})_j
  const Eigen::RowVectorXd pi_ell = prefix[ell] / (ell * static_cast<double>(n));

  Eigen::MatrixXd positive = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd neg_factor = Eigen::VectorXd::Zero(n);  // indexed by i
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (int v = 1; v <= weights.max_gap(); ++v) {
    power = power * W;
    const double a = weights.alpha[v - 1];
    if (a == 0.0) continue;
    if (ell - v < 1) continue;  // empty inner sum
    const Eigen::RowVectorXd& tail = prefix[ell - v];
    for (int i = 0; i < n; ++i) {
      positive.row(i) += a * tail(i) * power.row(i);
      neg_factor(i) += a * tail(i);
    }
  }
  const double scale = 1.0 / (static_cast<double>(ell) * n);
  LimitCoefficients limits;
  limits.positive = scale * positive;
  limits.negative = rate * scale * (neg_factor * pi_ell);
  limits.regime = LimitRegime::FiniteR;
  return limits;
}

PmiMatrix empirical_pmi(const Eigen::MatrixXd& positive_counts, int window,
                        int walks_per_node, int walk_length) {
  if (positive_counts.sum() <= 0.0)
    throw std::invalid_argument("empirical PMI needs nonzero positive counts");
  const int n = static_cast<int>(positive_counts.rows());
  const double total =
      static_cast<double>(walks_per_node) * n *
      (static_cast<double>(walk_length) * window - window * (window + 1) / 2.0);
  const Eigen::MatrixXd joint = positive_counts / total;
  const Eigen::VectorXd row_marginal = joint.rowwise().sum();
  const Eigen::RowVectorXd col_marginal = joint.colwise().sum();

  PmiMatrix pmi;
  pmi.values.resize(n, n);
  pmi.finite_mask.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (joint(i, j) > 0.0) {
        pmi.values(i, j) =
            std::log(joint(i, j) / (row_marginal(i) * col_marginal(j)));
        pmi.finite_mask(i, j) = true;
      } else {
        pmi.values(i, j) = kNegInf;
        pmi.finite_mask(i, j) = false;
      }
    }
  }
  return pmi;
}

PmiMatrix gram_ergo_pmi(const LimitCoefficients& limits) {
  const int n = static_cast<int>(limits.positive.rows());
  PmiMatrix pmi;
  pmi.values.resize(n, n);
  pmi.finite_mask.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (limits.negative(i, j) <= 0.0)
        throw std::invalid_argument(
            "gram_ergo_pmi needs strictly positive negative limits");
      if (limits.positive(i, j) > 0.0) {
        pmi.values(i, j) =
            std::log(limits.positive(i, j) / limits.negative(i, j));
        pmi.finite_mask(i, j) = true;
      } else {
        pmi.values(i, j) = kNegInf;
        pmi.finite_mask(i, j) = false;
      }
    }
  }
  return pmi;
}

Eigen::MatrixXd project_psd_rank(const Eigen::MatrixXd& X, int d) {
  if (d < 1) throw std::invalid_argument("target rank must be at least 1");
  const double asym = (X - X.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    throw std::invalid_argument("project_psd_rank input is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (X + X.transpose()));
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const Eigen::MatrixXd& V = eig.eigenvectors();
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < std::min(d, n); ++r) {
    const int idx = n - 1 - r;
    const double kept = std::max(lambda(idx), 0.0);
    if (kept == 0.0) break;
    out += kept * V.col(idx) * V.col(idx).transpose();
  }
  return out;
}

void save_matrix_csv(const Eigen::MatrixXd& M, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix: " + path);
  out.precision(17);
  for (Eigen::Index j = 0; j < M.cols(); ++j) out << (j ? "," : "") << j;
  out << '\n';
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out << ',';
      if (M(i, j) == kNegInf)
        out << "-inf";
      else
        out << M(i, j);
    }
    out << '\n';
  }
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty matrix file: " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      if (cell == "-inf")
        row.push_back(kNegInf);
      else
        row.push_back(std::stod(cell));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("matrix file has no rows: " + path);
  Eigen::MatrixXd M(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size())
      throw std::runtime_error("ragged matrix file: " + path);
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
  }
  return M;
}

}  // namespace ergonode
