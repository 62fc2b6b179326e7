#include "ergonode/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ergonode {

Eigen::MatrixXd svd_coordinates(const Eigen::MatrixXd& U) {
  if (U.norm() == 0.0)
    throw std::invalid_argument("svd_coordinates needs a nonzero matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(U, Eigen::ComputeThinV);
  return U * svd.matrixV();
}

ProcrustesResult procrustes_align(const Eigen::MatrixXd& U1,
                                  const Eigen::MatrixXd& U2) {
  if (U1.rows() != U2.rows() || U1.cols() != U2.cols())
    throw std::invalid_argument("procrustes shapes must match");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      U2.transpose() * U1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ProcrustesResult result;
  result.rotation = svd.matrixU() * svd.matrixV().transpose();
  result.distance = (U1 - U2 * result.rotation).norm();
  return result;
}

namespace {

ClusterStats cluster_stats(const Eigen::MatrixXd& U,
                           const std::vector<int>& members) {
  const int d = static_cast<int>(U.cols());
  ClusterStats stats;
  stats.mean = Eigen::VectorXd::Zero(d);
  for (int i : members) stats.mean += U.row(i).transpose();
  stats.mean /= static_cast<double>(members.size());
  stats.covariance = Eigen::MatrixXd::Zero(d, d);
  for (int i : members) {
    const Eigen::VectorXd delta = U.row(i).transpose() - stats.mean;
    stats.covariance += delta * delta.transpose();
  }
  stats.covariance /= static_cast<double>(members.size());
  return stats;
}

}  // namespace

double snr_1d(const Eigen::MatrixXd& U, const std::vector<int>& labels,
              bool projection_normalized) {
  if (static_cast<Eigen::Index>(labels.size()) != U.rows())
    throw std::invalid_argument("label count must match embedding rows");
  std::vector<int> groups[2];
  std::vector<int> distinct;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), labels[i]);
    std::size_t g;
    if (it == distinct.end()) {
      if (distinct.size() == 2)
        throw std::invalid_argument("snr_1d needs exactly 2 communities");
      distinct.push_back(labels[i]);
      g = distinct.size() - 1;
    } else {
      g = static_cast<std::size_t>(it - distinct.begin());
    }
    groups[g].push_back(static_cast<int>(i));
  }
  if (distinct.size() != 2)
    throw std::invalid_argument("snr_1d needs exactly 2 communities");
  for (const auto& group : groups)
    if (group.size() < 2)
      throw std::invalid_argument("each community needs at least 2 members");

  const ClusterStats s1 = cluster_stats(U, groups[0]);
  const ClusterStats s2 = cluster_stats(U, groups[1]);
  const Eigen::VectorXd delta = s1.mean - s2.mean;
  const double separation = delta.squaredNorm();
  double eta1 = delta.dot(s1.covariance * delta);
  double eta2 = delta.dot(s2.covariance * delta);
  if (projection_normalized && separation > 0.0) {
    eta1 /= separation;
    eta2 /= separation;
  }
  const double noise = 0.5 * (eta1 + eta2);
  if (noise == 0.0) {
    if (separation == 0.0)
      throw std::invalid_argument("snr_1d is 0/0 for identical point masses");
    return std::numeric_limits<double>::infinity();
  }
  return separation / noise;
}

double gram_distance(const Eigen::MatrixXd& U1, const Eigen::MatrixXd& U2,
                     bool normalized) {
  if (U1.rows() != U2.rows())
    throw std::invalid_argument("gram_distance needs matching node counts");
  const Eigen::MatrixXd G1 = U1 * U1.transpose();
  const Eigen::MatrixXd G2 = U2 * U2.transpose();
  const double raw = (G1 - G2).norm();
  if (!normalized) return raw;
  const double denom = std::max(G1.norm(), G2.norm());
  if (denom == 0.0)
    throw std::invalid_argument("normalized gram_distance of two zero Grams");
  return raw / denom;
}

namespace {

// Chi-square CDF with 2 degrees of freedom, inverted by bisection.
double chi2_quantile_2dof(double confidence) {
  if (confidence <= 0.0 || confidence >= 1.0)
    throw std::invalid_argument("confidence must be in (0,1)");
  auto cdf = [](double x) { return 1.0 - std::exp(-0.5 * x); };
  double lo = 0.0, hi = 1.0;
  while (cdf(hi) < confidence) hi *= 2.0;
  for (int b = 0; b < 200; ++b) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < confidence)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GaussianEllipse gaussian_ellipse(const Eigen::MatrixXd& points,
                                 double confidence) {
  if (points.cols() != 2)
    throw std::invalid_argument("gaussian_ellipse needs 2-D points");
  if (points.rows() < 3)
    throw std::invalid_argument("gaussian_ellipse needs at least 3 points");
  GaussianEllipse ellipse;
  ellipse.center = points.colwise().mean().transpose();
  const Eigen::MatrixXd centered = points.rowwise() - ellipse.center.transpose();
  ellipse.covariance =
      (centered.transpose() * centered) / static_cast<double>(points.rows());
  ellipse.scale = chi2_quantile_2dof(confidence);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(ellipse.covariance);
  const double top = eig.eigenvalues()(1);
  ellipse.degenerate = eig.eigenvalues()(0) <= 1e-12 * std::max(top, 1.0);
  return ellipse;
}

Eigen::MatrixXd spectral_embedding(const Graph& g, int d) {
  if (d < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  const Eigen::VectorXd deg = g.degrees();
  for (int i = 0; i < g.n(); ++i)
    if (deg(i) <= 0.0)
      throw std::runtime_error("degenerate node " + std::to_string(i) +
                               " has zero degree; smooth the graph first");
  const Eigen::VectorXd inv_sqrt = deg.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd M =
      inv_sqrt.asDiagonal() * g.adjacency * inv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const int n = g.n();
  const double root_n = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd U(n, d);
  for (int c = 0; c < d; ++c) {
    Eigen::VectorXd v = eig.eigenvectors().col(n - 1 - c);
    for (int i = 0; i < n; ++i) {
      if (v(i) != 0.0) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    U.col(c) = root_n * v;
  }
  return U;
}

}  // namespace ergonode
