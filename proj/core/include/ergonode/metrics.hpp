#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ergonode/graph.hpp"

namespace ergonode {

/// Per-community mean, population covariance, and variance projected onto
/// the inter-centroid direction.
struct ClusterStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // population (1/n) normalization
  double projected_variance = 0.0;
};

/// Rotates U onto its right singular vectors: columns of the result are
/// orthogonal with norms equal to the singular values.
Eigen::MatrixXd svd_coordinates(const Eigen::MatrixXd& U);

struct ProcrustesResult {
  Eigen::MatrixXd rotation;  // orthogonal d x d
  double distance = 0.0;     // minimized ||U1 - U2 P||_F
};

/// P = argmin ||U1 - U2 P||_F over orthogonal P, via the polar factor of
/// U2^T U1.
ProcrustesResult procrustes_align(const Eigen::MatrixXd& U1,
                                  const Eigen::MatrixXd& U2);

/// ||mu1 - mu2||^2 / (0.5 (eta1^2 + eta2^2)) with
/// eta_i^2 = (mu1-mu2)^T K_i (mu1-mu2), population covariance.
/// With projection_normalized the eta^2 are divided by ||mu1-mu2||^2,
/// matching the line-projection variance reading.
double snr_1d(const Eigen::MatrixXd& U, const std::vector<int>& labels,
              bool projection_normalized = false);

/// ||U1 U1^T - U2 U2^T||_F, optionally divided by the larger Gram norm.
double gram_distance(const Eigen::MatrixXd& U1, const Eigen::MatrixXd& U2,
                     bool normalized);

struct GaussianEllipse {
  Eigen::Vector2d center;
  Eigen::Matrix2d covariance;
  double scale = 0.0;  // chi-square 2-dof quantile at the confidence level
  bool degenerate = false;
};

/// MLE Gaussian fit of 2-D points; scale from numeric chi-square CDF
/// inversion (0.95 -> about 5.99146).
GaussianEllipse gaussian_ellipse(const Eigen::MatrixXd& points,
                                 double confidence = 0.95);

/// Rows are the top-d eigenvectors of D^{-1/2} A D^{-1/2}, unit-norm then
/// scaled by sqrt(n); sign fixed so each column's first nonzero entry is
/// positive.
Eigen::MatrixXd spectral_embedding(const Graph& g, int d);

}  // namespace ergonode
