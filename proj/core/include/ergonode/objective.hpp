#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace ergonode {

/// Numerically stable sigma(t) = ln(1 + e^{-t}).
double logistic_loss(double t);
/// Numerically stable 1 / (1 + e^{-t}).
double sigmoid(double t);

/// f(N+, N-, X) = sum_ij [ N+_ij sigma(X_ij) + N-_ij sigma(-X_ij) ].
double objective_value(const Eigen::MatrixXd& positive,
                       const Eigen::MatrixXd& negative,
                       const Eigen::MatrixXd& X);

/// dF/dX_ij = -N+_ij/(1+e^{X_ij}) + N-_ij/(1+e^{-X_ij}).
Eigen::MatrixXd objective_gradient(const Eigen::MatrixXd& positive,
                                   const Eigen::MatrixXd& negative,
                                   const Eigen::MatrixXd& X);

/// X = U U^T.
Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& U);

/// Embedding factor of a PSD matrix: U with U U^T the best rank-d PSD
/// approximation of X. Rejects significantly non-PSD input.
Eigen::MatrixXd factorize_gram(const Eigen::MatrixXd& X, int d);

struct SgdConfig {
  int dim = 2;
  double learning_rate = 0.02;  // ErgoVEC linear-regime default
  int epochs = 400;
  double init_scale = 0.1;
  std::uint64_t seed = 0;
  double tol_objective = 1e-6;  // relative per-epoch change stop
};

struct SgdTraceRow {
  int epoch;
  double objective;
  double procrustes_change;
};

struct SgdResult {
  Eigen::MatrixXd embeddings;  // n x d
  std::vector<SgdTraceRow> trace;
};

/// Minimizes f(N+, N-, U U^T) by shuffled passes over the weighted pair
/// set with adaptive-moment per-parameter steps. Deterministic given seed.
SgdResult solve_embeddings_sgd(const Eigen::MatrixXd& positive,
                               const Eigen::MatrixXd& negative,
                               const SgdConfig& cfg);

// Embedding CSV "node,label,x1..xd"; trace CSV
// "epoch,objective,procrustes_change".
void save_embeddings_csv(const Eigen::MatrixXd& U,
                         const std::vector<int>& labels,
                         const std::string& path);
Eigen::MatrixXd load_embeddings_csv(const std::string& path,
                                    std::vector<int>* labels = nullptr);
void save_sgd_trace_csv(const std::vector<SgdTraceRow>& trace,
                        const std::string& path);

}  // namespace ergonode
