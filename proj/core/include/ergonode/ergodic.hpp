#pragma once

#include <Eigen/Dense>
#include <string>

#include "ergonode/graph.hpp"
#include "ergonode/walks.hpp"

namespace ergonode {

enum class LimitRegime { ErgodicL, FiniteR, Double };

/// Closed-form limiting coefficient matrices of the normalized bigram
/// counts. Under ErgodicL/Double both matrices are symmetric.
struct LimitCoefficients {
  Eigen::MatrixXd positive;  // \bar N^+
  Eigen::MatrixXd negative;  // \bar N^-
  LimitRegime regime = LimitRegime::ErgodicL;
};

/// Extended-real symmetric matrix; entries with finite_mask false are -inf.
struct PmiMatrix {
  Eigen::MatrixXd values;  // -inf stored as -std::numeric_limits infinity
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> finite_mask;

  int n() const { return static_cast<int>(values.rows()); }
  /// Finite matrix with -inf entries replaced by `floor`.
  Eigen::MatrixXd clipped(double floor = -30.0) const;
};

/// Hard-window ergodic limits: per component t,
/// N+_ij = pi_i sum_{v=1}^w (W_t^v)_ij, and N-_ij = k*w*pi_i*pi_j for all
/// pairs including cross-component ones.
LimitCoefficients ergodic_limits(const Graph& g, int window, double rate);

/// Walk-distance-weighted limits on a connected graph:
/// N+_ij = pi_i sum_v alpha_v (W^v)_ij, N- = k*(sum_v alpha_v)*pi pi^T.
/// `double_regime` tags the (identical) double-limit matrices.
LimitCoefficients weighted_ergodic_limits(const Graph& g,
                                          const WeightSpec& weights,
                                          double rate,
                                          bool double_regime = false);

/// Fixed-l, large-r limits on a connected graph. The negative formula is
/// asymmetric in (i,j) and implemented as stated, without symmetrization.
LimitCoefficients finite_r_limits(const Graph& g, const WeightSpec& weights,
                                  double rate, int walk_length);

/// Empirical PMI of hard-window counts with matching (w, r, l).
PmiMatrix empirical_pmi(const Eigen::MatrixXd& positive_counts, int window,
                        int walks_per_node, int walk_length);

/// Closed-form GramErgoPMI solution X*_ij = ln(N+_ij / N-_ij), with -inf
/// where N+_ij = 0. Requires strictly positive N-.
PmiMatrix gram_ergo_pmi(const LimitCoefficients& limits);

/// Frobenius-nearest PSD matrix of rank <= d: eigendecompose, keep the d
/// largest eigenvalues clipped below at zero, reconstruct.
Eigen::MatrixXd project_psd_rank(const Eigen::MatrixXd& X, int d);

// Dense CSV with a header row of node ids; -inf written as "-inf".
void save_matrix_csv(const Eigen::MatrixXd& M, const std::string& path);
Eigen::MatrixXd load_matrix_csv(const std::string& path);

}  // namespace ergonode
