#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ergonode/graph.hpp"

namespace ergonode {

/// Per-gap weights alpha_v for bigram counting. A hard window of size w is
/// the special case alpha_1 = ... = alpha_w = 1.
struct WeightSpec {
  std::vector<double> alpha;  // alpha[v-1] weights gap v

  static WeightSpec hard_window(int w);
  /// alpha_v = 1/v!, truncated so the dropped tail is below `tail`.
  static WeightSpec inverse_factorial(double tail = 1e-12);
  /// alpha_v = rho^v with |rho| < 1, truncated the same way.
  static WeightSpec geometric(double rho, double tail = 1e-12);

  int max_gap() const { return static_cast<int>(alpha.size()); }
  double total() const;
};

struct WalkConfig {
  int walks_per_node = 10;   // r
  int walk_length = 100;     // l, steps observed
  WeightSpec weights = WeightSpec::hard_window(8);
  int negatives_per_positive = 5;  // k
  std::uint64_t seed = 0;

  void validate() const;
};

/// r*n walks of fixed length; walk (m,p) starts at node m and is stored at
/// index m*r + p.
struct WalkSet {
  std::vector<std::vector<int>> walks;
  int num_nodes = 0;
  int walks_per_node = 0;

  int walk_length() const {
    return walks.empty() ? 0 : static_cast<int>(walks.front().size());
  }
};

WalkSet sample_walks(const Graph& g, const WalkConfig& cfg);

/// Node frequencies over all r*n*l walk positions.
Eigen::VectorXd unigram_distribution(const WalkSet& ws);

/// Forward skip-bigram counts: N+_ij = sum over walks, gaps v, positions s
/// of alpha_v * 1{X_s = i, X_{s+v} = j}.
Eigen::MatrixXd count_positive(const WalkSet& ws, const WeightSpec& weights);

/// For each counted positive occurrence with first node i at gap v, draws k
/// nodes i.i.d. from the unigram distribution and adds alpha_v to N-_{i,.}.
/// Total mass is exactly k * sum(N+).
Eigen::MatrixXd sample_negative(const WalkSet& ws, const WeightSpec& weights,
                                const WalkConfig& cfg);

struct BigramCounts {
  Eigen::MatrixXd positive;
  Eigen::MatrixXd negative;
};

/// Convenience pipeline: sample walks, count positives, sample negatives.
BigramCounts count_bigrams(const Graph& g, const WalkConfig& cfg);

// One walk per line, space-separated node ids.
void save_walks(const WalkSet& ws, const std::string& path);

}  // namespace ergonode
