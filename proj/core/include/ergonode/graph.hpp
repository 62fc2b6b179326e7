#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ergonode {

/// Weighted undirected graph with dense nonnegative adjacency.
/// Zero diagonal by convention; optional per-node community labels.
struct Graph {
  Eigen::MatrixXd adjacency;
  std::vector<int> labels;  // empty when unknown

  Graph() = default;
  explicit Graph(Eigen::MatrixXd adj, std::vector<int> labs = {});

  int n() const { return static_cast<int>(adjacency.rows()); }
  Eigen::VectorXd degrees() const { return adjacency.rowwise().sum(); }
};

enum class DegreeRegime { Explicit, Linear, Logarithmic };

/// Two-community (or general K-block) SBM parameters.
///
/// Linear keeps (p, q) fixed in n; Logarithmic scales them as
/// p = p_tilde*ln(n)/n, q = q_tilde*ln(n)/n (clipped to [0,1]).
struct SbmParams {
  int n = 0;
  int num_blocks = 2;
  Eigen::MatrixXd block_probs;  // K x K, only used for Explicit
  DegreeRegime regime = DegreeRegime::Explicit;
  double p = 0.0;  // within-community (Linear) or p_tilde (Logarithmic)
  double q = 0.0;  // cross-community (Linear) or q_tilde (Logarithmic)

  static SbmParams explicit_probs(int n, Eigen::MatrixXd B);
  static SbmParams linear(int n, double p, double q);
  static SbmParams logarithmic(int n, double p_tilde, double q_tilde);

  // Effective K x K edge-probability matrix at this n.
  Eigen::MatrixXd resolve_block_probs() const;

  // Exact-recovery condition sqrt(p_tilde) - sqrt(q_tilde) > sqrt(2);
  // meaningful for the logarithmic regime with 2 communities.
  std::optional<bool> above_recovery_threshold() const;
};

struct ComponentDecomposition {
  std::vector<int> assignment;  // contiguous ids from 0
  std::vector<int> sizes;

  int count() const { return static_cast<int>(sizes.size()); }
};

Graph generate_sbm(const SbmParams& params, std::uint64_t seed);

/// Dense expected two-community SBM graph on 2m nodes: weight a inside
/// blocks (off-diagonal), b across, zero diagonal. Requires a > m/(m-1)*b.
Graph expected_sbm_graph(int m, double a, double b);

/// Adds epsilon to every off-diagonal weight; diagonal stays zero.
Graph smooth_graph(const Graph& g, double epsilon);

ComponentDecomposition connected_components(const Graph& g);

/// Row-stochastic W = D^{-1} A. Throws on zero-degree nodes.
Eigen::MatrixXd transition_matrix(const Graph& g);

/// Stationary distribution of the natural walk launched uniformly over
/// components: pi_i = (n_t/n) * d_i / sum_{j in t} d_j.
Eigen::VectorXd stationary_distribution(const Graph& g);

// Edge-list TSV: "i<TAB>j<TAB>weight", 0-based ids, '#' comments.
// Loading symmetrizes by max and rejects conflicting duplicate weights.
Graph load_edge_list_tsv(const std::string& path);
void save_edge_list_tsv(const Graph& g, const std::string& path);

std::vector<int> load_labels(const std::string& path);
void save_labels(const std::vector<int>& labels, const std::string& path);

}  // namespace ergonode
