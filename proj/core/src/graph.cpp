#include "ergonode/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ergonode/rng.hpp"

namespace ergonode {

Graph::Graph(Eigen::MatrixXd adj, std::vector<int> labs)
    : adjacency(std::move(adj)), labels(std::move(labs)) {
  if (adjacency.rows() != adjacency.cols())
    throw std::invalid_argument("adjacency must be square");
  if (!labels.empty() &&
      static_cast<Eigen::Index>(labels.size()) != adjacency.rows())
    throw std::invalid_argument("label count must match node count");
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    if (adjacency(i, i) != 0.0)
      throw std::invalid_argument("adjacency diagonal must be zero");
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
      if (adjacency(i, j) < 0.0)
        throw std::invalid_argument("adjacency weights must be nonnegative");
      if (adjacency(i, j) != adjacency(j, i))
        throw std::invalid_argument("adjacency must be symmetric");
    }
  }
}

SbmParams SbmParams::explicit_probs(int n, Eigen::MatrixXd B) {
  SbmParams params;
  params.n = n;
  params.num_blocks = static_cast<int>(B.rows());
  params.block_probs = std::move(B);
  params.regime = DegreeRegime::Explicit;
  return params;
}

SbmParams SbmParams::linear(int n, double p, double q) {
  SbmParams params;
  params.n = n;
  params.regime = DegreeRegime::Linear;
  params.p = p;
  params.q = q;
  return params;
}

SbmParams SbmParams::logarithmic(int n, double p_tilde, double q_tilde) {
  SbmParams params;
  params.n = n;
  params.regime = DegreeRegime::Logarithmic;
  params.p = p_tilde;
  params.q = q_tilde;
  return params;
}

Eigen::MatrixXd SbmParams::resolve_block_probs() const {
  Eigen::MatrixXd B;
  switch (regime) {
    case DegreeRegime::Explicit:
      B = block_probs;
      break;
    case DegreeRegime::Linear:
      B.resize(2, 2);
      B << p, q, q, p;
      break;
    case DegreeRegime::Logarithmic: {
      const double scale = std::log(static_cast<double>(n)) / n;
      B.resize(2, 2);
      B << p * scale, q * scale, q * scale, p * scale;
      B = B.cwiseMin(1.0).cwiseMax(0.0);
      break;
    }
  }
  if (B.rows() != B.cols() || B.rows() < 1)
    throw std::invalid_argument("block probability matrix must be square");
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      if (B(i, j) < 0.0 || B(i, j) > 1.0)
        throw std::invalid_argument("edge probability outside [0,1]");
      if (B(i, j) != B(j, i))
        throw std::invalid_argument("block probability matrix must be symmetric");
    }
  return B;
}

std::optional<bool> SbmParams::above_recovery_threshold() const {
  if (regime != DegreeRegime::Logarithmic) return std::nullopt;
  return std::sqrt(p) - std::sqrt(q) > std::sqrt(2.0);
}

Graph generate_sbm(const SbmParams& params, std::uint64_t seed) {
  const int n = params.n;
  if (n < 1) throw std::invalid_argument("node count must be positive");
  const Eigen::MatrixXd B = params.resolve_block_probs();
  const int K = static_cast<int>(B.rows());
  if (n % K != 0)
    throw std::invalid_argument("node count must split evenly across blocks");

  // Labels are fixed block-contiguous: first n/K nodes in block 0, etc.
  std::vector<int> labels(n);
  const int block_size = n / K;
  for (int i = 0; i < n; ++i) labels[i] = i / block_size;

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  SplitMix64 rng(mix_seed(seed, 0x73626d0aULL));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.next_double() < B(labels[i], labels[j])) {
        A(i, j) = 1.0;
        A(j, i) = 1.0;
      }
    }
  }
  return Graph(std::move(A), std::move(labels));
}

Graph expected_sbm_graph(int m, double a, double b) {
  if (m < 2) throw std::invalid_argument("half-size m must be at least 2");
  if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0)
    throw std::invalid_argument("edge probabilities must be in [0,1]");
  if (a <= static_cast<double>(m) / (m - 1) * b)
    throw std::invalid_argument(
        "expected-graph assumption violated: need a > m/(m-1)*b");
  const int n = 2 * m;
  Eigen::MatrixXd A(n, n);
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    labels[i] = i < m ? 0 : 1;
    for (int j = 0; j < n; ++j) {
      if (i == j)
        A(i, j) = 0.0;
      else
        A(i, j) = (labels[i] == (j < m ? 0 : 1)) ? a : b;
    }
  }
  return Graph(std::move(A), std::move(labels));
}

Graph smooth_graph(const Graph& g, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be nonnegative");
  Eigen::MatrixXd A = g.adjacency.array() + epsilon;
  A.diagonal().setZero();
  Graph out;
  out.adjacency = std::move(A);
  out.labels = g.labels;
  return out;
}

ComponentDecomposition connected_components(const Graph& g) {
  const int n = g.n();
  ComponentDecomposition decomp;
  decomp.assignment.assign(n, -1);
  for (int start = 0; start < n; ++start) {
    if (decomp.assignment[start] != -1) continue;
    const int id = decomp.count();
    decomp.sizes.push_back(0);
    std::deque<int> queue{start};
    decomp.assignment[start] = id;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      ++decomp.sizes[id];
      for (int v = 0; v < n; ++v) {
        if (g.adjacency(u, v) > 0.0 && decomp.assignment[v] == -1) {
          decomp.assignment[v] = id;
          queue.push_back(v);
        }
      }
    }
  }
  return decomp;
}

Eigen::MatrixXd transition_matrix(const Graph& g) {
  const Eigen::VectorXd d = g.degrees();
  for (int i = 0; i < g.n(); ++i) {
    if (d(i) <= 0.0)
      throw std::runtime_error("degenerate node " + std::to_string(i) +
                               " has zero degree; smooth the graph first");
  }
  return d.cwiseInverse().asDiagonal() * g.adjacency;
}

Eigen::VectorXd stationary_distribution(const Graph& g) {
  const Eigen::VectorXd d = g.degrees();
  for (int i = 0; i < g.n(); ++i) {
    if (d(i) <= 0.0)
      throw std::runtime_error("degenerate node " + std::to_string(i) +
                               " has zero degree; smooth the graph first");
  }
  const ComponentDecomposition decomp = connected_components(g);
  std::vector<double> component_degree(decomp.count(), 0.0);
  for (int i = 0; i < g.n(); ++i)
    component_degree[decomp.assignment[i]] += d(i);
  Eigen::VectorXd pi(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const int t = decomp.assignment[i];
    pi(i) = (static_cast<double>(decomp.sizes[t]) / g.n()) *
            (d(i) / component_degree[t]);
  }
  return pi;
}

Graph load_edge_list_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  std::map<std::pair<int, int>, double> edges;
  int max_node = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int i, j;
    double w;
    if (!(ls >> i >> j >> w)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::runtime_error("malformed edge at " + path + ":" +
                               std::to_string(lineno));
    }
    if (i < 0 || j < 0 || w < 0.0)
      throw std::runtime_error("invalid edge at " + path + ":" +
                               std::to_string(lineno));
    if (i == j) continue;
    auto key = std::minmax(i, j);
    auto [it, inserted] = edges.emplace(key, w);
    if (!inserted) {
      if (it->second != w)
        throw std::runtime_error("conflicting duplicate weight for edge (" +
                                 std::to_string(key.first) + "," +
                                 std::to_string(key.second) + ")");
      it->second = std::max(it->second, w);
    }
    max_node = std::max({max_node, i, j});
  }
  const int n = max_node + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, w] : edges) {
    A(key.first, key.second) = w;
    A(key.second, key.first) = w;
  }
  return Graph(std::move(A));
}

void save_edge_list_tsv(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  out.precision(17);
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.adjacency(i, j) != 0.0)
        out << i << '\t' << j << '\t' << g.adjacency(i, j) << '\n';
}

std::vector<int> load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open labels: " + path);
  std::vector<int> labels;
  int y;
  while (in >> y) labels.push_back(y);
  return labels;
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write labels: " + path);
  for (int y : labels) out << y << '\n';
}

}  // namespace ergonode
