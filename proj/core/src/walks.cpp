#include "ergonode/walks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "ergonode/rng.hpp"

namespace ergonode {

WeightSpec WeightSpec::hard_window(int w) {
  if (w < 1) throw std::invalid_argument("window size must be at least 1");
  return WeightSpec{std::vector<double>(static_cast<std::size_t>(w), 1.0)};
}

WeightSpec WeightSpec::inverse_factorial(double tail) {
  // Tail bound sum_{v>V} 1/v! < 2/(V+1)! suffices since |(W^v)_ij| <= 1.
  std::vector<double> alpha;
  double term = 1.0;
  int v = 1;
  for (;;) {
    term /= v;
    alpha.push_back(term);
    if (2.0 * term / (v + 1) < tail) break;
    ++v;
    if (v > 200) throw std::runtime_error("weight truncation did not converge");
  }
  return WeightSpec{std::move(alpha)};
}

WeightSpec WeightSpec::geometric(double rho, double tail) {
  if (std::abs(rho) >= 1.0)
    throw std::invalid_argument("geometric weights need |rho| < 1");
  std::vector<double> alpha;
  double term = 1.0;
  for (;;) {
    term *= rho;
    alpha.push_back(term);
    if (std::abs(term) * std::abs(rho) / (1.0 - std::abs(rho)) < tail) break;
    if (alpha.size() > 100000)
      throw std::runtime_error("weight truncation did not converge");
  }
  return WeightSpec{std::move(alpha)};
}

double WeightSpec::total() const {
  double s = 0.0;
  for (double a : alpha) s += a;
  return s;
}

void WalkConfig::validate() const {
  if (walks_per_node < 1) throw std::invalid_argument("need r >= 1");
  if (walk_length < 2) throw std::invalid_argument("need walk length >= 2");
  if (negatives_per_positive < 0) throw std::invalid_argument("need k >= 0");
  if (weights.alpha.empty()) throw std::invalid_argument("empty weight spec");
  if (weights.max_gap() >= walk_length)
    throw std::invalid_argument("max weighted gap must be below walk length");
  for (double a : weights.alpha)
    if (!std::isfinite(a)) throw std::invalid_argument("non-finite weight");
}

namespace {

// Row-wise cumulative transition weights for binary-search sampling.
Eigen::MatrixXd cumulative_rows(const Eigen::MatrixXd& W) {
  Eigen::MatrixXd C = W;
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 1; j < C.cols(); ++j) C(i, j) += C(i, j - 1);
  return C;
}

int sample_row(const Eigen::MatrixXd& C, int row, double u) {
  const double target = u * C(row, C.cols() - 1);
  int lo = 0, hi = static_cast<int>(C.cols()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (C(row, mid) <= target)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

WalkSet sample_walks(const Graph& g, const WalkConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd W = transition_matrix(g);
  const Eigen::MatrixXd C = cumulative_rows(W);
  const int n = g.n();
  const int r = cfg.walks_per_node;

  WalkSet ws;
  ws.num_nodes = n;
  ws.walks_per_node = r;
  ws.walks.assign(static_cast<std::size_t>(n) * r, {});
  for (int m = 0; m < n; ++m) {
    for (int p = 0; p < r; ++p) {
      SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(m),
                              static_cast<std::uint64_t>(p)));
      std::vector<int>& walk = ws.walks[static_cast<std::size_t>(m) * r + p];
      walk.resize(cfg.walk_length);
      walk[0] = m;
      for (int s = 1; s < cfg.walk_length; ++s)
        walk[s] = sample_row(C, walk[s - 1], rng.next_double());
    }
  }
  return ws;
}

Eigen::VectorXd unigram_distribution(const WalkSet& ws) {
  if (ws.walks.empty()) throw std::invalid_argument("empty walk set");
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(ws.num_nodes);
  for (const auto& walk : ws.walks)
    for (int node : walk) counts(node) += 1.0;
  return counts / counts.sum();
}

Eigen::MatrixXd count_positive(const WalkSet& ws, const WeightSpec& weights) {
  const int n = ws.num_nodes;
  const int max_gap = weights.max_gap();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  for (const auto& walk : ws.walks) {
    const int len = static_cast<int>(walk.size());
    for (int v = 1; v <= max_gap; ++v) {
      const double a = weights.alpha[v - 1];
      if (a == 0.0) continue;
      for (int s = 0; s + v < len; ++s) counts(walk[s], walk[s + v]) += a;
    }
  }
  return counts;
}

Eigen::MatrixXd sample_negative(const WalkSet& ws, const WeightSpec& weights,
                                const WalkConfig& cfg) {
  const int n = ws.num_nodes;
  const int k = cfg.negatives_per_positive;
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(n, n);
  if (k == 0) return counts;

  const Eigen::VectorXd unigram = unigram_distribution(ws);
  Eigen::VectorXd cum(n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    acc += unigram(j);
    cum(j) = acc;
  }

  const int max_gap = weights.max_gap();
  std::uint64_t occurrence = 0;
  for (const auto& walk : ws.walks) {
    const int len = static_cast<int>(walk.size());
    for (int v = 1; v <= max_gap; ++v) {
      const double a = weights.alpha[v - 1];
      if (a == 0.0) continue;
      for (int s = 0; s + v < len; ++s) {
        const int i = walk[s];
        SplitMix64 rng(mix_seed(cfg.seed, kNegativeStreamTag, occurrence));
        for (int c = 0; c < k; ++c) {
          const double u = rng.next_double() * acc;
          const int j = static_cast<int>(
              std::lower_bound(cum.data(), cum.data() + n, u) - cum.data());
          counts(i, std::min(j, n - 1)) += a;
        }
        ++occurrence;
      }
    }
  }
  return counts;
}

BigramCounts count_bigrams(const Graph& g, const WalkConfig& cfg) {
  const WalkSet ws = sample_walks(g, cfg);
  BigramCounts counts;
  counts.positive = count_positive(ws, cfg.weights);
  counts.negative = sample_negative(ws, cfg.weights, cfg);
  return counts;
}

void save_walks(const WalkSet& ws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write walks: " + path);
  for (const auto& walk : ws.walks) {
    for (std::size_t s = 0; s < walk.size(); ++s)
      out << (s ? " " : "") << walk[s];
    out << '\n';
  }
}

}  // namespace ergonode
