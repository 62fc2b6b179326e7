#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ergonode/graph.hpp"
#include "ergonode/objective.hpp"

namespace ergonode::cli {

enum class Algorithm { Vec, ErgoVec, ErgoPmi, NucGram, Spectral };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm algo);

struct GraphSpec {
  // "sbm", "expected", or "file"
  std::string type = "sbm";
  int n = 100;
  std::string regime = "linear";  // or "log"
  double p = 0.6;
  double q = 0.06;
  // expected graph
  int m = 50;
  double a = 0.6;
  double b = 0.06;
  // file input
  std::string edges_path;
  std::string labels_path;
};

struct ExperimentConfig {
  GraphSpec graph;
  std::optional<double> epsilon;  // default 1/(10n)
  Algorithm algo = Algorithm::ErgoVec;
  int window = 8;
  int rate = 5;
  int dim = 2;
  int walks_per_node = 10;
  int walk_length = 100;
  double nu0 = 0.108;
  std::vector<double> nu0_grid;  // default 0.018 .. 0.216 step 0.018
  double learning_rate = 0.02;
  int epochs = 400;
  std::vector<std::uint64_t> seeds{0};
  std::string out_dir = ".";

  double effective_epsilon(int n) const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

ExperimentConfig load_config(const std::string& path);

/// Builds the (smoothed) input graph for one seed; for SBM specs the seed
/// drives edge generation, otherwise it is ignored.
Graph realize_graph(const ExperimentConfig& cfg, std::uint64_t seed,
                    bool smoothed = true);

struct EmbedOutput {
  Eigen::MatrixXd embeddings;
  std::vector<int> labels;
  std::vector<SgdTraceRow> sgd_trace;  // vec / ergovec only
  nlohmann::json manifest;
};

/// Runs the configured pipeline on one seed.
EmbedOutput run_embedding(const ExperimentConfig& cfg, std::uint64_t seed);

int run_generate(const ExperimentConfig& cfg);
int run_embed(const ExperimentConfig& cfg);
int run_eval(const ExperimentConfig& cfg, const std::string& embeddings_path,
             const std::string& reference_path);
int run_sweep(const ExperimentConfig& cfg, const std::string& axis);

/// Parallelism cap from ERGONODE_THREADS (>=1; default 1).
int thread_cap();

}  // namespace ergonode::cli
