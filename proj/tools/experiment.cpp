#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <stdexcept>

#include "ergonode/ergodic.hpp"
#include "ergonode/expected_sbm.hpp"
#include "ergonode/metrics.hpp"
#include "ergonode/nuc_solver.hpp"
#include "ergonode/walks.hpp"

namespace fs = std::filesystem;

namespace ergonode::cli {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "vec") return Algorithm::Vec;
  if (name == "ergovec") return Algorithm::ErgoVec;
  if (name == "ergopmi") return Algorithm::ErgoPmi;
  if (name == "nucgram") return Algorithm::NucGram;
  if (name == "spectral") return Algorithm::Spectral;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Vec: return "vec";
    case Algorithm::ErgoVec: return "ergovec";
    case Algorithm::ErgoPmi: return "ergopmi";
    case Algorithm::NucGram: return "nucgram";
    case Algorithm::Spectral: return "spectral";
  }
  return "?";
}

double ExperimentConfig::effective_epsilon(int n) const {
  return epsilon.value_or(1.0 / (10.0 * n));
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    cfg.graph.type = g.value("type", cfg.graph.type);
    cfg.graph.n = g.value("n", cfg.graph.n);
    cfg.graph.regime = g.value("regime", cfg.graph.regime);
    cfg.graph.p = g.value("p", cfg.graph.p);
    cfg.graph.q = g.value("q", cfg.graph.q);
    cfg.graph.m = g.value("m", cfg.graph.m);
    cfg.graph.a = g.value("a", cfg.graph.a);
    cfg.graph.b = g.value("b", cfg.graph.b);
    cfg.graph.edges_path = g.value("edges", cfg.graph.edges_path);
    cfg.graph.labels_path = g.value("labels", cfg.graph.labels_path);
  }
  if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
  if (j.contains("algo")) cfg.algo = parse_algorithm(j.at("algo"));
  cfg.window = j.value("w", cfg.window);
  cfg.rate = j.value("k", cfg.rate);
  cfg.dim = j.value("d", cfg.dim);
  cfg.walks_per_node = j.value("r", cfg.walks_per_node);
  cfg.walk_length = j.value("ell", cfg.walk_length);
  cfg.nu0 = j.value("nu0", cfg.nu0);
  if (j.contains("nu0_grid"))
    cfg.nu0_grid = j.at("nu0_grid").get<std::vector<double>>();
  cfg.learning_rate = j.value("lr", cfg.learning_rate);
  cfg.epochs = j.value("epochs", cfg.epochs);
  if (j.contains("seeds"))
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  else if (j.contains("seed"))
    cfg.seeds = {j.at("seed").get<std::uint64_t>()};
  cfg.out_dir = j.value("out", cfg.out_dir);
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json g{{"type", graph.type}};
  if (graph.type == "sbm") {
    g["n"] = graph.n;
    g["regime"] = graph.regime;
    g["p"] = graph.p;
    g["q"] = graph.q;
  } else if (graph.type == "expected") {
    g["m"] = graph.m;
    g["a"] = graph.a;
    g["b"] = graph.b;
  } else {
    g["edges"] = graph.edges_path;
    if (!graph.labels_path.empty()) g["labels"] = graph.labels_path;
  }
  nlohmann::json j{{"graph", g},
                   {"algo", algorithm_name(algo)},
                   {"w", window},
                   {"k", rate},
                   {"d", dim},
                   {"r", walks_per_node},
                   {"ell", walk_length},
                   {"nu0", nu0},
                   {"lr", learning_rate},
                   {"epochs", epochs},
                   {"seeds", seeds},
                   {"out", out_dir}};
  if (epsilon) j["epsilon"] = *epsilon;
  if (!nu0_grid.empty()) j["nu0_grid"] = nu0_grid;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  nlohmann::json j;
  in >> j;
  return ExperimentConfig::from_json(j);
}

namespace {

SbmParams sbm_params(const GraphSpec& spec) {
  if (spec.n > 1000)
    std::cerr << "warning: n=" << spec.n
              << " exceeds the desk-scale cap of 1000\n";
  if (spec.regime == "linear") return SbmParams::linear(spec.n, spec.p, spec.q);
  if (spec.regime == "log" || spec.regime == "logarithmic")
    return SbmParams::logarithmic(spec.n, spec.p, spec.q);
  throw std::invalid_argument("unknown regime: " + spec.regime);
}

}  // namespace

Graph realize_graph(const ExperimentConfig& cfg, std::uint64_t seed,
                    bool smoothed) {
  Graph g;
  if (cfg.graph.type == "sbm") {
    g = generate_sbm(sbm_params(cfg.graph), seed);
  } else if (cfg.graph.type == "expected") {
    g = expected_sbm_graph(cfg.graph.m, cfg.graph.a, cfg.graph.b);
  } else if (cfg.graph.type == "file") {
    g = load_edge_list_tsv(cfg.graph.edges_path);
    if (!cfg.graph.labels_path.empty())
      g.labels = load_labels(cfg.graph.labels_path);
  } else {
    throw std::invalid_argument("unknown graph type: " + cfg.graph.type);
  }
  if (!smoothed) return g;
  return smooth_graph(g, cfg.effective_epsilon(g.n()));
}

EmbedOutput run_embedding(const ExperimentConfig& cfg, std::uint64_t seed) {
  const Graph g = realize_graph(cfg, seed);
  EmbedOutput out;
  out.labels = g.labels;
  out.manifest = cfg.to_json();
  out.manifest["seed"] = seed;
  out.manifest["epsilon"] = cfg.effective_epsilon(g.n());

  switch (cfg.algo) {
    case Algorithm::Vec: {
      WalkConfig wcfg;
      wcfg.walks_per_node = cfg.walks_per_node;
      wcfg.walk_length = cfg.walk_length;
      wcfg.weights = WeightSpec::hard_window(cfg.window);
      wcfg.negatives_per_positive = cfg.rate;
      wcfg.seed = seed;
      const BigramCounts counts = count_bigrams(g, wcfg);
      SgdConfig scfg{cfg.dim, cfg.learning_rate, cfg.epochs, 0.1, seed, 1e-6};
      SgdResult sgd =
          solve_embeddings_sgd(counts.positive, counts.negative, scfg);
      out.embeddings = std::move(sgd.embeddings);
      out.sgd_trace = std::move(sgd.trace);
      break;
    }
    case Algorithm::ErgoVec: {
      const LimitCoefficients limits = ergodic_limits(g, cfg.window, cfg.rate);
      SgdConfig scfg{cfg.dim, cfg.learning_rate, cfg.epochs, 0.1, seed, 1e-6};
      SgdResult sgd =
          solve_embeddings_sgd(limits.positive, limits.negative, scfg);
      out.embeddings = std::move(sgd.embeddings);
      out.sgd_trace = std::move(sgd.trace);
      break;
    }
    case Algorithm::ErgoPmi: {
      const LimitCoefficients limits = ergodic_limits(g, cfg.window, cfg.rate);
      const Eigen::MatrixXd X =
          project_psd_rank(gram_ergo_pmi(limits).clipped(), cfg.dim);
      out.embeddings = factorize_gram(X, cfg.dim);
      break;
    }
    case Algorithm::NucGram: {
      const LimitCoefficients limits = ergodic_limits(g, cfg.window, cfg.rate);
      NucConfig ncfg;
      ncfg.nu = cfg.nu0 * g.n();
      ncfg.seed = seed;
      const NucResult run = solve_nuc(limits.positive, limits.negative, ncfg);
      out.manifest["fw_iterations"] = run.trace.size();
      out.manifest["fw_gap"] = run.final_gap;
      out.embeddings = factorize_gram(run.gram, cfg.dim);
      break;
    }
    case Algorithm::Spectral:
      out.embeddings = spectral_embedding(g, cfg.dim);
      break;
  }
  return out;
}

int run_generate(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  for (std::uint64_t seed : cfg.seeds) {
    const Graph raw = realize_graph(cfg, seed, /*smoothed=*/false);
    const std::string stem =
        (fs::path(cfg.out_dir) / ("graph_seed" + std::to_string(seed)))
            .string();
    save_edge_list_tsv(raw, stem + ".tsv");
    if (!raw.labels.empty()) save_labels(raw.labels, stem + ".labels");

    nlohmann::json manifest = cfg.to_json();
    manifest["seed"] = seed;
    manifest["epsilon"] = cfg.effective_epsilon(raw.n());
    if (cfg.graph.type == "sbm") {
      const SbmParams params = sbm_params(cfg.graph);
      const Eigen::MatrixXd B = params.resolve_block_probs();
      manifest["p_effective"] = B(0, 0);
      manifest["q_effective"] = B(0, 1);
      if (auto flag = params.above_recovery_threshold())
        manifest["above_recovery_threshold"] = *flag;
    }
    std::ofstream mout(stem + ".manifest.json");
    mout << manifest.dump(2) << '\n';
  }
  return 0;
}

int run_embed(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  for (std::uint64_t seed : cfg.seeds) {
    const EmbedOutput out = run_embedding(cfg, seed);
    const std::string stem =
        (fs::path(cfg.out_dir) /
         (algorithm_name(cfg.algo) + "_seed" + std::to_string(seed)))
            .string();
    save_embeddings_csv(out.embeddings, out.labels, stem + ".csv");
    if (!out.sgd_trace.empty())
      save_sgd_trace_csv(out.sgd_trace, stem + "_trace.csv");
    std::ofstream mout(stem + ".manifest.json");
    mout << out.manifest.dump(2) << '\n';
  }
  return 0;
}

namespace {

nlohmann::json ellipse_record(const GaussianEllipse& e) {
  return nlohmann::json{
      {"center", {e.center(0), e.center(1)}},
      {"covariance",
       {{e.covariance(0, 0), e.covariance(0, 1)},
        {e.covariance(1, 0), e.covariance(1, 1)}}},
      {"scale", e.scale},
      {"degenerate", e.degenerate}};
}

double json_safe(double v) {
  // JSON has no inf; emit a large sentinel recognized by consumers.
  if (std::isinf(v)) return v > 0 ? 1e308 : -1e308;
  return v;
}

}  // namespace

int run_eval(const ExperimentConfig& cfg, const std::string& embeddings_path,
             const std::string& reference_path) {
  std::vector<int> labels;
  const Eigen::MatrixXd U = load_embeddings_csv(embeddings_path, &labels);
  nlohmann::json metrics = nlohmann::json::array();

  const bool has_labels =
      !labels.empty() && std::any_of(labels.begin(), labels.end(),
                                     [](int y) { return y >= 0; });
  if (has_labels) {
    metrics.push_back({{"metric", "snr_1d"},
                       {"value", json_safe(snr_1d(U, labels))},
                       {"params", {{"mode", "formula"}}}});
    metrics.push_back(
        {{"metric", "snr_1d"},
         {"value", json_safe(snr_1d(U, labels, true))},
         {"params", {{"mode", "projection_normalized"}}}});
  }
  if (!reference_path.empty()) {
    const Eigen::MatrixXd ref = load_embeddings_csv(reference_path);
    metrics.push_back({{"metric", "gram_distance"},
                       {"value", gram_distance(U, ref, false)},
                       {"params", {{"normalized", false}}}});
    metrics.push_back({{"metric", "gram_distance"},
                       {"value", gram_distance(U, ref, true)},
                       {"params", {{"normalized", true}}}});
    metrics.push_back(
        {{"metric", "procrustes_distance"},
         {"value", procrustes_align(U, ref).distance},
         {"params", nlohmann::json::object()}});
  }

  nlohmann::json ellipses = nlohmann::json::array();
  if (has_labels && U.cols() == 2) {
    const Eigen::MatrixXd coords = svd_coordinates(U);
    for (int community : {0, 1}) {
      std::vector<int> members;
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == community) members.push_back(static_cast<int>(i));
      if (members.size() < 3) continue;
      Eigen::MatrixXd points(members.size(), 2);
      for (std::size_t i = 0; i < members.size(); ++i)
        points.row(i) = coords.row(members[i]);
      nlohmann::json record = ellipse_record(gaussian_ellipse(points));
      record["community"] = community;
      ellipses.push_back(std::move(record));
    }
  }

  fs::create_directories(cfg.out_dir);
  const std::string path =
      (fs::path(cfg.out_dir) / "metrics.json").string();
  std::ofstream out(path);
  out << nlohmann::json{{"embeddings", embeddings_path},
                        {"metrics", metrics},
                        {"ellipses", ellipses}}
             .dump(2)
      << '\n';
  std::cout << path << '\n';
  return 0;
}

int thread_cap() {
  const char* env = std::getenv("ERGONODE_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

namespace {

struct SweepRow {
  double axis_value;
  std::uint64_t seed;
  std::string metric;
  double value;
};

std::vector<SweepRow> sweep_point_nu0(const ExperimentConfig& base, double nu0,
                                      std::uint64_t seed) {
  ExperimentConfig cfg = base;
  cfg.algo = Algorithm::NucGram;
  cfg.nu0 = nu0;
  const EmbedOutput out = run_embedding(cfg, seed);
  const Eigen::MatrixXd coords = svd_coordinates(out.embeddings);
  std::vector<SweepRow> rows;
  rows.push_back({nu0, seed, "snr_1d",
                  json_safe(snr_1d(out.embeddings, out.labels))});
  const Eigen::VectorXd second = coords.col(std::min<int>(1, coords.cols() - 1));
  const double mean = second.mean();
  rows.push_back({nu0, seed, "second_dim_variance",
                  (second.array() - mean).square().mean()});
  return rows;
}

std::vector<SweepRow> sweep_point_n(const ExperimentConfig& base, int n,
                                    std::uint64_t seed) {
  ExperimentConfig cfg = base;
  cfg.graph.n = n;
  const EmbedOutput out = run_embedding(cfg, seed);
  return {{static_cast<double>(n), seed, "snr_1d",
           json_safe(snr_1d(out.embeddings, out.labels))}};
}

std::vector<SweepRow> sweep_point_ell(const ExperimentConfig& base, int ell,
                                      std::uint64_t seed) {
  ExperimentConfig vec_cfg = base;
  vec_cfg.algo = Algorithm::Vec;
  vec_cfg.walk_length = ell;
  ExperimentConfig ergo_cfg = base;
  ergo_cfg.algo = Algorithm::ErgoVec;
  const EmbedOutput vec_out = run_embedding(vec_cfg, seed);
  const EmbedOutput ergo_out = run_embedding(ergo_cfg, seed);
  return {{static_cast<double>(ell), seed, "gram_distance_vec_ergovec",
           gram_distance(vec_out.embeddings, ergo_out.embeddings, true)}};
}

}  // namespace

int run_sweep(const ExperimentConfig& cfg, const std::string& axis) {
  std::vector<double> grid;
  if (axis == "nu0") {
    grid = cfg.nu0_grid;
    if (grid.empty())
      for (int i = 1; i <= 12; ++i) grid.push_back(0.018 * i);
  } else if (axis == "n") {
    grid = {50, 100, 200};
  } else if (axis == "ell") {
    grid = {50, 100, 200, 500};
  } else {
    throw std::invalid_argument("unknown sweep axis: " + axis);
  }

  struct Task {
    double axis_value;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (double value : grid)
    for (std::uint64_t seed : cfg.seeds) tasks.push_back({value, seed});

  auto run_task = [&](const Task& task) {
    if (axis == "nu0") return sweep_point_nu0(cfg, task.axis_value, task.seed);
    if (axis == "n")
      return sweep_point_n(cfg, static_cast<int>(task.axis_value), task.seed);
    return sweep_point_ell(cfg, static_cast<int>(task.axis_value), task.seed);
  };

  // Grid points are independent; run up to ERGONODE_THREADS at a time and
  // merge in task order so output is deterministic.
  std::vector<std::vector<SweepRow>> results(tasks.size());
  const int cap = thread_cap();
  for (std::size_t begin = 0; begin < tasks.size();
       begin += static_cast<std::size_t>(cap)) {
    const std::size_t end =
        std::min(tasks.size(), begin + static_cast<std::size_t>(cap));
    std::vector<std::future<std::vector<SweepRow>>> futures;
    for (std::size_t t = begin; t < end; ++t)
      futures.push_back(
          std::async(std::launch::async, run_task, std::cref(tasks[t])));
    for (std::size_t t = begin; t < end; ++t)
      results[t] = futures[t - begin].get();
  }

  fs::create_directories(cfg.out_dir);
  const std::string path =
      (fs::path(cfg.out_dir) / ("sweep_" + axis + ".csv")).string();
  std::ofstream out(path);
  out.precision(17);
  out << axis << ",seed,metric,value\n";
  for (const auto& rows : results)
    for (const SweepRow& row : rows)
      out << row.axis_value << ',' << row.seed << ',' << row.metric << ','
          << row.value << '\n';
  std::cout << path << '\n';
  return 0;
}

}  // namespace ergonode::cli
