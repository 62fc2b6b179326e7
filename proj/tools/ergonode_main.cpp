#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "experiment.hpp"

using ergonode::cli::ExperimentConfig;

namespace {

struct FlagOverrides {
  std::string config_path;
  std::string graph_path;
  std::string algo;
  int window = -1;
  int rate = -1;
  int dim = -1;
  double nu0 = -1.0;
  long long seed = -1;
  std::string out;
};

void add_common_flags(CLI::App* cmd, FlagOverrides* flags) {
  cmd->add_option("--config", flags->config_path, "JSON experiment config");
  cmd->add_option("--graph", flags->graph_path, "edge-list TSV input");
  cmd->add_option("--algo", flags->algo,
                  "vec|ergovec|ergopmi|nucgram|spectral");
  cmd->add_option("--w", flags->window, "window size");
  cmd->add_option("--k", flags->rate, "negative sampling rate");
  cmd->add_option("--d", flags->dim, "embedding dimension");
  cmd->add_option("--nu0", flags->nu0, "nuclear norm scale (nu = nu0*n)");
  cmd->add_option("--seed", flags->seed, "run seed");
  cmd->add_option("--out", flags->out, "output directory");
}

ExperimentConfig resolve_config(const FlagOverrides& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty())
    cfg = ergonode::cli::load_config(flags.config_path);
  if (!flags.graph_path.empty()) {
    cfg.graph.type = "file";
    cfg.graph.edges_path = flags.graph_path;
  }
  if (!flags.algo.empty()) cfg.algo = ergonode::cli::parse_algorithm(flags.algo);
  if (flags.window >= 0) cfg.window = flags.window;
  if (flags.rate >= 0) cfg.rate = flags.rate;
  if (flags.dim >= 0) cfg.dim = flags.dim;
  if (flags.nu0 >= 0.0) cfg.nu0 = flags.nu0;
  if (flags.seed >= 0)
    cfg.seeds = {static_cast<std::uint64_t>(flags.seed)};
  if (!flags.out.empty()) cfg.out_dir = flags.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk node embeddings: generation, solvers, metrics"};
  app.require_subcommand(1);

  FlagOverrides flags;
  std::string axis = "nu0";
  std::string embeddings_path;
  std::string reference_path;

  CLI::App* generate = app.add_subcommand("generate", "write SBM graph files");
  add_common_flags(generate, &flags);

  CLI::App* embed = app.add_subcommand("embed", "compute node embeddings");
  add_common_flags(embed, &flags);

  CLI::App* eval = app.add_subcommand("eval", "evaluate an embedding file");
  add_common_flags(eval, &flags);
  eval->add_option("--embeddings", embeddings_path, "embedding CSV to score")
      ->required();
  eval->add_option("--ref", reference_path,
                   "reference embedding CSV for distances");

  CLI::App* sweep = app.add_subcommand("sweep", "sweep a parameter grid");
  add_common_flags(sweep, &flags);
  sweep->add_option("--axis", axis, "nu0|n|ell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const ExperimentConfig cfg = resolve_config(flags);
    if (generate->parsed()) return ergonode::cli::run_generate(cfg);
    if (embed->parsed()) return ergonode::cli::run_embed(cfg);
    if (eval->parsed())
      return ergonode::cli::run_eval(cfg, embeddings_path, reference_path);
    return ergonode::cli::run_sweep(cfg, axis);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}
