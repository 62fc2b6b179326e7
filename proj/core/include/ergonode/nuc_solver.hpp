#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "ergonode/ergodic.hpp"

namespace ergonode {

enum class NucInit { Zero, ScaledPmi };

struct NucConfig {
  double nu = 1.0;        // trace bound, often nu0 * n
  int max_iter = 1000;
  double gap_tol = -1.0;  // absolute; <= 0 means 1e-7 * initial objective
  double eig_tol = 1e-9;  // power-iteration convergence
  NucInit init = NucInit::ScaledPmi;
  bool fixed_step_schedule = false;  // gamma = 2/(t+2) instead of line search
  double pmi_floor = -30.0;
  std::uint64_t seed = 0;
};

struct NucTraceRow {
  int iter;
  double objective;
  double fw_gap;
  double trace_norm;
};

struct NucResult {
  Eigen::MatrixXd gram;
  std::vector<NucTraceRow> trace;
  double final_gap = 0.0;
};

/// Linear minimization oracle over {X PSD, tr X <= nu}: returns nu*v v^T
/// with v the unit top eigenvector of -G when its top eigenvalue is
/// positive, else the zero matrix.
Eigen::MatrixXd frank_wolfe_atom(const Eigen::MatrixXd& gradient, double nu,
                                 double eig_tol = 1e-9,
                                 std::uint64_t seed = 0);

/// Frank-Wolfe minimization of f(N+, N-, X) over {X PSD, ||X||_* <= nu}.
/// Exact 1-D line search by bisection on the directional derivative.
NucResult solve_nuc(const Eigen::MatrixXd& positive,
                    const Eigen::MatrixXd& negative, const NucConfig& cfg);

// Trace CSV "iter,objective,fw_gap,trace_norm".
void save_nuc_trace_csv(const std::vector<NucTraceRow>& trace,
                        const std::string& path);

}  // namespace ergonode
