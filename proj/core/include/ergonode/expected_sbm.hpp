#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>

#include "ergonode/nuc_solver.hpp"

namespace ergonode {

/// Compact 2m x 2m diagonal-blockwise-constant matrix: value c1 within
/// blocks (off-diagonal), c2 across blocks, c3 on the diagonal.
struct DbcMatrix {
  int m = 2;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  int n() const { return 2 * m; }
};

Eigen::MatrixXd dbc_to_dense(const DbcMatrix& Z);

/// Eigenvalues (lambda1, lambda2, lambda3):
///   lambda1 = (m-1)c1 + c3 + m c2  (eigenvector all-ones / sqrt(2m))
///   lambda2 = (m-1)c1 + c3 - m c2  (eigenvector community sign / sqrt(2m))
///   lambda3 = c3 - c1              (multiplicity 2m-2)
std::array<double, 3> dbc_eigen(const DbcMatrix& Z);

DbcMatrix dbc_from_eigen(double lambda1, double lambda2, double lambda3,
                         int m);

/// |lambda1| + |lambda2| + (2m-2)|lambda3|.
double dbc_nuclear_norm(const DbcMatrix& Z);

/// Closed-form ergodic-limit entries for the expected two-community SBM
/// graph, plus the derived quantities used by the exact solutions.
struct ExpectedCoefficients {
  int m = 2;
  double alpha1 = 0.0;  // within-block off-diagonal positive limit
  double alpha2 = 0.0;  // cross-block positive limit
  double alpha3 = 0.0;  // diagonal positive limit
  double beta = 0.0;    // negative limit, kw/n^2
  double alpha13_bar = 0.0;  // (m-1)/m * alpha1 + 1/m * alpha3
  double nu1 = 0.0;          // ln((alpha13_bar + beta)/(alpha2 + beta))

  LimitCoefficients to_limits() const;
};

ExpectedCoefficients expected_coefficients(int m, double a, double b,
                                           int window, double rate);

/// GramErgoPMI solution Z(ln(a1/b), ln(a2/b), ln(a3/b)).
DbcMatrix expected_pmi_solution(const ExpectedCoefficients& coeffs);

/// Unconstrained-PSD / rank-d / loose-nuclear-norm solution Z(v1,-v1,v1)
/// together with the scale v1.
struct PsdSolution {
  double nu1;
  DbcMatrix gram;
};
PsdSolution expected_psd_solution(const ExpectedCoefficients& coeffs);

/// Numerical probe of the active-constraint scaling conjecture: runs the
/// nuclear-norm solver at nu = nu0*n and reports the deviation from
/// Z(nu0, -nu0, nu0). Report only, never asserted.
struct ConjectureReport {
  double nu0;
  double nu1;
  double relative_deviation;
  double solution_trace;
  int iterations;
  double final_gap;
};

ConjectureReport check_conjecture_scaling(const ExpectedCoefficients& coeffs,
                                          double nu0, const NucConfig& solver);

// DBC matrices serialize as JSON {m, c1, c2, c3}; reports as JSON.
void save_dbc_json(const DbcMatrix& Z, const std::string& path);
DbcMatrix load_dbc_json(const std::string& path);
void save_conjecture_report_json(const ConjectureReport& report,
                                 const std::string& path);

}  // namespace ergonode
