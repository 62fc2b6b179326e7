#include "ergonode/expected_sbm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ergonode {

namespace {

void require_valid(const DbcMatrix& Z) {
  if (Z.m < 2) throw std::invalid_argument("DBC half-size m must be >= 2");
}

// sum_{v=1}^{w} lambda^v, with a direct series when lambda is too close
// to 1 for the closed form (lambda2(W) -> 1 as b -> 0).
double geometric_sum(double lambda, int w) {
  if (std::abs(1.0 - lambda) < 1e-12) {
    double s = 0.0, term = 1.0;
    for (int v = 1; v <= w; ++v) {
      term *= lambda;
      s += term;
    }
    return s;
  }
  return lambda * (1.0 - std::pow(lambda, w)) / (1.0 - lambda);
}

}  // namespace

Eigen::MatrixXd dbc_to_dense(const DbcMatrix& Z) {
  require_valid(Z);
  const int n = Z.n();
  Eigen::MatrixXd X(n, n);
  for (int i = 0; i < n; ++i) {
    const bool left_i = i < Z.m;
    for (int j = 0; j < n; ++j) {
      if (i == j)
        X(i, j) = Z.c3;
      else if (left_i == (j < Z.m))
        X(i, j) = Z.c1;
      else
        X(i, j) = Z.c2;
    }
  }
  return X;
}

std::array<double, 3> dbc_eigen(const DbcMatrix& Z) {
  require_valid(Z);
  const double common = (Z.m - 1) * Z.c1 + Z.c3;
  return {common + Z.m * Z.c2, common - Z.m * Z.c2, Z.c3 - Z.c1};
}

DbcMatrix dbc_from_eigen(double lambda1, double lambda2, double lambda3,
                         int m) {
  if (m < 2) throw std::invalid_argument("DBC half-size m must be >= 2");
  const double two_m = 2.0 * m;
  DbcMatrix Z;
  Z.m = m;
  Z.c1 = (lambda1 + lambda2 - 2.0 * lambda3) / two_m;
  Z.c2 = (lambda1 - lambda2) / two_m;
  Z.c3 = (lambda1 + lambda2 + (two_m - 2.0) * lambda3) / two_m;
  return Z;
}

double dbc_nuclear_norm(const DbcMatrix& Z) {
  const auto [l1, l2, l3] = dbc_eigen(Z);
  return std::abs(l1) + std::abs(l2) + (2 * Z.m - 2) * std::abs(l3);
}

LimitCoefficients ExpectedCoefficients::to_limits() const {
  LimitCoefficients limits;
  limits.positive = dbc_to_dense(DbcMatrix{m, alpha1, alpha2, alpha3});
  limits.negative = Eigen::MatrixXd::Constant(2 * m, 2 * m, beta);
  limits.regime = LimitRegime::ErgodicL;
  return limits;
}

ExpectedCoefficients expected_coefficients(int m, double a, double b,
                                           int window, double rate) {
  if (m < 2) throw std::invalid_argument("half-size m must be >= 2");
  if (a <= static_cast<double>(m) / (m - 1) * b)
    throw std::invalid_argument(
        "expected-graph assumption violated: need a > m/(m-1)*b");
  if (window < 1 || rate < 1.0)
    throw std::invalid_argument("need window >= 1 and rate k >= 1");

  // The expected-graph transition matrix is Z(a/s, b/s, 0) with
  // s = (m-1)a + mb, giving lambda2 = ((m-1)a - mb)/s, lambda3 = -a/s.
  const double s = (m - 1) * a + m * b;
  const double lambda2 = ((m - 1) * a - m * b) / s;
  const double lambda3 = -a / s;
  const double sum2 = geometric_sum(lambda2, window);
  const double sum3 = geometric_sum(lambda3, window);
  const double inv = 1.0 / (4.0 * static_cast<double>(m) * m);

  ExpectedCoefficients coeffs;
  coeffs.m = m;
  coeffs.alpha1 = inv * (window + sum2 - 2.0 * sum3);
  coeffs.alpha2 = inv * (window - sum2);
  coeffs.alpha3 = inv * (window + sum2 + (2.0 * m - 2.0) * sum3);
  coeffs.beta = rate * window * inv;
  coeffs.alpha13_bar = (m - 1.0) / m * coeffs.alpha1 + coeffs.alpha3 / m;
  coeffs.nu1 = std::log((coeffs.alpha13_bar + coeffs.beta) /
                        (coeffs.alpha2 + coeffs.beta));
  return coeffs;
}

DbcMatrix expected_pmi_solution(const ExpectedCoefficients& coeffs) {
  return DbcMatrix{coeffs.m, std::log(coeffs.alpha1 / coeffs.beta),
                   std::log(coeffs.alpha2 / coeffs.beta),
                   std::log(coeffs.alpha3 / coeffs.beta)};
}

PsdSolution expected_psd_solution(const ExpectedCoefficients& coeffs) {
  return {coeffs.nu1,
          DbcMatrix{coeffs.m, coeffs.nu1, -coeffs.nu1, coeffs.nu1}};
}

ConjectureReport check_conjecture_scaling(const ExpectedCoefficients& coeffs,
                                          double nu0,
                                          const NucConfig& solver) {
  if (nu0 <= 0.0) throw std::invalid_argument("nu0 must be positive");
  const LimitCoefficients limits = coeffs.to_limits();
  NucConfig cfg = solver;
  cfg.nu = nu0 * 2.0 * coeffs.m;
  const NucResult run = solve_nuc(limits.positive, limits.negative, cfg);
  const Eigen::MatrixXd target =
      dbc_to_dense(DbcMatrix{coeffs.m, nu0, -nu0, nu0});
  ConjectureReport report;
  report.nu0 = nu0;
  report.nu1 = coeffs.nu1;
  report.relative_deviation = (run.gram - target).norm() / target.norm();
  report.solution_trace = run.gram.trace();
  report.iterations = static_cast<int>(run.trace.size());
  report.final_gap = run.final_gap;
  return report;
}

void save_dbc_json(const DbcMatrix& Z, const std::string& path) {
  nlohmann::json j{{"m", Z.m}, {"c1", Z.c1}, {"c2", Z.c2}, {"c3", Z.c3}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write DBC matrix: " + path);
  out << j.dump(2) << '\n';
}

DbcMatrix load_dbc_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open DBC matrix: " + path);
  nlohmann::json j;
  in >> j;
  return DbcMatrix{j.at("m").get<int>(), j.at("c1").get<double>(),
                   j.at("c2").get<double>(), j.at("c3").get<double>()};
}

void save_conjecture_report_json(const ConjectureReport& report,
                                 const std::string& path) {
  nlohmann::json j{{"nu0", report.nu0},
                   {"nu1", report.nu1},
                   {"relative_deviation", report.relative_deviation},
                   {"solution_trace", report.solution_trace},
                   {"iterations", report.iterations},
                   {"final_gap", report.final_gap}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ergonode
