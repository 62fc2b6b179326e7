#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ergonode/objective.hpp"
#include "ergonode/rng.hpp"

using namespace ergonode;

TEST_CASE("logistic loss and sigmoid") {
  CHECK(logistic_loss(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(logistic_loss(1.0) ==
        doctest::Approx(std::log(1.0 + std::exp(-1.0))).epsilon(1e-15));
  // Reflection identity sigma(-t) = t + sigma(t).
  for (double t : {0.3, 2.0, 17.5})
    CHECK(logistic_loss(-t) ==
          doctest::Approx(t + logistic_loss(t)).epsilon(1e-13));
  // Extreme arguments stay finite and tight.
  CHECK(logistic_loss(1000.0) == 0.0);
  CHECK(logistic_loss(-1000.0) == doctest::Approx(1000.0));
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(1000.0) == doctest::Approx(1.0));
  CHECK(sigmoid(-1000.0) == doctest::Approx(0.0));
  CHECK(sigmoid(2.0) + sigmoid(-2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("objective value") {
  SUBCASE("1x1 at zero") {
    const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
    CHECK(objective_value(one, one, Eigen::MatrixXd::Zero(1, 1)) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("weights scale linearly") {
    Eigen::MatrixXd pos(1, 1), neg(1, 1), X(1, 1);
    pos << 3.0;
    neg << 2.0;
    X << 0.7;
    CHECK(objective_value(pos, neg, X) ==
          doctest::Approx(3.0 * logistic_loss(0.7) + 2.0 * logistic_loss(-0.7))
              .epsilon(1e-15));
  }
  SUBCASE("shape mismatch rejected") {
    CHECK_THROWS_AS(objective_value(Eigen::MatrixXd::Ones(2, 2),
                                    Eigen::MatrixXd::Ones(3, 3),
                                    Eigen::MatrixXd::Zero(2, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("gradient matches central differences") {
  SplitMix64 rng(17);
  const int n = 4;
  Eigen::MatrixXd pos(n, n), neg(n, n), X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pos(i, j) = rng.next_double();
      neg(i, j) = rng.next_double();
      X(i, j) = 4.0 * rng.next_double() - 2.0;
    }
  const Eigen::MatrixXd G = objective_gradient(pos, neg, X);
  const double h = 1e-6;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd Xp = X, Xm = X;
      Xp(i, j) += h;
      Xm(i, j) -= h;
      const double fd =
          (objective_value(pos, neg, Xp) - objective_value(pos, neg, Xm)) /
          (2.0 * h);
      CHECK(G(i, j) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("gram matrix and factorization") {
  SUBCASE("gram of a known factor") {
    Eigen::MatrixXd U(2, 1);
    U << 1, 2;
    Eigen::MatrixXd expected(2, 2);
    expected << 1, 2, 2, 4;
    CHECK(gram_matrix(U).isApprox(expected));
  }
  SUBCASE("factorize round trip on a random rank-d gram") {
    SplitMix64 rng(4);
    const int n = 6, d = 2;
    Eigen::MatrixXd U(n, d);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < d; ++c) U(i, c) = 2.0 * rng.next_double() - 1.0;
    const Eigen::MatrixXd X = gram_matrix(U);
    const Eigen::MatrixXd V = factorize_gram(X, d);
    CHECK(gram_matrix(V).isApprox(X, 1e-10));
  }
  SUBCASE("factorize with extra dimensions pads with zeros") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(2, 2);
    X(0, 0) = 4.0;
    const Eigen::MatrixXd U = factorize_gram(X, 3);
    CHECK(U.cols() == 3);
    CHECK(gram_matrix(U).isApprox(X, 1e-12));
  }
  SUBCASE("indefinite input rejected") {
    Eigen::MatrixXd X = Eigen::Vector2d(1.0, -1.0).asDiagonal();
    CHECK_THROWS_AS(factorize_gram(X, 2), std::invalid_argument);
  }
}

TEST_CASE("sgd solves a constant-coefficient problem") {
  // N+ = 5, N- = 2 everywhere: the optimum is the rank-1 PSD matrix
  // ln(2.5) * 1 1^T, reachable at any d >= 1.
  const int n = 3;
  const Eigen::MatrixXd pos = Eigen::MatrixXd::Constant(n, n, 5.0);
  const Eigen::MatrixXd neg = Eigen::MatrixXd::Constant(n, n, 2.0);
  const double xstar = std::log(2.5);
  const double fstar =
      9.0 * (5.0 * logistic_loss(xstar) + 2.0 * logistic_loss(-xstar));
  SgdConfig cfg;
  cfg.dim = 2;
  cfg.epochs = 2000;
  cfg.learning_rate = 0.05;
  cfg.seed = 1;
  const SgdResult result = solve_embeddings_sgd(pos, neg, cfg);
  const double f =
      objective_value(pos, neg, gram_matrix(result.embeddings));
  CHECK(f == doctest::Approx(fstar).epsilon(0.01));
  CHECK(result.trace.back().objective <= result.trace.front().objective);
}

TEST_CASE("sgd is deterministic per seed") {
  SplitMix64 rng(90);
  const int n = 5;
  Eigen::MatrixXd pos(n, n), neg(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pos(i, j) = rng.next_double();
      neg(i, j) = rng.next_double();
    }
  pos = (pos + pos.transpose()).eval();
  neg = (neg + neg.transpose()).eval();
  SgdConfig cfg;
  cfg.epochs = 50;
  cfg.seed = 12;
  const SgdResult a = solve_embeddings_sgd(pos, neg, cfg);
  const SgdResult b = solve_embeddings_sgd(pos, neg, cfg);
  CHECK(a.embeddings == b.embeddings);
  cfg.seed = 13;
  CHECK(solve_embeddings_sgd(pos, neg, cfg).embeddings != a.embeddings);
}

TEST_CASE("sgd divergence reports the learning rate") {
  const Eigen::MatrixXd pos = Eigen::MatrixXd::Constant(2, 2, 1e8);
  const Eigen::MatrixXd neg = Eigen::MatrixXd::Constant(2, 2, 1.0);
  SgdConfig cfg;
  // Large enough that the very first Gram matrix overflows to infinity.
  cfg.learning_rate = 1e200;
  cfg.epochs = 50;
  CHECK_THROWS_AS(solve_embeddings_sgd(pos, neg, cfg), std::runtime_error);
}

TEST_CASE("sgd config validation") {
  const Eigen::MatrixXd M = Eigen::MatrixXd::Ones(2, 2);
  SgdConfig cfg;
  cfg.dim = 0;
  CHECK_THROWS_AS(solve_embeddings_sgd(M, M, cfg), std::invalid_argument);
  cfg = SgdConfig{};
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(solve_embeddings_sgd(M, M, cfg), std::invalid_argument);
  Eigen::MatrixXd bad = M;
  bad(0, 1) = -1.0;
  CHECK_THROWS_AS(solve_embeddings_sgd(bad, M, SgdConfig{}),
                  std::invalid_argument);
}

TEST_CASE("embedding CSV round trip") {
  const std::string path = "test_embeddings.csv";
  Eigen::MatrixXd U(2, 3);
  U << 1.0, -2.5, 0.125, 3.0, 0.0, -7.75;
  save_embeddings_csv(U, {1, 0}, path);
  {
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "node,label,x1,x2,x3");
  }
  std::vector<int> labels;
  const Eigen::MatrixXd back = load_embeddings_csv(path, &labels);
  CHECK(back.isApprox(U));
  CHECK(labels == std::vector<int>{1, 0});
  std::remove(path.c_str());
}

TEST_CASE("sgd trace CSV format") {
  const std::string path = "test_sgd_trace.csv";
  save_sgd_trace_csv({{0, 10.5, 0.0}, {1, 9.25, 0.5}}, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "epoch,objective,procrustes_change");
  std::getline(in, line);
  CHECK(line.rfind("0,10.5", 0) == 0);
  std::remove(path.c_str());
}
