#include <doctest.h>

#include <cmath>

#include "ergonode/metrics.hpp"
#include "ergonode/rng.hpp"

using namespace ergonode;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = 2.0 * rng.next_double() - 1.0;
  return M;
}

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d R;
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

}  // namespace

TEST_CASE("svd coordinates") {
  const Eigen::MatrixXd U = random_matrix(8, 2, 3);
  const Eigen::MatrixXd C = svd_coordinates(U);
  SUBCASE("gram is preserved") {
    CHECK((C * C.transpose()).isApprox(U * U.transpose(), 1e-10));
  }
  SUBCASE("columns are orthogonal with singular-value norms") {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(U);
    const Eigen::MatrixXd CtC = C.transpose() * C;
    CHECK(std::abs(CtC(0, 1)) < 1e-10);
    CHECK(std::sqrt(CtC(0, 0)) ==
          doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
    CHECK(std::sqrt(CtC(1, 1)) ==
          doctest::Approx(svd.singularValues()(1)).epsilon(1e-10));
  }
  SUBCASE("zero matrix rejected") {
    CHECK_THROWS_AS(svd_coordinates(Eigen::MatrixXd::Zero(3, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("procrustes alignment") {
  const Eigen::MatrixXd U1 = random_matrix(10, 2, 5);
  SUBCASE("recovers a pure rotation") {
    const Eigen::Matrix2d R = rotation(0.7);
    const Eigen::MatrixXd U2 = U1 * R.transpose();  // U2 * R == U1
    const ProcrustesResult result = procrustes_align(U1, U2);
    CHECK(result.distance == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(result.rotation.isApprox(R, 1e-10));
  }
  SUBCASE("recovers a reflection") {
    Eigen::Matrix2d F = Eigen::Matrix2d::Identity();
    F(1, 1) = -1.0;
    const ProcrustesResult result = procrustes_align(U1, U1 * F);
    CHECK(result.distance == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("aligned distance never exceeds the raw distance") {
    const Eigen::MatrixXd U2 = random_matrix(10, 2, 6);
    const ProcrustesResult result = procrustes_align(U1, U2);
    CHECK(result.distance <= (U1 - U2).norm() + 1e-12);
    CHECK((result.rotation * result.rotation.transpose())
              .isApprox(Eigen::Matrix2d::Identity(), 1e-10));
  }
  SUBCASE("shape mismatch rejected") {
    CHECK_THROWS_AS(procrustes_align(U1, random_matrix(9, 2, 7)),
                    std::invalid_argument);
  }
}

TEST_CASE("snr_1d hand example") {
  // Two clusters along the x axis, unit population variance along x.
  Eigen::MatrixXd U(4, 2);
  const double d = 3.0;
  U << 1, 0, -1, 0, d + 1, 0, d - 1, 0;
  const std::vector<int> labels{0, 0, 1, 1};
  // Unnormalized: |mu|^2 / (0.5 (d^2 + d^2)) = d^2 / d^2 = 1.
  CHECK(snr_1d(U, labels) == doctest::Approx(1.0).epsilon(1e-12));
  // Projection-normalized: variance along the unit direction is 1.
  CHECK(snr_1d(U, labels, true) == doctest::Approx(d * d).epsilon(1e-12));
}

TEST_CASE("snr_1d edge cases") {
  SUBCASE("noise orthogonal to the separation is infinite") {
    Eigen::MatrixXd U(4, 2);
    U << 0, 1, 0, -1, 5, 1, 5, -1;
    CHECK(std::isinf(snr_1d(U, {0, 0, 1, 1})));
  }
  SUBCASE("identical point masses are 0/0") {
    const Eigen::MatrixXd U = Eigen::MatrixXd::Zero(4, 2);
    CHECK_THROWS_AS(snr_1d(U, {0, 0, 1, 1}), std::invalid_argument);
  }
  SUBCASE("wrong community counts rejected") {
    const Eigen::MatrixXd U = random_matrix(4, 2, 8);
    CHECK_THROWS_AS(snr_1d(U, {0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(snr_1d(U, {0, 1, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(snr_1d(U, {0, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(snr_1d(U, {0, 1}), std::invalid_argument);
  }
  SUBCASE("invariant to rotations of the embedding") {
    const Eigen::MatrixXd U = random_matrix(8, 2, 9);
    const std::vector<int> labels{0, 0, 0, 0, 1, 1, 1, 1};
    CHECK(snr_1d(U * rotation(1.1), labels) ==
          doctest::Approx(snr_1d(U, labels)).epsilon(1e-10));
  }
}

TEST_CASE("gram distance") {
  const Eigen::MatrixXd U1 = random_matrix(6, 2, 10);
  SUBCASE("zero against itself and rotation invariance") {
    CHECK(gram_distance(U1, U1, false) == 0.0);
    CHECK(gram_distance(U1, U1 * rotation(0.4), false) ==
          doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("hand value") {
    Eigen::MatrixXd A(2, 1), B(2, 1);
    A << 1, 0;
    B << 0, 0;
    // Gram difference is e1 e1^T.
    CHECK(gram_distance(A, B, false) == doctest::Approx(1.0));
    CHECK(gram_distance(A, B, true) == doctest::Approx(1.0));
  }
  SUBCASE("normalization and zero-zero rejection") {
    const Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(6, 2);
    CHECK(gram_distance(U1, Z, true) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gram_distance(Z, Z, true), std::invalid_argument);
    CHECK(gram_distance(Z, Z, false) == 0.0);
  }
}

TEST_CASE("gaussian ellipse") {
  SUBCASE("moments of an explicit point set") {
    Eigen::MatrixXd P(4, 2);
    P << 1, 0, -1, 0, 0, 2, 0, -2;
    const GaussianEllipse e = gaussian_ellipse(P);
    CHECK(e.center.norm() == doctest::Approx(0.0));
    CHECK(e.covariance(0, 0) == doctest::Approx(0.5));
    CHECK(e.covariance(1, 1) == doctest::Approx(2.0));
    CHECK(e.covariance(0, 1) == doctest::Approx(0.0));
    CHECK(e.scale == doctest::Approx(5.99146).epsilon(1e-5));
    CHECK_FALSE(e.degenerate);
  }
  SUBCASE("collinear points are flagged degenerate") {
    Eigen::MatrixXd P(3, 2);
    P << 0, 0, 1, 0, 2, 0;
    CHECK(gaussian_ellipse(P).degenerate);
  }
  SUBCASE("confidence changes the scale monotonically") {
    Eigen::MatrixXd P(4, 2);
    P << 1, 0, -1, 0, 0, 1, 0, -1;
    CHECK(gaussian_ellipse(P, 0.5).scale <
          gaussian_ellipse(P, 0.95).scale);
    CHECK(gaussian_ellipse(P, 0.5).scale ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-8));
    CHECK_THROWS_AS(gaussian_ellipse(P, 1.0), std::invalid_argument);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(gaussian_ellipse(Eigen::MatrixXd::Zero(3, 3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian_ellipse(Eigen::MatrixXd::Zero(2, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("spectral embedding") {
  SUBCASE("complete graph leading column is constant") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Ones(4, 4);
    A.diagonal().setZero();
    const Eigen::MatrixXd U = spectral_embedding(Graph(A), 2);
    CHECK(U.rows() == 4);
    CHECK(U.cols() == 2);
    for (int i = 0; i < 4; ++i)
      CHECK(U(i, 0) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("columns have squared norm n") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
      const int j = (i + 1) % 5;
      A(i, j) = A(j, i) = 1.0;
    }
    const Eigen::MatrixXd U = spectral_embedding(Graph(A), 2);
    for (int c = 0; c < 2; ++c)
      CHECK(U.col(c).squaredNorm() == doctest::Approx(5.0).epsilon(1e-10));
  }
  SUBCASE("deterministic sign convention") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Ones(6, 6);
    A.diagonal().setZero();
    A(0, 5) = A(5, 0) = 0.0;
    const Eigen::MatrixXd U1 = spectral_embedding(Graph(A), 3);
    const Eigen::MatrixXd U2 = spectral_embedding(Graph(A), 3);
    CHECK(U1 == U2);
    for (int c = 0; c < 3; ++c) {
      int first = 0;
      while (first < 6 && U1(first, c) == 0.0) ++first;
      CHECK(U1(first, c) > 0.0);
    }
  }
  SUBCASE("zero-degree node rejected") {
    CHECK_THROWS_AS(spectral_embedding(Graph(Eigen::MatrixXd::Zero(3, 3)), 2),
                    std::runtime_error);
  }
}
