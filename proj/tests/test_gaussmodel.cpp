#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "gwgauss/gaussmodel.hpp"
#include "gwgauss/random.hpp"

using namespace gwgauss;
using testsupport::vec;

TEST_SUITE("gaussmodel") {

TEST_CASE("covariance validation") {
  Matrix q(2, 2);
  q << 2, 0.5, 0.5, 1;
  CHECK(CovMatrix(q).dim() == 2);

  Matrix asym = q;
  asym(0, 1) = 0.6;
  CHECK_THROWS_AS(CovMatrix{asym}, Error);
  try {
    CovMatrix c(asym);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AsymmetricMatrix);
  }

  Matrix singular(2, 2);
  singular << 1, 1, 1, 1;
  try {
    CovMatrix c(singular, true);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
  CHECK_NOTHROW(CovMatrix(singular, false));

  // Round-off asymmetry is symmetrized away.
  Matrix tiny = q;
  tiny(0, 1) += 1e-14;
  CHECK(CovMatrix(tiny).matrix()(0, 1) == doctest::Approx(CovMatrix(tiny).matrix()(1, 0)));
}

TEST_CASE("pair split and joint") {
  Matrix q = Matrix::Identity(5, 5);
  q(0, 3) = q(3, 0) = 0.4;
  const auto p = JointGaussianPair::from_joint(q, 3, 2);
  CHECK(p.p1() == 3);
  CHECK(p.p2() == 2);
  CHECK(p.q12()(0, 0) == 0.4);
  CHECK(testsupport::max_abs(p.joint() - q) == 0.0);
  CHECK_THROWS_AS(JointGaussianPair::from_joint(q, 3, 3), Error);
}

TEST_CASE("entropy and mutual information") {
  const Matrix id = Matrix::Identity(2, 2);
  const double h = gaussian_entropy(CovMatrix(id));
  CHECK(h == doctest::Approx(std::log(2.0 * M_PI * M_E)).epsilon(1e-14));

  CHECK(gaussian_entropy(CovMatrix(Matrix::Identity(3, 3))) == doctest::Approx(1.5 * std::log(2.0 * M_PI * M_E)).epsilon(1e-14));
  Matrix diag21 = Matrix::Zero(2, 2);
  diag21.diagonal() << 2, 1;
  CHECK(gaussian_entropy(CovMatrix(diag21)) == doctest::Approx(0.5 * std::log(2.0) + std::log(2.0 * M_PI * M_E)).epsilon(1e-14));

  Matrix q(2, 2);
  q << 1, 0.5, 0.5, 1;
  CHECK(gaussian_mi(q, 1, 1) ==
        doctest::Approx(testsupport::oracle()["mi_scalar_rho05"].get<double>()).epsilon(1e-14));

  Matrix identical(2, 2);
  identical << 1, 1, 1, 1;
  CHECK(std::isinf(gaussian_mi(identical, 1, 1)));

  CHECK(gaussian_mi(Matrix::Identity(4, 4), 2, 2) == 0.0);
}

TEST_CASE("canonical mutual information matches the joint formula") {
  IndexSextuple idx{0, 3, 1, 0, 3, 0};
  const Vector d = vec({0.8, 0.5, 0.1});
  Matrix q = Matrix::Identity(7, 7);
  for (int i = 0; i < 3; ++i) q(i, 4 + i) = q(4 + i, i) = d(i);
  CHECK(mi_canonical(idx, d) == doctest::Approx(gaussian_mi(q, 4, 3)).epsilon(1e-12));
  CHECK(mi_canonical(idx, d) == doctest::Approx(0.65970).epsilon(1e-5));
  CHECK(mi_canonical(IndexSextuple{0, 0, 2, 0, 0, 3}, Vector()) == 0.0);

  idx.p11 = 1;
  idx.p21 = 1;
  CHECK(std::isinf(mi_canonical(idx, d)));
}

TEST_CASE("index checks") {
  const Vector d = vec({0.8, 0.5});
  CHECK_NOTHROW(check_indices(IndexSextuple{1, 2, 0, 1, 2, 3}, d));
  CHECK_THROWS_AS(check_indices(IndexSextuple{1, 2, 0, 0, 2, 0}, d), Error);
  CHECK_THROWS_AS(check_indices(IndexSextuple{0, 3, 0, 0, 3, 0}, d), Error);
  CHECK_THROWS_AS(check_indices(IndexSextuple{0, 2, 0, 0, 2, 0}, vec({0.5, 0.8})), Error);
  CHECK_THROWS_AS(check_indices(IndexSextuple{0, 1, 0, 0, 1, 0}, vec({1.0})), Error);
}

TEST_CASE("seeded streams are reproducible and independent") {
  Rng a = make_stream(42, 1), b = make_stream(42, 1), c = make_stream(42, 2);
  const Matrix ga = standard_normal(3, 3, a), gb = standard_normal(3, 3, b),
               gc = standard_normal(3, 3, c);
  CHECK(testsupport::max_abs(ga - gb) == 0.0);
  CHECK(testsupport::max_abs(ga - gc) > 0.0);

  Rng r = make_stream(7, 0);
  const Matrix o = random_orthogonal(5, r);
  CHECK(testsupport::max_abs(o.transpose() * o - Matrix::Identity(5, 5)) < 1e-12);
}

}  // TEST_SUITE
