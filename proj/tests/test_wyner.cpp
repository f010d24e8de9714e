#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "gwgauss/random.hpp"
#include "gwgauss/realize.hpp"
#include "gwgauss/wyner.hpp"

using namespace gwgauss;
using testsupport::max_abs;
using testsupport::vec;

TEST_SUITE("wyner") {

TEST_CASE("common information values") {
  const auto& o = testsupport::oracle();
  const CommonInfoResult r = common_information(vec({0.8, 0.5, 0.1}));
  CHECK(r.case_tag == CommonInfoCase::Correlated);
  CHECK(r.value == doctest::Approx(o["example41_nats"].get<double>()).epsilon(1e-13));
  CHECK(nats_to_bits(r.value) == doctest::Approx(2.52221).epsilon(1e-5));
  CHECK(paper_example_bits(r.value) == doctest::Approx(5.0444).epsilon(1e-4));

  const IndexSextuple idx42{2, 2, 2, 2, 2, 1};
  const CommonInfoResult inf = common_information(idx42, vec({0.8, 0.3}));
  CHECK(std::isinf(inf.value));
  CHECK(inf.case_tag == CommonInfoCase::IdenticalPresent);
  const double part = common_information(vec({0.8, 0.3})).value;
  CHECK(part == doctest::Approx(1.40813).epsilon(1e-5));
  CHECK(paper_example_bits(part) ==
        doctest::Approx(o["example42_correlated_paper_bits"].get<double>()).epsilon(1e-13));

  const CommonInfoResult priv = common_information(IndexSextuple{0, 0, 2, 0, 0, 3}, Vector());
  CHECK(priv.value == 0.0);
  CHECK(priv.case_tag == CommonInfoCase::Independent);

  CHECK(common_information(vec({0.5})).value == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
  CHECK(case_name(CommonInfoCase::IdenticalPresent) == "identical-present");
}

TEST_CASE("family membership") {
  const Vector d = vec({0.5});
  CHECK(in_family(d, Matrix::Constant(1, 1, 1.2)));
  CHECK(in_family(d, Matrix::Constant(1, 1, 0.5)));
  CHECK_FALSE(in_family(d, Matrix::Constant(1, 1, 2.5)));
  CHECK_THROWS_AS(QWParameter(d, Matrix::Constant(1, 1, 0.4)), Error);
  CHECK_THROWS_AS(QWParameter(d, Matrix::Identity(2, 2)), Error);
  CHECK(QWParameter::identity(vec({0.3, 0.2})).is_diagonal());
}

TEST_CASE("mutual information over the family") {
  const Vector d = vec({0.5});
  const double v = mi_given_state(d, QWParameter(d, Matrix::Constant(1, 1, 1.2)));
  CHECK(v == doctest::Approx(0.5 * std::log(0.75 / (0.5833333333333334 * 0.4))).epsilon(1e-13));
  CHECK(v == doctest::Approx(0.58380).epsilon(1e-5));

  // Same value from the assembled triple.
  const CIRealization r = family_realization(d, QWParameter(d, Matrix::Constant(1, 1, 1.2)));
  CHECK(gaussian_mi(r.triple_covariance(), 2, 1) == doctest::Approx(v).epsilon(1e-12));

  CHECK(std::isinf(mi_given_state(d, QWParameter(d, Matrix::Constant(1, 1, 0.5)))));
  const Vector d3 = vec({0.8, 0.5, 0.1});
  CHECK(mi_given_state(d3, QWParameter::identity(d3)) ==
        doctest::Approx(common_information(d3).value).epsilon(1e-13));
}

TEST_CASE("matrix identity holds for random factors") {
  Rng rng = make_stream(5, 0);
  CHECK(check_hua_identity(Matrix::Zero(3, 3), Matrix::Zero(3, 3)) == 0.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 5);
    Matrix a = standard_normal(n, n, rng);
    Matrix b = standard_normal(n, n, rng);
    b *= 0.9 / std::max(1.0, b.operatorNorm());
    a *= 0.9 / std::max(1.0, a.operatorNorm());
    CHECK(check_hua_identity(a, b) < 1e-10);
  }
  CHECK_THROWS_AS(check_hua_identity(Matrix::Zero(2, 2), Matrix::Identity(2, 2)), Error);
}

TEST_CASE("matrix identity under the family substitution") {
  Rng rng = make_stream(6, 0);
  const Vector d = vec({0.9, 0.6, 0.2});
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix qw = random_family_member(d, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(qw);
    const Matrix root = es.operatorSqrt(), inv_root = es.operatorInverseSqrt();
    const Matrix sd = d.cwiseSqrt().asDiagonal();
    CHECK(check_hua_identity(sd * inv_root, root * sd) < 1e-9);
  }
}

TEST_CASE("determinant inequality") {
  const Vector d = vec({0.5});
  const HuaInequality at_id = check_hua_inequality(d, QWParameter::identity(d));
  CHECK(at_id.equality);
  CHECK(at_id.lhs == doctest::Approx(at_id.rhs).epsilon(1e-14));

  const HuaInequality inner = check_hua_inequality(d, QWParameter(d, Matrix::Constant(1, 1, 1.2)));
  CHECK(inner.holds);
  CHECK_FALSE(inner.equality);
  CHECK(inner.lhs == doctest::Approx(0.2333333333333333).epsilon(1e-13));
  CHECK(inner.rhs == doctest::Approx(0.25).epsilon(1e-14));

  Rng rng = make_stream(8, 0);
  const Vector d3 = vec({0.95, 0.7, 0.3, 0.05});
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = check_hua_inequality(d3, QWParameter(d3, random_family_member(d3, rng)));
    CHECK(h.holds);
  }
}

}  // TEST_SUITE
