#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "gwgauss/mc_oracle.hpp"
#include "gwgauss/realize.hpp"

using namespace gwgauss;
using testsupport::vec;

TEST_SUITE("mc_oracle") {

TEST_CASE("optimal realization matches the source") {
  const IndexSextuple idx{0, 3, 0, 0, 3, 0};
  const Vector d = vec({0.8, 0.5, 0.1});
  const SampleBlock s = sample(optimal_state(idx, d), 200000, 1);
  const ValidationReport r = validate_realization(s, canonical_pair_covariance(idx, d));
  CHECK(r.n_samples == 200000);
  CHECK(r.cov_rel_err < 1e-2);
  CHECK(r.ci_residual < 1e-2);
  CHECK(r.noise_cross < 3.0 / std::sqrt(200000.0));
  CHECK(std::abs(r.mi_plugin - mi_canonical(idx, d)) < 5e-3);
}

TEST_CASE("state-augmented target") {
  const Vector d = vec({0.6});
  const CIRealization real = family_realization(d, QWParameter::identity(d));
  const SampleBlock s = sample(real, 50000, 2);
  const ValidationReport r = validate_realization(s, real.triple_covariance());
  CHECK(r.cov_rel_err < 3e-2);
}

TEST_CASE("plug-in mutual information of a scalar pair") {
  const Vector d = vec({0.5});
  const SampleBlock s = sample(family_realization(d, QWParameter::identity(d)), 200000, 3);
  const ValidationReport r = validate_realization(s, testsupport::canonical_pair(Matrix::Constant(1, 1, 0.5)).joint());
  CHECK(std::abs(r.mi_plugin - testsupport::oracle()["mi_scalar_rho05"].get<double>()) < 5e-3);
}

TEST_CASE("degenerate zero block") {
  SampleBlock s;
  s.n_samples = 2000;
  s.y1 = Matrix::Zero(2000, 1);
  s.y2 = Matrix::Zero(2000, 1);
  s.w = Matrix::Zero(2000, 0);
  const ValidationReport r = validate_realization(s, Matrix::Zero(2, 2));
  CHECK(r.cov_rel_err == 0.0);
  CHECK(std::isnan(r.mi_plugin));
}

TEST_CASE("distortion checks") {
  const Vector d = vec({0.5});
  const auto q = QWParameter::identity(d);
  const TestChannel tc = test_channel(d, q, vec({0.25}), vec({0.25}));
  const SampleBlock s = sample(tc, 200000, 4);
  const DistortionCheck c = validate_distortion(s, 0.25, 0.25);
  CHECK(c.rel_err1 < 0.01);
  CHECK(c.rel_err2 < 0.01);

  const TestChannel zero = test_channel(d, q, vec({0.5}), vec({0.5}));
  const DistortionCheck z = validate_distortion(sample(zero, 200000, 5), 0.5, 0.5);
  CHECK(z.rel_err1 < 0.01);

  SampleBlock pass = s;
  pass.yhat1 = pass.y1;
  pass.yhat2 = pass.y2;
  CHECK(validate_distortion(pass, 0.0, 0.0).empirical1 == 0.0);

  try {
    validate_distortion(sample(optimal_state(IndexSextuple{0, 1, 0, 0, 1, 0}, d), 10, 1), 1, 1);
    FAIL("expected MissingReconstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingReconstruction);
  }
}

TEST_CASE("too few samples") {
  const Vector d = vec({0.5});
  const SampleBlock s = sample(family_realization(d, QWParameter::identity(d)), 999, 1);
  try {
    validate_realization(s, Matrix::Identity(2, 2));
    FAIL("expected TooFewSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewSamples);
  }
}

TEST_CASE("errors shrink with the sample size") {
  const IndexSextuple idx{0, 2, 0, 0, 2, 0};
  const Vector d = vec({0.7, 0.3});
  const Matrix target = canonical_pair_covariance(idx, d);
  std::vector<double> small, large;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    small.push_back(validate_realization(sample(optimal_state(idx, d), 4000, seed), target).cov_rel_err);
    large.push_back(validate_realization(sample(optimal_state(idx, d), 16000, seed + 100), target).cov_rel_err);
  }
  std::sort(small.begin(), small.end());
  std::sort(large.begin(), large.end());
  const double ratio = large[10] / small[10];
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.75);
}

}  // TEST_SUITE
