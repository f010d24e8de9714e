#include "gwgauss/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gwgauss {

namespace {

constexpr Eigen::Index kMinSamples = 1000;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double cross_max(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  return max_abs(a.transpose() * b / static_cast<double>(a.rows()));
}

double relative(double value, double target) {
  const double err = std::abs(value - target);
  return target == 0.0 ? err : err / std::abs(target);
}

}  // namespace

Matrix empirical_covariance(const Matrix& x) {
  if (x.rows() == 0) return Matrix::Zero(x.cols(), x.cols());
  return x.transpose() * x / static_cast<double>(x.rows());
}

ValidationReport validate_realization(const SampleBlock& s, const Matrix& target) {
  if (s.n_samples < kMinSamples) {
    std::ostringstream os;
    os << "validation needs at least " << kMinSamples << " samples, got " << s.n_samples;
    throw Error(ErrorCode::TooFewSamples, os.str());
  }
  const auto p1 = s.y1.cols(), p2 = s.y2.cols(), n = s.w.cols();
  const bool with_state = target.rows() == p1 + p2 + n && n > 0;
  if (target.rows() != target.cols() || (target.rows() != p1 + p2 && !with_state)) {
    throw Error(ErrorCode::DimensionMismatch,
                "target covariance must cover (Y1, Y2) or (Y1, Y2, W)");
  }

  Matrix x(s.n_samples, target.rows());
  x.leftCols(p1) = s.y1;
  x.middleCols(p1, p2) = s.y2;
  if (with_state) x.rightCols(n) = s.w;
  const Matrix emp = empirical_covariance(x);

  ValidationReport r;
  r.n_samples = s.n_samples;
  const double tn = target.norm();
  r.cov_rel_err = tn == 0.0 ? (emp - target).norm() : (emp - target).norm() / tn;

  const Matrix ey = empirical_covariance([&] {
    Matrix xy(s.n_samples, p1 + p2 + n);
    xy << s.y1, s.y2, s.w;
    return xy;
  }());
  const Matrix q12 = ey.block(0, p1, p1, p2);
  if (n == 0) {
    r.ci_residual = max_abs(q12);
  } else {
    const Matrix q1w = ey.block(0, p1 + p2, p1, n);
    const Matrix q2w = ey.block(p1, p1 + p2, p2, n);
    const Matrix qw = ey.bottomRightCorner(n, n);
    r.ci_residual = max_abs(q12 - q1w * qw.ldlt().solve(q2w.transpose()));
  }

  if (s.z1.rows() == s.n_samples && s.z2.rows() == s.n_samples) {
    r.noise_cross = std::max({cross_max(s.z1, s.z2), cross_max(s.z1, s.w),
                              cross_max(s.z2, s.w)});
  }

  if (s.has_reconstruction()) {
    r.distortions = {(s.y1 - s.yhat1).rowwise().squaredNorm().mean(),
                     (s.y2 - s.yhat2).rowwise().squaredNorm().mean()};
  }
  try {
    r.mi_plugin = gaussian_mi(ey.topLeftCorner(p1 + p2, p1 + p2), p1, p2);
  } catch (const Error&) {
    // degenerate marginals: the plug-in estimate is undefined
    r.mi_plugin = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

DistortionCheck validate_distortion(const SampleBlock& s, double target1, double target2) {
  if (!s.has_reconstruction() || s.yhat1.rows() != s.y1.rows() ||
      s.yhat2.rows() != s.y2.rows()) {
    throw Error(ErrorCode::MissingReconstruction, "samples carry no reconstruction");
  }
  DistortionCheck c;
  c.empirical1 = (s.y1 - s.yhat1).rowwise().squaredNorm().mean();
  c.empirical2 = (s.y2 - s.yhat2).rowwise().squaredNorm().mean();
  c.rel_err1 = relative(c.empirical1, target1);
  c.rel_err2 = relative(c.empirical2, target2);
  return c;
}

}  // namespace gwgauss
