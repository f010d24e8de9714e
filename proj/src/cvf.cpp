#include "gwgauss/cvf.hpp"

#include <algorithm>
#include <sstream>

namespace gwgauss {

namespace {

struct SortedEigen {
  Vector values;  // nonincreasing
  Matrix vectors;
};

SortedEigen eigen_descending(const Matrix& q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  const auto n = q.rows();
  SortedEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

}  // namespace

void Thresholds::validate() const {
  if (!(h2 > 0.0 && h2 < h1 && h1 < 1.0)) {
    std::ostringstream os;
    os << "thresholds must satisfy 0 < h2 < h1 < 1 (got h1=" << h1
       << ", h2=" << h2 << ")";
    throw Error(ErrorCode::BadFlags, os.str());
  }
}

CanonicalForm decompose(const JointGaussianPair& pair, const Thresholds& th) {
  th.validate();
  const auto p1 = pair.p1(), p2 = pair.p2();
  CanonicalForm cf;

  const SortedEigen e1 = eigen_descending(pair.q11());
  const SortedEigen e2 = eigen_descending(pair.q22());
  if (e1.values(p1 - 1) <= 0.0 || e2.values(p2 - 1) <= 0.0) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "marginal covariance is not positive definite");
  }
  cf.u1 = e1.vectors;
  cf.u2 = e2.vectors;
  cf.d1 = e1.values;
  cf.d2 = e2.values;

  const Vector inv_sqrt1 = cf.d1.array().rsqrt();
  const Vector inv_sqrt2 = cf.d2.array().rsqrt();
  const Matrix m =
      inv_sqrt1.asDiagonal() * (cf.u1.transpose() * pair.q12() * cf.u2) *
      inv_sqrt2.asDiagonal();

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  cf.u3 = svd.matrixU();
  cf.u4 = svd.matrixV();
  cf.raw_singular = svd.singularValues();

  const auto k = cf.raw_singular.size();
  for (Eigen::Index i = 0; i < k; ++i) {
    if (cf.raw_singular(i) > 1.0 + 1e-8) {
      std::ostringstream os;
      os << "canonical singular value " << cf.raw_singular(i)
         << " exceeds 1; covariance is numerically corrupt";
      throw Error(ErrorCode::SingularValueOutOfRange, os.str());
    }
  }

  int identical = 0, correlated = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double s = cf.raw_singular(i);
    if (s > th.h1) {
      ++identical;
    } else if (s >= th.h2) {
      ++correlated;
    }
  }
  cf.idx.p11 = cf.idx.p21 = identical;
  cf.idx.p12 = cf.idx.p22 = correlated;
  cf.idx.p13 = static_cast<int>(p1) - identical - correlated;
  cf.idx.p23 = static_cast<int>(p2) - identical - correlated;
  cf.d = cf.raw_singular.segment(identical, correlated);

  cf.d3 = Matrix::Zero(p1, p2);
  cf.d3_thresholded = Matrix::Zero(p1, p2);
  for (Eigen::Index i = 0; i < k; ++i) {
    cf.d3(i, i) = cf.raw_singular(i);
    if (i < identical) {
      cf.d3_thresholded(i, i) = 1.0;
    } else if (i < identical + correlated) {
      cf.d3_thresholded(i, i) = cf.raw_singular(i);
    }
  }

  cf.s1 = cf.u3.transpose() * inv_sqrt1.asDiagonal() * cf.u1.transpose();
  cf.s2 = cf.u4.transpose() * inv_sqrt2.asDiagonal() * cf.u2.transpose();
  return cf;
}

JointGaussianPair apply_transform(const JointGaussianPair& pair,
                                  const CanonicalForm& cf) {
  if (cf.s1.rows() != pair.p1() || cf.s1.cols() != pair.p1() ||
      cf.s2.rows() != pair.p2() || cf.s2.cols() != pair.p2()) {
    throw Error(ErrorCode::DimensionMismatch,
                "transform dimensions do not match the pair");
  }
  const Matrix q11 = cf.s1 * pair.q11() * cf.s1.transpose();
  const Matrix q22 = cf.s2 * pair.q22() * cf.s2.transpose();
  const Matrix q12 = cf.s1 * pair.q12() * cf.s2.transpose();
  return JointGaussianPair(q11, q12, q22);
}

double canonical_pattern_residual(const JointGaussianPair& transformed,
                                  const CanonicalForm& cf) {
  const auto p1 = transformed.p1(), p2 = transformed.p2();
  double r = (transformed.q11() - Matrix::Identity(p1, p1)).cwiseAbs().maxCoeff();
  r = std::max(r, (transformed.q22() - Matrix::Identity(p2, p2)).cwiseAbs().maxCoeff());
  r = std::max(r, (transformed.q12() - cf.d3).cwiseAbs().maxCoeff());
  return r;
}

Vector canonical_correlations_oracle(const JointGaussianPair& pair) {
  const Eigen::LLT<Matrix> llt22(pair.q22());
  if (llt22.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "Q22 is not positive definite");
  }
  const Matrix a = pair.q12() * llt22.solve(pair.q12().transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(
      0.5 * (a + a.transpose()), pair.q11(), Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "Q11 is not positive definite");
  }
  const auto p1 = pair.p1();
  const auto k = std::min(pair.p1(), pair.p2());
  Vector out(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out(i) = std::sqrt(std::max(0.0, ges.eigenvalues()(p1 - 1 - i)));
  }
  return out;
}

}  // namespace gwgauss
