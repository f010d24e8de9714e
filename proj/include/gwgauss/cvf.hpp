#pragma once

#include "gwgauss/gaussmodel.hpp"

namespace gwgauss {

/// Classification thresholds for raw canonical singular values: values above
/// `h1` count as identical components, values below `h2` as private ones.
struct Thresholds {
  double h1 = 1.0 - 1e-6;
  double h2 = 1e-9;

  void validate() const;
};

/// Canonical variable form of a pair: S1 Y1 and S2 Y2 have identity
/// covariances and cross-covariance D3 = [I 0 0; 0 Diag(d) 0; 0 0 0].
struct CanonicalForm {
  Matrix s1, s2;
  IndexSextuple idx;
  Vector d;  // correlated-part coefficients, nonincreasing, in (0,1)

  // Audit trail of the decomposition.
  Matrix u1, u2, u3, u4;
  Vector d1, d2;        // eigenvalues of Q11, Q22, nonincreasing
  Vector raw_singular;  // all min(p1, p2) singular values before thresholding
  Matrix d3;            // p1 x p2, raw singular values on the diagonal
  Matrix d3_thresholded;

  Eigen::Index p1() const noexcept { return s1.rows(); }
  Eigen::Index p2() const noexcept { return s2.rows(); }
  Matrix d4() const { return d.asDiagonal(); }
};

CanonicalForm decompose(const JointGaussianPair& pair, const Thresholds& th = {});

JointGaussianPair apply_transform(const JointGaussianPair& pair,
                                  const CanonicalForm& cf);

/// Max-abs deviation of the transformed pair from the canonical pattern,
/// using the raw singular values (so it is exact regardless of thresholds).
double canonical_pattern_residual(const JointGaussianPair& transformed,
                                  const CanonicalForm& cf);

/// Square roots of the eigenvalues of Q11^-1 Q12 Q22^-1 Q12^T, nonincreasing,
/// truncated to min(p1, p2). Independent of the SVD route in decompose().
Vector canonical_correlations_oracle(const JointGaussianPair& pair);

}  // namespace gwgauss
