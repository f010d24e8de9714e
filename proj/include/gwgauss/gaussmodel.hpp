#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <utility>

#include "gwgauss/error.hpp"

namespace gwgauss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Symmetric covariance matrix, validated on construction.
class CovMatrix {
 public:
  CovMatrix() = default;

  /// Symmetrizes `q`; throws AsymmetricMatrix, and NotPositiveDefinite when
  /// `strict` and the smallest eigenvalue is not above the tolerance.
  explicit CovMatrix(const Matrix& q, bool strict = true);

  Eigen::Index dim() const noexcept { return q_.rows(); }
  const Matrix& matrix() const noexcept { return q_; }
  bool strict() const noexcept { return strict_; }

 private:
  Matrix q_;
  bool strict_ = false;
};

/// Zero-mean jointly Gaussian pair (Y1, Y2) with p1 + p2 dimensional
/// covariance [[Q11, Q12], [Q12^T, Q22]].
class JointGaussianPair {
 public:
  JointGaussianPair() = default;
  JointGaussianPair(const Matrix& q11, const Matrix& q12, const Matrix& q22);

  /// Splits a full (p1 + p2) joint covariance.
  static JointGaussianPair from_joint(const Matrix& q, Eigen::Index p1,
                                      Eigen::Index p2);

  Eigen::Index p1() const noexcept { return q11_.rows(); }
  Eigen::Index p2() const noexcept { return q22_.rows(); }
  const Matrix& q11() const noexcept { return q11_; }
  const Matrix& q22() const noexcept { return q22_; }
  const Matrix& q12() const noexcept { return q12_; }
  Matrix joint() const;

 private:
  Matrix q11_, q22_, q12_;
};

/// Pair plus a state W with covariance QW and cross blocks Q1W, Q2W.
struct GaussianTriple {
  JointGaussianPair pair;
  Matrix qw;
  Matrix q1w;
  Matrix q2w;

  Eigen::Index state_dim() const noexcept { return qw.rows(); }
  Matrix joint() const;
  /// Throws unless the assembled covariance is symmetric PSD.
  void validate() const;
};

struct Tolerances {
  static double symmetry(const Matrix& q);
  static double positive_definite(double largest_eigenvalue);
};

CovMatrix validate_covariance(const Matrix& q, bool strict);

/// Sum of log-eigenvalues of a symmetric matrix, or -inf when the smallest
/// eigenvalue is at or below the relative positive-definiteness tolerance.
double log_det_spd(const Matrix& q);

/// Differential entropy in nats.
double gaussian_entropy(const CovMatrix& q);

/// I(X;Y) in nats for the split (nx, ny) of `q_joint`; +inf on a singular
/// joint covariance.
double gaussian_mi(const Matrix& q_joint, Eigen::Index nx, Eigen::Index ny);

struct IndexSextuple {
  int p11 = 0, p12 = 0, p13 = 0;
  int p21 = 0, p22 = 0, p23 = 0;

  int p1() const noexcept { return p11 + p12 + p13; }
  int p2() const noexcept { return p21 + p22 + p23; }
  bool consistent() const noexcept;
  bool operator==(const IndexSextuple&) const = default;
};

/// Throws InconsistentIndices when `idx` is malformed or does not fit `d`.
void check_indices(const IndexSextuple& idx, const Vector& d);

/// Mutual information of a pair in canonical variable form.
double mi_canonical(const IndexSextuple& idx, const Vector& d);

// Unit conversions applied only at presentation.
inline double nats_to_bits(double nats) { return nats / std::log(2.0); }

}  // namespace gwgauss
