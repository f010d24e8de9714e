#pragma once

#include <cstdint>

#include "gwgauss/gaussmodel.hpp"
#include "gwgauss/wyner.hpp"

namespace gwgauss {

/// Y1 = C1 W + Z1, Y2 = C2 W + Z2 with (Z1, Z2, W) independent.
struct CIRealization {
  Matrix c1, c2;
  Matrix qz1, qz2;
  Matrix qw;

  Eigen::Index state_dim() const noexcept { return qw.rows(); }
  Eigen::Index p1() const noexcept { return c1.rows(); }
  Eigen::Index p2() const noexcept { return c2.rows(); }

  /// Covariance of (Y1, Y2) implied by the realization.
  Matrix pair_covariance() const;
  /// Covariance of (Y1, Y2, W).
  Matrix triple_covariance() const;
  /// Reconstructed cross-covariance C1 QW C2^T.
  Matrix cross_covariance() const { return c1 * qw * c2.transpose(); }
};

/// Family member realization over the correlated part:
/// C1 = D^½ QW^-1, C2 = D^½, QZ1 = I - D^½QW^-1D^½, QZ2 = I - D^½QWD^½.
CIRealization family_realization(const Vector& d, const QWParameter& q);

/// Extends a correlated-part realization to the full canonical pair: the
/// identical block passes through as state, private blocks become noise.
CIRealization embed_realization(const IndexSextuple& idx,
                                const CIRealization& correlated);

/// Covariance of the canonical pair [[I, D3], [D3^T, I]] for (idx, d).
Matrix canonical_pair_covariance(const IndexSextuple& idx, const Vector& d);

/// The common-information achieving state W* = (Y11, L1 Y12 + L2 Y22 + L3 V).
struct OptimalState {
  IndexSextuple idx;
  Vector d;
  Matrix l1, l2, l3;  // p12 x p12 diagonal
  Matrix qz;          // I - D, noise covariance of both correlated branches
  int identical_dim = 0;

  int state_dim() const noexcept { return idx.p11 + idx.p12; }

  /// Covariance algebra for the correlated block: Q_{W*}, Q_{Y1,W*},
  /// Q_{Y2,W*}. Should equal I, D^½, D^½.
  struct Moments {
    Matrix qw, q1w, q2w;
  };
  Moments moments() const;

  /// Full-pair realization with W = (W1*, W2*).
  CIRealization realization() const;
};

OptimalState optimal_state(const IndexSextuple& idx, const Vector& d);

/// Regression of the pair on the state: C_i = Q_{Yi,W} QW^-1,
/// QZ_i = Q_Yi - C_i QW C_i^T.
CIRealization encoder_split(const GaussianTriple& triple);

/// Cov(Z1, Z2) implied by a triple and its split; zero iff the state makes
/// Y1 and Y2 conditionally independent.
Matrix residual_cross_covariance(const GaussianTriple& triple,
                                 const CIRealization& split);

/// Reproductions Yhat_i = C_i W + A_i Z_i + V_i achieving the RDF point with
/// error covariances QE_i.
struct TestChannel {
  Vector d;
  CIRealization base;  // correlated-part family realization
  Matrix a1, a2;
  Matrix qv1, qv2;
  Matrix qe1, qe2;

  double target_distortion1() const { return qe1.trace(); }
  double target_distortion2() const { return qe2.trace(); }
};

/// alloc_i are distortions per conditional-covariance component: in
/// component order for diagonal QW, otherwise along the eigenvectors of the
/// conditional covariance in nonincreasing eigenvalue order.
TestChannel test_channel(const Vector& d, const QWParameter& q,
                         const Vector& alloc1, const Vector& alloc2);

/// Test channel at total distortions (delta1, delta2): allocations come from
/// reverse water-filling of each conditional covariance.
TestChannel rdf_test_channel(const Vector& d, const QWParameter& q, double delta1,
                             double delta2);

/// max |Cov(Y_i - Yhat_i, Yhat_i)| over both branches, from covariance algebra.
double reconstruction_orthogonality_residual(const TestChannel& tc);

/// Draws of one realization. Empty matrices stand for absent components.
struct SampleBlock {
  Eigen::Index n_samples = 0;
  Matrix w, z1, z2, v, v1, v2;
  Matrix y1, y2, yhat1, yhat2;

  bool has_reconstruction() const noexcept {
    return yhat1.rows() > 0 || yhat2.rows() > 0;
  }
};

SampleBlock sample(const CIRealization& real, Eigen::Index n, std::uint64_t seed);
SampleBlock sample(const OptimalState& state, Eigen::Index n, std::uint64_t seed);
SampleBlock sample(const TestChannel& tc, Eigen::Index n, std::uint64_t seed);

/// Symmetric square root with negative eigenvalues above -1e-12 clipped.
Matrix psd_sqrt(const Matrix& q);

}  // namespace gwgauss
