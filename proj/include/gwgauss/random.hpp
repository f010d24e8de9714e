#pragma once

#include <cstdint>
#include <random>

#include "gwgauss/gaussmodel.hpp"

namespace gwgauss {

using Rng = std::mt19937_64;

/// Generator for an independent stream derived from a master seed. Streams
/// with distinct ids never share state, so adding a stream leaves the draws
/// of the others untouched.
Rng make_stream(std::uint64_t seed, std::uint64_t stream_id);

/// rows x cols matrix of independent standard normals.
Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// sign of R's diagonal folded in).
Matrix random_orthogonal(Eigen::Index n, Rng& rng);

/// Q = L L^T + jitter * I with L a p x p standard-normal matrix, split into a
/// pair. This is the random-instance generator used by `demo-random`.
JointGaussianPair random_pair_lltt(Eigen::Index p1, Eigen::Index p2, Rng& rng,
                                   double jitter = 1e-9);

/// Well-conditioned random pair: L L^T / p + ridge * I.
JointGaussianPair random_pair_conditioned(Eigen::Index p1, Eigen::Index p2,
                                          Rng& rng, double ridge = 0.1);

/// Exact member of D <= QW <= D^-1:
///   QW = D + (D^-1 - D)^{1/2} R^T Diag(t) R (D^-1 - D)^{1/2},  t in (0,1).
Matrix random_family_member(const Vector& d, Rng& rng);

/// Diagonal member with q_j = d_j + t_j (1/d_j - d_j).
Matrix random_diagonal_family_member(const Vector& d, Rng& rng);

}  // namespace gwgauss
