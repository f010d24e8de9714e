#pragma once

#include <vector>

#include "gwgauss/gaussmodel.hpp"
#include "gwgauss/realize.hpp"

namespace gwgauss {

struct ValidationReport {
  Eigen::Index n_samples = 0;
  double cov_rel_err = 0.0;   // Frobenius-relative, vs the target covariance
  double ci_residual = 0.0;   // max |Q12 - Q1W QW^-1 QW2| on empirical moments
  double noise_cross = 0.0;   // max |Cov(Z1,Z2)|, |Cov(Z1,W)|, |Cov(Z2,W)|
  std::vector<double> distortion_errs;  // relative, per branch
  std::vector<double> distortions;      // empirical E|Y_i - Yhat_i|^2
  double mi_plugin = 0.0;     // nats, Gaussian formula on the empirical pair; nan if a marginal is singular
};

/// Second moments of zero-mean rows: X^T X / N.
Matrix empirical_covariance(const Matrix& x);

/// `target` covers (Y1, Y2) or (Y1, Y2, W). Throws TooFewSamples below 1000.
ValidationReport validate_realization(const SampleBlock& samples, const Matrix& target);

struct DistortionCheck {
  double empirical1 = 0.0, empirical2 = 0.0;
  double rel_err1 = 0.0, rel_err2 = 0.0;  // absolute error when the target is 0
};

/// Throws MissingReconstruction when the block carries no Yhat.
DistortionCheck validate_distortion(const SampleBlock& samples, double target1,
                                    double target2);

/// Entrywise covariance tolerance 5 p / sqrt(N).
inline double clt_threshold(Eigen::Index p, Eigen::Index n) {
  return 5.0 * static_cast<double>(p) / std::sqrt(static_cast<double>(n));
}

}  // namespace gwgauss
