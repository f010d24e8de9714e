#include "gwgauss/gaussmodel.hpp"

#include <numbers>
#include <sstream>

namespace gwgauss {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadFlags: return "BadFlags";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularValueOutOfRange: return "SingularValueOutOfRange";
    case ErrorCode::InconsistentIndices: return "InconsistentIndices";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::QWOutOfFamily: return "QWOutOfFamily";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::AllocationOutOfRange: return "AllocationOutOfRange";
    case ErrorCode::NonpositiveDistortion: return "NonpositiveDistortion";
    case ErrorCode::QWNotDiagonal: return "QWNotDiagonal";
    case ErrorCode::InfeasibleRegion: return "InfeasibleRegion";
    case ErrorCode::OutsideDW: return "OutsideDW";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::MissingReconstruction: return "MissingReconstruction";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

double Tolerances::symmetry(const Matrix& q) {
  const double scale = q.size() == 0 ? 0.0 : q.cwiseAbs().maxCoeff();
  return 1e-10 * (1.0 + scale);
}

double Tolerances::positive_definite(double largest_eigenvalue) {
  return 1e-10 * largest_eigenvalue;
}

CovMatrix::CovMatrix(const Matrix& q, bool strict) : strict_(strict) {
  if (q.rows() != q.cols()) {
    std::ostringstream os;
    os << "covariance must be square, got " << q.rows() << "x" << q.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (q.size() > 0) {
    const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
    if (asym > Tolerances::symmetry(q)) {
      std::ostringstream os;
      os << "matrix is not symmetric (max |Q - Q^T| = " << asym << ")";
      throw Error(ErrorCode::AsymmetricMatrix, os.str());
    }
  }
  q_ = 0.5 * (q + q.transpose());
  if (strict && q_.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(q_, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(q_.rows() - 1);
    if (!(hi > 0.0) || lo <= Tolerances::positive_definite(hi)) {
      std::ostringstream os;
      os << "matrix is not positive definite (min eigenvalue " << lo << ")";
      throw Error(ErrorCode::NotPositiveDefinite, os.str());
    }
  }
}

CovMatrix validate_covariance(const Matrix& q, bool strict) {
  return CovMatrix(q, strict);
}

JointGaussianPair::JointGaussianPair(const Matrix& q11, const Matrix& q12,
                                     const Matrix& q22) {
  if (q12.rows() != q11.rows() || q12.cols() != q22.rows() ||
      q11.rows() == 0 || q22.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "cross block does not match the marginal dimensions");
  }
  q11_ = CovMatrix(q11, true).matrix();
  q22_ = CovMatrix(q22, true).matrix();
  q12_ = q12;
  // strictness of the whole joint covariance
  CovMatrix(joint(), true);
}

JointGaussianPair JointGaussianPair::from_joint(const Matrix& q, Eigen::Index p1,
                                                Eigen::Index p2) {
  if (p1 <= 0 || p2 <= 0 || q.rows() != p1 + p2 || q.cols() != p1 + p2) {
    std::ostringstream os;
    os << "joint covariance is " << q.rows() << "x" << q.cols()
       << " but p1 + p2 = " << p1 + p2;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const Matrix sym = CovMatrix(q, true).matrix();
  return JointGaussianPair(sym.topLeftCorner(p1, p1), sym.topRightCorner(p1, p2),
                           sym.bottomRightCorner(p2, p2));
}

Matrix JointGaussianPair::joint() const {
  const auto p1 = q11_.rows(), p2 = q22_.rows();
  Matrix q(p1 + p2, p1 + p2);
  q << q11_, q12_, q12_.transpose(), q22_;
  return q;
}

Matrix GaussianTriple::joint() const {
  const auto p1 = pair.p1(), p2 = pair.p2(), n = state_dim();
  Matrix q(p1 + p2 + n, p1 + p2 + n);
  q.topLeftCorner(p1 + p2, p1 + p2) = pair.joint();
  q.block(0, p1 + p2, p1, n) = q1w;
  q.block(p1, p1 + p2, p2, n) = q2w;
  q.block(p1 + p2, 0, n, p1) = q1w.transpose();
  q.block(p1 + p2, p1, n, p2) = q2w.transpose();
  q.bottomRightCorner(n, n) = qw;
  return q;
}

void GaussianTriple::validate() const {
  if (qw.rows() != qw.cols() || q1w.rows() != pair.p1() ||
      q2w.rows() != pair.p2() || q1w.cols() != qw.rows() ||
      q2w.cols() != qw.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "triple blocks do not conform");
  }
  const CovMatrix full(joint(), false);
  Eigen::SelfAdjointEigenSolver<Matrix> es(full.matrix(), Eigen::EigenvaluesOnly);
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues()(0) < -1e-10 * (1.0 + hi)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "triple covariance is not positive semidefinite");
  }
}

double log_det_spd(const Matrix& q) {
  if (q.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (q + q.transpose()),
                                           Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  const double hi = ev(ev.size() - 1);
  if (!(hi > 0.0) || ev(0) <= Tolerances::positive_definite(hi)) {
    return -kInf;
  }
  return ev.array().log().sum();
}

double gaussian_entropy(const CovMatrix& q) {
  const double ld = log_det_spd(q.matrix());
  if (!std::isfinite(ld)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "entropy requires a positive definite covariance");
  }
  const double n = static_cast<double>(q.dim());
  return 0.5 * ld + 0.5 * n * std::log(2.0 * std::numbers::pi * std::numbers::e);
}

double gaussian_mi(const Matrix& q_joint, Eigen::Index nx, Eigen::Index ny) {
  if (nx < 0 || ny < 0 || q_joint.rows() != nx + ny ||
      q_joint.cols() != nx + ny) {
    throw Error(ErrorCode::DimensionMismatch,
                "split dimensions do not sum to the joint dimension");
  }
  if (nx == 0 || ny == 0) return 0.0;
  const Matrix q = CovMatrix(q_joint, false).matrix();
  const double ldx = log_det_spd(q.topLeftCorner(nx, nx));
  const double ldy = log_det_spd(q.bottomRightCorner(ny, ny));
  if (!std::isfinite(ldx) || !std::isfinite(ldy)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "marginal block is not positive definite");
  }
  const double ld = log_det_spd(q);
  if (!std::isfinite(ld)) return kInf;
  return std::max(0.0, -0.5 * (ld - ldx - ldy));
}

bool IndexSextuple::consistent() const noexcept {
  return p11 >= 0 && p12 >= 0 && p13 >= 0 && p21 >= 0 && p22 >= 0 &&
         p23 >= 0 && p11 == p21 && p12 == p22;
}

void check_indices(const IndexSextuple& idx, const Vector& d) {
  if (!idx.consistent()) {
    throw Error(ErrorCode::InconsistentIndices,
                "index sextuple requires p11 = p21, p12 = p22, all nonnegative");
  }
  if (d.size() != idx.p12) {
    std::ostringstream os;
    os << "expected " << idx.p12 << " canonical correlations, got " << d.size();
    throw Error(ErrorCode::InconsistentIndices, os.str());
  }
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0 && d(i) < 1.0) || (i > 0 && d(i) > d(i - 1))) {
      throw Error(ErrorCode::InconsistentIndices,
                  "canonical correlations must lie in (0,1), nonincreasing");
    }
  }
}

double mi_canonical(const IndexSextuple& idx, const Vector& d) {
  check_indices(idx, d);
  if (idx.p11 > 0) return kInf;
  if (idx.p12 == 0) return 0.0;
  return -0.5 * (1.0 - d.array().square()).log().sum();
}

}  // namespace gwgauss
