#include "gwgauss/wyner.hpp"

#include <sstream>

namespace gwgauss {

namespace {

constexpr double kBoundaryEigenvalue = 1e-12;

// Returns the eigenvalues of a symmetric matrix (ascending).
Vector sym_eigenvalues(const Matrix& m) {
  if (m.size() == 0) return Vector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

std::string_view case_name(CommonInfoCase c) noexcept {
  switch (c) {
    case CommonInfoCase::Independent: return "independent";
    case CommonInfoCase::Correlated: return "correlated";
    case CommonInfoCase::IdenticalPresent: return "identical-present";
  }
  return "unknown";
}

CommonInfoResult common_information(const IndexSextuple& idx, const Vector& d) {
  check_indices(idx, d);
  CommonInfoResult r;
  r.per_coefficient_terms =
      0.5 * ((1.0 + d.array()) / (1.0 - d.array())).log().matrix();
  if (idx.p11 > 0) {
    r.case_tag = CommonInfoCase::IdenticalPresent;
    r.value = kInf;
  } else if (idx.p12 > 0) {
    r.case_tag = CommonInfoCase::Correlated;
    r.value = r.per_coefficient_terms.sum();
  } else {
    r.case_tag = CommonInfoCase::Independent;
    r.value = 0.0;
  }
  return r;
}

CommonInfoResult common_information(const Vector& d) {
  const int n = static_cast<int>(d.size());
  return common_information(IndexSextuple{0, n, 0, 0, n, 0}, d);
}

bool in_family(const Vector& d, const Matrix& qw) {
  const auto n = d.size();
  if (qw.rows() != n || qw.cols() != n) return false;
  if (n == 0) return true;
  if ((d.array() <= 0.0).any() || (d.array() >= 1.0).any()) return false;
  if ((qw - qw.transpose()).cwiseAbs().maxCoeff() > Tolerances::symmetry(qw)) {
    return false;
  }
  const Vector dinv = d.cwiseInverse();
  const double tol = 1e-10 * dinv.maxCoeff();
  const Matrix sym = 0.5 * (qw + qw.transpose());
  const Matrix lower = sym - Matrix(d.asDiagonal());
  const Matrix upper = Matrix(dinv.asDiagonal()) - sym;
  return sym_eigenvalues(lower)(0) >= -tol && sym_eigenvalues(upper)(0) >= -tol;
}

QWParameter::QWParameter(const Vector& d, const Matrix& qw) {
  if (qw.rows() != d.size() || qw.cols() != d.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "QW dimension must equal the number of canonical correlations");
  }
  if (!in_family(d, qw)) {
    throw Error(ErrorCode::QWOutOfFamily,
                "QW violates D <= QW <= D^-1 beyond tolerance");
  }
  qw_ = 0.5 * (qw + qw.transpose());
}

QWParameter QWParameter::identity(const Vector& d) {
  return QWParameter(d, Matrix::Identity(d.size(), d.size()));
}

bool QWParameter::is_diagonal() const {
  if (qw_.size() == 0) return true;
  Matrix off = qw_;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() == 0.0;
}

Matrix conditional_cov_y1(const Vector& d, const Matrix& qw) {
  const auto n = d.size();
  const Vector s = d.cwiseSqrt();
  const Matrix m = Matrix::Identity(n, n) -
                   s.asDiagonal() * qw.ldlt().solve(Matrix(s.asDiagonal()));
  return 0.5 * (m + m.transpose());
}

Matrix conditional_cov_y2(const Vector& d, const Matrix& qw) {
  const auto n = d.size();
  const Vector s = d.cwiseSqrt();
  const Matrix m = Matrix::Identity(n, n) - s.asDiagonal() * qw * s.asDiagonal();
  return 0.5 * (m + m.transpose());
}

double mi_given_state(const Vector& d, const QWParameter& q) {
  if (d.size() == 0) return 0.0;
  const Vector e1 = sym_eigenvalues(conditional_cov_y1(d, q.matrix()));
  const Vector e2 = sym_eigenvalues(conditional_cov_y2(d, q.matrix()));
  if (e1(0) <= kBoundaryEigenvalue || e2(0) <= kBoundaryEigenvalue) return kInf;
  const double joint = (1.0 - d.array().square()).log().sum();
  return 0.5 * joint - 0.5 * (e1.array().log().sum() + e2.array().log().sum());
}

double check_hua_identity(const Matrix& a, const Matrix& b) {
  const auto n = b.rows();
  if (a.rows() != n || a.cols() != n || b.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "A and B must be n x n");
  }
  if (n == 0) return 0.0;
  const Matrix id = Matrix::Identity(n, n);
  const Matrix ibb = id - b.transpose() * b;
  const Matrix ibbt = id - b * b.transpose();
  Eigen::FullPivLU<Matrix> lu(ibb);
  Eigen::FullPivLU<Matrix> lu_t(ibbt);
  if (!lu.isInvertible() || !lu_t.isInvertible()) {
    throw Error(ErrorCode::SingularFactor, "I - B^T B is singular");
  }
  const Matrix iab = id - a.transpose() * b;
  const Matrix diff = a - b;
  const Matrix r = (id - a.transpose() * a) - iab * lu.solve(iab.transpose()) +
                   diff.transpose() * lu_t.solve(diff);
  return r.cwiseAbs().maxCoeff();
}

HuaInequality check_hua_inequality(const Vector& d, const QWParameter& q) {
  HuaInequality h;
  h.lhs = conditional_cov_y1(d, q.matrix()).determinant() *
          conditional_cov_y2(d, q.matrix()).determinant();
  h.rhs = (1.0 - d.array()).square().prod();
  h.holds = h.lhs <= h.rhs + 1e-12;
  const auto n = d.size();
  h.equality = n == 0 ||
               (q.matrix() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8;
  return h;
}

}  // namespace gwgauss
