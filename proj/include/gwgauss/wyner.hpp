#pragma once

#include <string_view>

#include "gwgauss/gaussmodel.hpp"

namespace gwgauss {

enum class CommonInfoCase { Independent, Correlated, IdenticalPresent };

std::string_view case_name(CommonInfoCase c) noexcept;

struct CommonInfoResult {
  double value = 0.0;  // nats; +inf when identical components are present
  CommonInfoCase case_tag = CommonInfoCase::Independent;
  Vector per_coefficient_terms;  // 1/2 ln((1+d_i)/(1-d_i))
};

/// Wyner's common information of a pair in canonical variable form.
CommonInfoResult common_information(const IndexSextuple& idx, const Vector& d);

/// Same, restricted to a correlated part with no identical or private
/// components.
CommonInfoResult common_information(const Vector& d);

/// Reproduces the per-example convention of reporting sum log2((1+d)/(1-d)),
/// i.e. twice the value in bits.
inline double paper_example_bits(double nats) { return 2.0 * nats_to_bits(nats); }

/// Member of the conditional-independence family: D <= QW <= D^-1.
class QWParameter {
 public:
  /// Throws QWOutOfFamily when the order constraints fail beyond tolerance.
  QWParameter(const Vector& d, const Matrix& qw);

  static QWParameter identity(const Vector& d);

  const Matrix& matrix() const noexcept { return qw_; }
  Eigen::Index dim() const noexcept { return qw_.rows(); }
  bool is_diagonal() const;

 private:
  Matrix qw_;
};

bool in_family(const Vector& d, const Matrix& qw);

/// I(Y1,Y2;W) over the family, in nats; +inf on the family boundary.
double mi_given_state(const Vector& d, const QWParameter& q);

/// I - D^{1/2} QW^{-1} D^{1/2} and I - D^{1/2} QW D^{1/2}: the conditional
/// covariances of Y1 and Y2 given W.
Matrix conditional_cov_y1(const Vector& d, const Matrix& qw);
Matrix conditional_cov_y2(const Vector& d, const Matrix& qw);

/// Max-abs residual of the Hua-type matrix identity
///   (I - A'A) - (I - A'B)(I - B'B)^-1 (I - A'B)' + (A - B)'(I - BB')^-1 (A - B)
/// Holds whenever I - B'B is invertible; throws SingularFactor otherwise.
double check_hua_identity(const Matrix& a, const Matrix& b);

struct HuaInequality {
  double lhs = 0.0;  // det([I - D^½QW^-1D^½][I - D^½QWD^½])
  double rhs = 0.0;  // det((I - D)^2)
  bool holds = false;
  bool equality = false;  // raised iff ||QW - I|| <= 1e-8
};

HuaInequality check_hua_inequality(const Vector& d, const QWParameter& q);

}  // namespace gwgauss
