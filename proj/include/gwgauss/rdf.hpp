#pragma once

#include <string_view>
#include <vector>

#include "gwgauss/gaussmodel.hpp"
#include "gwgauss/wyner.hpp"

namespace gwgauss {

struct RdfResult {
  double rate = 0.0;        // nats
  Vector variances;         // component variances fed to the water-filling
  Vector alloc;             // per-component distortions, min(lambda, variance)
  double water_level = 0.0;
  std::vector<int> active_set;  // components with alloc == water_level < variance
};

/// Reverse water-filling on positive component variances.
RdfResult marginal_rdf(const Vector& variances, double delta);

/// Conditional RDF of Y_branch given a diagonal state covariance. Component
/// variances are 1 - d_j / q_j (branch 1) or 1 - d_j q_j (branch 2).
RdfResult conditional_rdf(const Vector& d, const QWParameter& q, int branch,
                          double delta);

/// Conditional RDF for a general family member: water-fills the eigenvalues
/// of the conditional covariance, plus `private_dims` unit-variance
/// components that are independent of the state.
RdfResult conditional_rdf_general(const Vector& d, const Matrix& qw, int branch,
                                  double delta, int private_dims = 0);

/// Distortion rectangle 0 <= Delta_i <= n (1 - d_1) on which the lossy common
/// information equals C.
struct DWRegion {
  int n = 0;
  double d1 = 0.0;

  explicit DWRegion(const Vector& d);
  double bound() const noexcept { return n * (1.0 - d1); }
  bool contains(double delta1, double delta2) const noexcept;
};

enum class JointRegime { ClosedFormDW, Numerical, InfeasibleRegion };
std::string_view regime_name(JointRegime r) noexcept;

struct JointRdfResult {
  double rate = 0.0;
  Vector alloc1, alloc2;
  JointRegime regime = JointRegime::ClosedFormDW;
  // numerical branch only
  double mu1 = 0.0, mu2 = 0.0;  // multipliers of the two sum constraints
  double kkt_residual = 0.0;
};

/// Joint RDF of the correlated part under the diagonal error structure.
/// Closed form on D_W, convex program elsewhere.
JointRdfResult joint_rdf(const Vector& d, double delta1, double delta2);

/// Always takes the numerical route, also inside D_W.
JointRdfResult joint_rdf_numerical(const Vector& d, double delta1, double delta2);

/// Per-component constraints alloc <= 1 and (1 - a_j)(1 - b_j) >= d_j^2.
bool joint_allocation_feasible(const Vector& d, const Vector& alloc1,
                               const Vector& alloc2, double tol = 1e-12);

/// R_{Y1}(Delta1) + R_{Y2|Y1}(Delta2) with Q_{Y2|Y1} = I - D^2.
double gray_lower_bound(const Vector& d, double delta1, double delta2);

/// |joint - (R_{Y1|W*} + R_{Y2|W*} + C)| at QW = I. Throws OutsideDW.
double sum_rate_identity_check(const Vector& d, double delta1, double delta2);

}  // namespace gwgauss
