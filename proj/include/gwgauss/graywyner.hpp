#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "gwgauss/gaussmodel.hpp"
#include "gwgauss/rdf.hpp"

namespace gwgauss {

enum class TripleTag { Pangloss, SweepPoint };
std::string_view tag_name(TripleTag t) noexcept;

struct RateTriple {
  double r0 = 0.0, r1 = 0.0, r2 = 0.0;  // nats
  double delta1 = 0.0, delta2 = 0.0;
  TripleTag tag = TripleTag::Pangloss;

  double sum() const noexcept { return r0 + r1 + r2; }
};

/// Lossy common information on D_W, where it equals C. Throws OutsideDW
/// beyond the rectangle.
double lossy_common_information(const Vector& d, double delta1, double delta2);

/// (C, R_{Y1|W*}, R_{Y2|W*}) at QW = I. Throws OutsideDW.
RateTriple pangloss_triple(const Vector& d, double delta1, double delta2);

struct SweepOptions {
  int private1 = 0;  // unit-variance components of Y1 independent of Y2
  int private2 = 0;
  int coarse_points = 64;  // per-coordinate scan before golden section
  double tolerance = 1e-10;  // in log q
  int max_cycles = 60;
};

struct SweepPoint {
  double alpha1 = 0.0, alpha2 = 0.0;
  double objective = 0.0;  // T(alpha1, alpha2), a diagonal-family upper bound
  RateTriple triple;
  Vector q;  // diagonal of the minimizing QW
};

/// I(Y1,Y2;W) + a1 R_{Y1|W}(D1) + a2 R_{Y2|W}(D2) at diagonal QW = diag(q).
/// Returns +inf on the family boundary.
double sweep_objective(const Vector& d, const Vector& q, double alpha1,
                       double alpha2, double delta1, double delta2,
                       const SweepOptions& opt = {});

/// Minimizes the objective over diagonal QW with d_j < q_j < 1/d_j for each
/// (alpha1, alpha2). Output order follows `alphas`.
std::vector<SweepPoint> region_sweep(const Vector& d, double delta1, double delta2,
                                     const std::vector<std::pair<double, double>>& alphas,
                                     const SweepOptions& opt = {});

/// N x N grid over [0,1]^2 keeping alpha1 + alpha2 >= 1; N = 11 by default.
std::vector<std::pair<double, double>> default_alpha_grid(int n = 11);

}  // namespace gwgauss
