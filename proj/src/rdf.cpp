#include "gwgauss/rdf.hpp"

#include <algorithm>
#include <sstream>

namespace gwgauss {

namespace {

void require_positive(double delta, const char* what) {
  if (!(delta > 0.0)) {
    std::ostringstream os;
    os << what << " must be positive (got " << delta << ")";
    throw Error(ErrorCode::NonpositiveDistortion, os.str());
  }
}

// Reverse water-filling. Zero-variance components are carried along with
// zero allocation and zero rate.
RdfResult water_fill(const Vector& variances, double delta) {
  require_positive(delta, "distortion");
  RdfResult r;
  r.variances = variances;
  const auto n = variances.size();
  r.alloc = variances;
  if (n == 0) return r;

  const double total = variances.sum();
  const double top = variances.maxCoeff();
  if (delta >= total) {
    r.water_level = top;
    return r;
  }

  auto filled = [&](double lambda) {
    return variances.array().min(lambda).sum();
  };
  double lo = 0.0, hi = top;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = filled(mid);
    if (std::abs(f - delta) <= 1e-12 * (1.0 + delta)) {
      lo = hi = mid;
      break;
    }
    (f < delta ? lo : hi) = mid;
  }
  double lambda = 0.5 * (lo + hi);

  // Finalize: closed-form level on the active set; a component whose
  // variance equals the level is inactive.
  std::vector<bool> active(n);
  for (Eigen::Index j = 0; j < n; ++j) active[j] = variances(j) > lambda;
  for (;;) {
    double inactive_sum = 0.0;
    int count = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (active[j]) {
        ++count;
      } else {
        inactive_sum += variances(j);
      }
    }
    if (count == 0) break;
    lambda = (delta - inactive_sum) / count;
    bool changed = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (active[j] && variances(j) <= lambda) {
        active[j] = false;
        changed = true;
      }
    }
    if (!changed) break;
  }

  r.water_level = lambda;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (active[j]) {
      r.alloc(j) = lambda;
      r.active_set.push_back(static_cast<int>(j));
      r.rate += 0.5 * std::log(variances(j) / lambda);
    }
  }
  return r;
}

Vector branch_variances(const Vector& d, const Vector& q, int branch) {
  if (branch == 1) return (1.0 - d.array() / q.array()).max(0.0).matrix();
  return (1.0 - d.array() * q.array()).max(0.0).matrix();
}

void require_branch(int branch) {
  if (branch != 1 && branch != 2) {
    throw Error(ErrorCode::BadFlags, "branch must be 1 or 2");
  }
}

void require_correlations(const Vector& d) {
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    if (!(d(j) >= 0.0 && d(j) < 1.0)) {
      throw Error(ErrorCode::InconsistentIndices,
                  "canonical correlations must lie in [0,1)");
    }
  }
}

}  // namespace

RdfResult marginal_rdf(const Vector& variances, double delta) {
  require_positive(delta, "distortion");
  if ((variances.array() <= 0.0).any()) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "component variances must be positive");
  }
  return water_fill(variances, delta);
}

RdfResult conditional_rdf(const Vector& d, const QWParameter& q, int branch,
                          double delta) {
  require_branch(branch);
  require_positive(delta, "distortion");
  if (!q.is_diagonal()) {
    throw Error(ErrorCode::QWNotDiagonal,
                "conditional water-filling requires a diagonal QW");
  }
  return water_fill(branch_variances(d, q.matrix().diagonal(), branch), delta);
}

RdfResult conditional_rdf_general(const Vector& d, const Matrix& qw, int branch,
                                  double delta, int private_dims) {
  require_branch(branch);
  require_positive(delta, "distortion");
  const auto n = d.size();
  Vector variances(n + private_dims);
  if (n > 0) {
    const Matrix c = branch == 1 ? conditional_cov_y1(d, qw) : conditional_cov_y2(d, qw);
    Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
    variances.head(n) = es.eigenvalues().cwiseMax(0.0);
  }
  variances.tail(private_dims).setOnes();
  return water_fill(variances, delta);
}

DWRegion::DWRegion(const Vector& d)
    : n(static_cast<int>(d.size())), d1(d.size() > 0 ? d.maxCoeff() : 0.0) {}

bool DWRegion::contains(double delta1, double delta2) const noexcept {
  const double b = bound();
  return delta1 >= 0.0 && delta2 >= 0.0 && delta1 <= b && delta2 <= b;
}

std::string_view regime_name(JointRegime r) noexcept {
  switch (r) {
    case JointRegime::ClosedFormDW: return "closed-form-DW";
    case JointRegime::Numerical: return "numerical";
    case JointRegime::InfeasibleRegion: return "infeasible-region";
  }
  return "unknown";
}

bool joint_allocation_feasible(const Vector& d, const Vector& alloc1,
                               const Vector& alloc2, double tol) {
  if (alloc1.size() != d.size() || alloc2.size() != d.size()) return false;
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    const double a = alloc1(j), b = alloc2(j);
    if (!(a > 0.0) || !(b > 0.0) || a > 1.0 + tol || b > 1.0 + tol) return false;
    if ((1.0 - a) * (1.0 - b) < d(j) * d(j) - tol) return false;
  }
  return true;
}

namespace {

struct ComponentAlloc {
  double a, b;
};

// Minimizes -1/2 ln a - 1/2 ln b + mu1 a + mu2 b over
// {a, b <= 1, (1 - a)(1 - b) >= dj^2}. For fixed a the best b is
// min(b0, bmax(a)); the reduced function of a is convex, so its derivative
// is bisected.
ComponentAlloc solve_component(double dj, double mu1, double mu2) {
  const double a0 = mu1 > 0.0 ? 0.5 / mu1 : kInf;
  const double b0 = mu2 > 0.0 ? 0.5 / mu2 : kInf;
  if (dj == 0.0) return {std::min(1.0, a0), std::min(1.0, b0)};
  const double d2 = dj * dj;
  if (a0 <= 1.0 && b0 <= 1.0 && (1.0 - a0) * (1.0 - b0) >= d2) return {a0, b0};

  auto bmax = [&](double a) { return 1.0 - d2 / (1.0 - a); };
  auto slope = [&](double a) {
    double s = -0.5 / a + mu1;
    const double bm = bmax(a);
    if (b0 > bm) s += (-0.5 / bm + mu2) * (-d2 / ((1.0 - a) * (1.0 - a)));
    return s;
  };
  double lo = 0.0, hi = 1.0 - d2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (slope(mid) < 0.0 ? lo : hi) = mid;
  }
  const double a = 0.5 * (lo + hi);
  return {a, std::min(b0, bmax(a))};
}

struct AllocSums {
  double a = 0.0, b = 0.0;
};

AllocSums allocation_sums(const Vector& d, double mu1, double mu2) {
  AllocSums s;
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    const auto c = solve_component(d(j), mu1, mu2);
    s.a += c.a;
    s.b += c.b;
  }
  return s;
}

// Multiplier for one sum constraint with the other multiplier fixed. The
// component solutions are monotone in their own multiplier.
template <class SumFn>
double solve_multiplier(SumFn sum_at, double budget, double upper) {
  if (sum_at(0.0) <= budget) return 0.0;
  double lo = 0.0, hi = upper;
  while (sum_at(hi) > budget) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (sum_at(mid) > budget ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

JointRdfResult joint_rdf_numerical(const Vector& d, double delta1, double delta2) {
  require_positive(delta1, "delta1");
  require_positive(delta2, "delta2");
  require_correlations(d);
  const auto n = d.size();
  JointRdfResult r;
  r.regime = JointRegime::Numerical;
  r.alloc1 = Vector::Zero(n);
  r.alloc2 = Vector::Zero(n);
  if (n == 0) return r;

  const double nd = static_cast<double>(n);
  auto mu1_given = [&](double mu2) {
    return solve_multiplier(
        [&](double mu1) { return allocation_sums(d, mu1, mu2).a; }, delta1,
        0.5 * nd / delta1);
  };
  // Envelope argument: the b-sum at the inner optimum is nonincreasing in mu2.
  const double mu2 = solve_multiplier(
      [&](double m2) { return allocation_sums(d, mu1_given(m2), m2).b; }, delta2,
      0.5 * nd / delta2);
  const double mu1 = mu1_given(mu2);

  double kkt = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto c = solve_component(d(j), mu1, mu2);
    r.alloc1(j) = c.a;
    r.alloc2(j) = c.b;
    const double ga = -0.5 / c.a + mu1;
    const double gb = -0.5 / c.b + mu2;
    const double slack = (1.0 - c.a) * (1.0 - c.b) - d(j) * d(j);
    if (d(j) > 0.0 && slack <= 1e-12) {
      // on the curve: grad f + mu = nu * grad c with nu >= 0
      const double nu = -ga / (1.0 - c.b);
      kkt = std::max(kkt, std::abs(gb + nu * (1.0 - c.a)) * c.b);
      if (nu < 0.0) kkt = std::max(kkt, -nu);
    } else {
      // interior, or a box bound a = 1 / b = 1 when d_j = 0
      if (c.a < 1.0) kkt = std::max(kkt, std::abs(ga) * c.a);
      if (c.b < 1.0) kkt = std::max(kkt, std::abs(gb) * c.b);
    }
  }
  const double s1 = r.alloc1.sum(), s2 = r.alloc2.sum();
  kkt = std::max({kkt, s1 - delta1, s2 - delta2});
  kkt = std::max(kkt, mu1 * std::abs(s1 - delta1));
  kkt = std::max(kkt, mu2 * std::abs(s2 - delta2));
  r.mu1 = mu1;
  r.mu2 = mu2;
  r.kkt_residual = kkt;

  if (!joint_allocation_feasible(d, r.alloc1, r.alloc2, 1e-10)) {
    r.regime = JointRegime::InfeasibleRegion;
    throw Error(ErrorCode::InfeasibleRegion,
                "no allocation satisfies the per-component PSD constraints");
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    r.rate += 0.5 * std::log((1.0 - d(j) * d(j)) / (r.alloc1(j) * r.alloc2(j)));
  }
  return r;
}

JointRdfResult joint_rdf(const Vector& d, double delta1, double delta2) {
  require_positive(delta1, "delta1");
  require_positive(delta2, "delta2");
  require_correlations(d);
  const DWRegion dw(d);
  if (!dw.contains(delta1, delta2)) return joint_rdf_numerical(d, delta1, delta2);

  const auto n = d.size();
  JointRdfResult r;
  r.regime = JointRegime::ClosedFormDW;
  const double nd = static_cast<double>(n);
  r.alloc1 = Vector::Constant(n, delta1 / nd);
  r.alloc2 = Vector::Constant(n, delta2 / nd);
  for (Eigen::Index j = 0; j < n; ++j) {
    r.rate += 0.5 * std::log((1.0 - d(j) * d(j)) * nd * nd / (delta1 * delta2));
  }
  return r;
}

double gray_lower_bound(const Vector& d, double delta1, double delta2) {
  require_positive(delta1, "delta1");
  require_positive(delta2, "delta2");
  require_correlations(d);
  const auto n = d.size();
  if (n == 0) return 0.0;
  const double r1 = marginal_rdf(Vector::Ones(n), delta1).rate;
  const double r2 = marginal_rdf((1.0 - d.array().square()).matrix(), delta2).rate;
  return r1 + r2;
}

double sum_rate_identity_check(const Vector& d, double delta1, double delta2) {
  if (!DWRegion(d).contains(delta1, delta2)) {
    std::ostringstream os;
    os << "(" << delta1 << ", " << delta2 << ") lies outside D_W (bound "
       << DWRegion(d).bound() << ")";
    throw Error(ErrorCode::OutsideDW, os.str());
  }
  const double joint = joint_rdf(d, delta1, delta2).rate;
  const auto q = QWParameter::identity(d);
  const double r1 = conditional_rdf(d, q, 1, delta1).rate;
  const double r2 = conditional_rdf(d, q, 2, delta2).rate;
  const double c = common_information(d).value;
  return std::abs(joint - (r1 + r2 + c));
}

}  // namespace gwgauss
