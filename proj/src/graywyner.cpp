#include "gwgauss/graywyner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gwgauss/wyner.hpp"

namespace gwgauss {

namespace {

void require_nonnegative(double delta1, double delta2) {
  if (!(delta1 >= 0.0) || !(delta2 >= 0.0)) {
    throw Error(ErrorCode::NonpositiveDistortion, "distortions must be nonnegative");
  }
}

void require_inside(const Vector& d, double delta1, double delta2) {
  const DWRegion region(d);
  if (!region.contains(delta1, delta2)) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << delta1 << ", " << delta2 << ") lies outside D_W; bound "
       << region.bound();
    throw Error(ErrorCode::OutsideDW, os.str());
  }
}

double branch_rate(const Vector& d, const Vector& q, int branch, double delta,
                   int private_dims) {
  const auto n = d.size();
  Vector v(n + private_dims);
  for (Eigen::Index j = 0; j < n; ++j) {
    v(j) = branch == 1 ? 1.0 - d(j) / q(j) : 1.0 - d(j) * q(j);
  }
  v.tail(private_dims).setOnes();
  if (v.size() == 0) return 0.0;
  // Zero-variance components cost nothing; only the positive ones matter.
  Vector pos(v.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (v(j) > 0.0) pos(k++) = v(j);
  }
  if (k == 0) return 0.0;
  return marginal_rdf(pos.head(k), delta).rate;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi,
                      double tol, double& fbest) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  if (f1 <= f2) {
    fbest = f1;
    return x1;
  }
  fbest = f2;
  return x2;
}

SweepPoint minimize_point(const Vector& d, double a1, double a2, double delta1,
                          double delta2, const SweepOptions& opt) {
  const auto n = d.size();
  Vector q = Vector::Ones(n);
  double best = sweep_objective(d, q, a1, a2, delta1, delta2, opt);

  for (int cycle = 0; cycle < opt.max_cycles && n > 0; ++cycle) {
    const double start = best;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double lo = std::log(d(j)), hi = -std::log(d(j));
      auto f = [&](double t) {
        Vector trial = q;
        trial(j) = std::exp(t);
        return sweep_objective(d, trial, a1, a2, delta1, delta2, opt);
      };
      // Coarse interior scan, then golden section on the bracketing cells.
      const int m = std::max(opt.coarse_points, 3);
      const double h = (hi - lo) / m;
      int kbest = 0;
      double fscan = kInf;
      for (int k = 0; k < m; ++k) {
        const double fk = f(lo + (k + 0.5) * h);
        if (fk < fscan) {
          fscan = fk;
          kbest = k;
        }
      }
      const double tk = lo + (kbest + 0.5) * h;
      double fg = kInf;
      const double tg = golden_section(f, std::max(lo, tk - h), std::min(hi, tk + h),
                                       opt.tolerance, fg);
      if (fg < best) {
        best = fg;
        q(j) = std::exp(tg);
      }
      if (fscan < best) {
        best = fscan;
        q(j) = std::exp(lo + (kbest + 0.5) * h);
      }
    }
    if (start - best <= 1e-14 * (1.0 + std::abs(best))) break;
  }

  SweepPoint p;
  p.alpha1 = a1;
  p.alpha2 = a2;
  p.objective = best;
  p.q = q;
  p.triple.tag = TripleTag::SweepPoint;
  p.triple.delta1 = delta1;
  p.triple.delta2 = delta2;
  p.triple.r1 = branch_rate(d, q, 1, delta1, opt.private1);
  p.triple.r2 = branch_rate(d, q, 2, delta2, opt.private2);
  if (n > 0) {
    double mi = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      mi += 0.5 * std::log((1.0 - d(j) * d(j)) /
                           ((1.0 - d(j) / q(j)) * (1.0 - d(j) * q(j))));
    }
    p.triple.r0 = std::max(0.0, mi);
  } else {
    p.triple.r0 = 0.0;
  }
  return p;
}

}  // namespace

std::string_view tag_name(TripleTag t) noexcept {
  return t == TripleTag::Pangloss ? "pangloss" : "sweep-point";
}

double lossy_common_information(const Vector& d, double delta1, double delta2) {
  require_nonnegative(delta1, delta2);
  require_inside(d, delta1, delta2);
  return common_information(d).value;
}

RateTriple pangloss_triple(const Vector& d, double delta1, double delta2) {
  require_nonnegative(delta1, delta2);
  require_inside(d, delta1, delta2);
  const auto q = QWParameter::identity(d);
  RateTriple t;
  t.tag = TripleTag::Pangloss;
  t.delta1 = delta1;
  t.delta2 = delta2;
  t.r0 = common_information(d).value;
  t.r1 = conditional_rdf(d, q, 1, delta1).rate;
  t.r2 = conditional_rdf(d, q, 2, delta2).rate;
  return t;
}

double sweep_objective(const Vector& d, const Vector& q, double alpha1,
                       double alpha2, double delta1, double delta2,
                       const SweepOptions& opt) {
  double mi = 0.0;
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    const double z1 = 1.0 - d(j) / q(j), z2 = 1.0 - d(j) * q(j);
    if (z1 <= 0.0 || z2 <= 0.0) return kInf;
    mi += 0.5 * std::log((1.0 - d(j) * d(j)) / (z1 * z2));
  }
  double t = mi;
  if (alpha1 != 0.0) t += alpha1 * branch_rate(d, q, 1, delta1, opt.private1);
  if (alpha2 != 0.0) t += alpha2 * branch_rate(d, q, 2, delta2, opt.private2);
  return t;
}

std::vector<SweepPoint> region_sweep(const Vector& d, double delta1, double delta2,
                                     const std::vector<std::pair<double, double>>& alphas,
                                     const SweepOptions& opt) {
  if (!(delta1 > 0.0) || !(delta2 > 0.0)) {
    throw Error(ErrorCode::NonpositiveDistortion, "region sweep needs positive distortions");
  }
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    if (!(d(j) > 0.0 && d(j) < 1.0)) {
      throw Error(ErrorCode::SingularValueOutOfRange,
                  "canonical correlations must lie in (0, 1)");
    }
  }
  std::vector<SweepPoint> out;
  out.reserve(alphas.size());
  for (const auto& [a1, a2] : alphas) {
    if (a1 < 0.0 || a1 > 1.0 || a2 < 0.0 || a2 > 1.0 || a1 + a2 < 1.0 - 1e-12) {
      throw Error(ErrorCode::BadFlags,
                  "alphas must lie in [0,1] with alpha1 + alpha2 >= 1");
    }
    out.push_back(minimize_point(d, a1, a2, delta1, delta2, opt));
  }
  return out;
}

std::vector<std::pair<double, double>> default_alpha_grid(int n) {
  if (n < 2) throw Error(ErrorCode::BadFlags, "alpha grid needs at least 2 points");
  std::vector<std::pair<double, double>> g;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i + j >= n - 1) {
        g.emplace_back(static_cast<double>(i) / (n - 1),
                       static_cast<double>(j) / (n - 1));
      }
    }
  }
  return g;
}

}  // namespace gwgauss
