// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "grid_oracle.hpp"
#include "support.hpp"

#include "gwgauss/cvf.hpp"
#include "gwgauss/graywyner.hpp"
#include "gwgauss/mc_oracle.hpp"
#include "gwgauss/random.hpp"
#include "gwgauss/rdf.hpp"
#include "gwgauss/realize.hpp"
#include "gwgauss/wyner.hpp"

using namespace gwgauss;
using testsupport::max_abs;
using testsupport::vec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Vector random_correlations(Rng& rng, Eigen::Index n, double lo = 0.02, double hi = 0.98) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector d(n);
  for (Eigen::Index j = 0; j < n; ++j) d(j) = u(rng);
  std::sort(d.data(), d.data() + n, std::greater<>());
  return d;
}

Matrix diag_cross(std::initializer_list<double> v, Eigen::Index rows, Eigen::Index cols) {
  Matrix q = Matrix::Zero(rows, cols);
  Eigen::Index i = 0;
  for (double x : v) {
    q(i, i) = x;
    ++i;
  }
  return q;
}

// Hua identity residual under the substitution A = D^1/2 QW^-1/2, B = QW^1/2 D^1/2.
double family_identity_residual(const Vector& d, const Matrix& qw) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(qw);
  const Matrix sd = d.cwiseSqrt().asDiagonal();
  return check_hua_identity(sd * es.operatorInverseSqrt(), es.operatorSqrt() * sd);
}

void c1(Outcome& o) {
  const double oracle_nats = testsupport::oracle()["example41_nats"].get<double>();
  const auto pair = testsupport::canonical_pair(diag_cross({0.8, 0.5, 0.1}, 3, 3));
  const auto t0 = Clock::now();
  const CanonicalForm cf = decompose(pair);
  const double c = common_information(cf.idx, cf.d).value;
  const double ms = ms_since(t0);
  const double bits = paper_example_bits(c);
  o.require(cf.idx == IndexSextuple{0, 3, 0, 0, 3, 0}, "indices (0,3,0 | 0,3,0)");
  o.require(cf.d.size() == 3 && max_abs(cf.d - vec({0.8, 0.5, 0.1})) <= 1e-12, "d to 1e-12");
  o.require(std::abs(bits - 5.0444) <= 5e-4, "paper-example-bits 5.0444 +- 5e-4");
  o.require(std::abs(c - oracle_nats) <= 1e-9, "nats vs oracle to 1e-9");
  o.require(std::abs(c - 1.74825) <= 5e-6, "nats rounds to 1.74825");
  o.require(ms < 10.0, "runtime < 10 ms");
  o.detail << "C = " << c << " nats, " << bits << " paper-example-bits, " << ms << " ms";
}

void c2(Outcome& o) {
  const auto pair = testsupport::canonical_pair(
      diag_cross({0.999998, 0.999992, 0.8, 0.3, 0.000004}, 6, 5));
  const CanonicalForm cf = decompose(pair, Thresholds{0.999, 1e-4});
  const CommonInfoResult full = common_information(cf.idx, cf.d);
  const double part = paper_example_bits(common_information(cf.d).value);
  o.require(cf.idx == IndexSextuple{2, 2, 2, 2, 2, 1}, "indices (2,2,2 | 2,2,1)");
  o.require(std::isinf(full.value) && full.value > 0, "C = +inf");
  o.require(std::abs(part - 4.0630) <= 5e-4, "correlated part 4.0630 +- 5e-4");
  o.detail << "C = " << full.value << ", correlated part " << part << " paper-example-bits";
}

void c3(Outcome& o) {
  double worst = 0.0;
  int outside = 0;
  for (int k = 1; k <= 9; ++k) {
    const double rho = 0.1 * k;
    Matrix q12(1, 1);
    q12 << rho;
    const CanonicalForm cf = decompose(testsupport::canonical_pair(q12));
    const double expect = 0.5 * std::log((1.0 + rho) / (1.0 - rho));
    for (double frac : {0.0, 0.1, 0.5, 0.9, 1.0}) {
      const double delta = frac * (1.0 - rho);
      for (double other : {0.0, delta, 1.0 - rho}) {
        worst = std::max(worst, std::abs(lossy_common_information(cf.d, delta, other) - expect));
      }
    }
    for (double beyond : {1e-9, 0.01, 0.5}) {
      try {
        lossy_common_information(cf.d, 1.0 - rho + beyond, 0.0);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OutsideDW) ++outside;
      }
      try {
        lossy_common_information(cf.d, 0.0, 1.0 - rho + beyond);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OutsideDW) ++outside;
      }
    }
  }
  o.require(worst <= 1e-12, "value exact to 1e-12 on D_W");
  o.require(outside == 54, "OutsideDW beyond 1 - rho");
  o.detail << "max error " << worst << ", " << outside << "/54 outside signals";
}

void c4(Outcome& o) {
  Rng rng = make_stream(2024, 4);
  double pattern = 0.0, corr = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto p1 = 1 + static_cast<Eigen::Index>(rng() % 8);
    const auto p2 = 1 + static_cast<Eigen::Index>(rng() % 8);
    const auto pair = random_pair_conditioned(p1, p2, rng);
    const CanonicalForm cf = decompose(pair);
    pattern = std::max(pattern, canonical_pattern_residual(apply_transform(pair, cf), cf));
    corr = std::max(corr, max_abs(canonical_correlations_oracle(pair) - cf.raw_singular));
  }
  double demo_pattern = 0.0, demo_corr = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r = make_stream(seed, 0);
    const auto pair = random_pair_lltt(5, 4, r, 1e-9);
    const CanonicalForm cf = decompose(pair);
    demo_pattern = std::max(demo_pattern, canonical_pattern_residual(apply_transform(pair, cf), cf));
    demo_corr = std::max(demo_corr, max_abs(canonical_correlations_oracle(pair) - cf.raw_singular));
  }
  o.require(pattern <= 1e-9, "pattern residual <= 1e-9");
  o.require(corr <= 1e-8, "correlations vs eigen-oracle <= 1e-8");
  o.require(demo_pattern <= 1e-9 && demo_corr <= 1e-8, "demo-random instances");
  o.detail << "500 pairs: pattern " << pattern << ", oracle " << corr << "; 20 demo pairs: pattern "
           << demo_pattern << ", oracle " << demo_corr;
}

void c5(Outcome& o) {
  Rng rng = make_stream(2024, 5);
  int strict = 0, hua = 0, trials = 0;
  double worst_identity = 0.0, min_gap = kInf;
  auto trial = [&](const Vector& d) {
    const Matrix qw = random_family_member(d, rng);
    if ((qw - Matrix::Identity(d.size(), d.size())).norm() <= 1e-6) return;
    ++trials;
    const QWParameter q(d, qw);
    const double gap = mi_given_state(d, q) - common_information(d).value;
    min_gap = std::min(min_gap, gap);
    if (gap > 0.0) ++strict;
    if (check_hua_inequality(d, q).holds) ++hua;
    worst_identity = std::max(worst_identity, family_identity_residual(d, qw));
  };
  for (int k = 0; k < 1000; ++k) trial(random_correlations(rng, 1 + k % 5));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r = make_stream(seed, 0);
    const CanonicalForm cf = decompose(random_pair_lltt(5, 4, r, 1e-9));
    for (int k = 0; k < 5; ++k) trial(cf.d);
  }
  o.require(trials >= 1000, "1000 trials");
  o.require(strict == trials, "I(Y1,Y2;W) > C strictly");
  o.require(hua == trials, "determinant inequality holds");
  o.require(worst_identity < 1e-9, "identity residual < 1e-9");
  o.detail << trials << " members, min gap " << min_gap << ", identity residual " << worst_identity;
}

void c6(Outcome& o) {
  Rng rng = make_stream(2024, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vector d = random_correlations(rng, 1 + k % 6);
    const double bound = DWRegion(d).bound();
    const double d1 = bound * (1e-3 + (1.0 - 1e-3) * u(rng));
    const double d2 = bound * (1e-3 + (1.0 - 1e-3) * u(rng));
    const RateTriple t = pangloss_triple(d, d1, d2);
    worst = std::max(worst, std::abs(t.sum() - joint_rdf(d, d1, d2).rate));
  }
  o.require(worst < 1e-10, "|R0+R1+R2 - joint| < 1e-10");
  o.detail << "max deviation " << worst;
}

void c7(Outcome& o) {
  Rng rng = make_stream(2024, 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, solver_ms = 0.0;
  int numerical = 0;
  const auto t0 = Clock::now();
  for (int k = 0; k < 50; ++k) {
    const Vector d = random_correlations(rng, 2, 0.05, 0.95);
    const double d1 = 0.02 + 1.98 * u(rng), d2 = 0.02 + 1.98 * u(rng);
    const auto s0 = Clock::now();
    const JointRdfResult r = joint_rdf(d, d1, d2);
    solver_ms += ms_since(s0);
    if (r.regime == JointRegime::Numerical) ++numerical;
    worst = std::max(worst, std::abs(r.rate - testsupport::joint_rdf_grid(d, d1, d2)));
  }
  const double total = ms_since(t0);
  o.require(worst < 1e-3, "within 1e-3 nats of the grid");
  o.require(total < 5000.0, "runtime < 5 s");
  o.detail << "max gap " << worst << " nats, " << numerical << "/50 numerical, solver " << solver_ms
           << " ms, total " << total << " ms";
}

void c8(Outcome& o) {
  Rng rng = make_stream(2024, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = kInf;
  auto check = [&](const Vector& d) {
    const double n = static_cast<double>(std::max<Eigen::Index>(1, d.size()));
    const double d1 = 0.01 + 1.5 * n * u(rng), d2 = 0.01 + 1.5 * n * u(rng);
    worst = std::min(worst, joint_rdf(d, d1, d2).rate - gray_lower_bound(d, d1, d2));
  };
  for (int k = 0; k < 200; ++k) check(random_correlations(rng, 1 + k % 6));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng r = make_stream(seed, 0);
    check(decompose(random_pair_lltt(5, 4, r, 1e-9)).d);
  }
  o.require(worst >= -1e-9, "joint >= gray - 1e-9");
  o.detail << "min(joint - gray) = " << worst;
}

void c9(Outcome& o) {
  const IndexSextuple idx{0, 3, 0, 0, 3, 0};
  const Vector d = vec({0.8, 0.5, 0.1});
  const auto t0 = Clock::now();
  const SampleBlock s = sample(optimal_state(idx, d), 200000, 2024);
  const ValidationReport r = validate_realization(s, canonical_pair_covariance(idx, d));
  const TestChannel tc = rdf_test_channel(d, QWParameter::identity(d), 0.3, 0.45);
  const DistortionCheck dc = validate_distortion(sample(tc, 200000, 2025), 0.3, 0.45);
  const double ms = ms_since(t0);
  const SampleBlock again = sample(optimal_state(idx, d), 200000, 2024);
  o.require(r.cov_rel_err < 1e-2, "covariance error < 1e-2");
  o.require(r.ci_residual < 1e-2, "CI residual < 1e-2");
  o.require(dc.rel_err1 < 0.01 && dc.rel_err2 < 0.01, "distortions within 1%");
  o.require(max_abs(again.y1 - s.y1) == 0.0 && max_abs(again.w - s.w) == 0.0, "deterministic per seed");
  o.require(ms < 5000.0, "runtime < 5 s");
  o.detail << "cov " << r.cov_rel_err << ", CI " << r.ci_residual << ", distortion errors "
           << dc.rel_err1 << "/" << dc.rel_err2 << ", " << ms << " ms";
}

void c10(Outcome& o) {
  const Vector v = vec({2.5, 1.2, 1.2, 0.7, 0.3, 0.05});
  const double total = v.sum();
  double prev = kInf;
  bool monotone = true;
  for (int k = 0; k < 1000; ++k) {
    const double delta = total * (k + 1) / 1000.0;
    const double r = marginal_rdf(v, delta).rate;
    if (r > prev) monotone = false;
    prev = r;
  }
  const double at_total = marginal_rdf(v, total).rate;
  double jump = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double switch_at = v.cwiseMin(v(k)).sum();
    if (switch_at >= total) continue;
    jump = std::max(jump, std::abs(marginal_rdf(v, switch_at - 1e-9).rate -
                                   marginal_rdf(v, switch_at + 1e-9).rate));
  }
  o.require(monotone, "nonincreasing over 1000 points");
  o.require(at_total == 0.0, "zero exactly at total variance");
  o.require(jump < 1e-6, "continuous across active-set switches");
  o.detail << "rate at total " << at_total << ", max jump at switches " << jump;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"three-coefficient example", c1},
      {"identical-component example", c2},
      {"scalar lossy common information", c3},
      {"canonical form round trip", c4},
      {"optimality of the identity state", c5},
      {"Pangloss identity", c6},
      {"joint rdf vs grid oracle", c7},
      {"Gray lower bound", c8},
      {"Monte-Carlo realization validation", c9},
      {"water-filling properties", c10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
