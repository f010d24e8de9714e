#include "gwgauss/realize.hpp"

#include <sstream>

#include "gwgauss/random.hpp"
#include "gwgauss/rdf.hpp"

namespace gwgauss {

namespace {

// Stream ids of the sampler. Fixed forever: changing one would change the
// draws behind every stored regression baseline.
enum Stream : std::uint64_t {
  kStreamW = 1,
  kStreamZ1 = 2,
  kStreamZ2 = 3,
  kStreamV = 4,
  kStreamV1 = 5,
  kStreamV2 = 6,
  kStreamIdentical = 10,
  kStreamCorrelated1 = 11,
  kStreamCorrelated2 = 12,
  kStreamPrivate1 = 13,
  kStreamPrivate2 = 14,
};

Matrix colored(Eigen::Index n, const Matrix& cov, std::uint64_t seed,
               std::uint64_t stream) {
  Rng rng = make_stream(seed, stream);
  const Matrix g = standard_normal(n, cov.rows(), rng);
  return g * psd_sqrt(cov);
}

Matrix draw(Eigen::Index n, Eigen::Index dim, std::uint64_t seed,
            std::uint64_t stream) {
  Rng rng = make_stream(seed, stream);
  return standard_normal(n, dim, rng);
}

void require_samples(Eigen::Index n) {
  if (n < 1) throw Error(ErrorCode::BadFlags, "sample count must be at least 1");
}

Matrix block_diag(const Matrix& a, const Matrix& b, const Matrix& c) {
  const auto r = a.rows() + b.rows() + c.rows();
  const auto k = a.cols() + b.cols() + c.cols();
  Matrix m = Matrix::Zero(r, k);
  m.block(0, 0, a.rows(), a.cols()) = a;
  m.block(a.rows(), a.cols(), b.rows(), b.cols()) = b;
  m.block(a.rows() + b.rows(), a.cols() + b.cols(), c.rows(), c.cols()) = c;
  return m;
}

void require_psd(const Matrix& q, const char* what) {
  if (q.size() == 0) return;
  Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues()(0) < -1e-10 * scale) {
    std::ostringstream os;
    os << what << " is not positive semidefinite";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
}

}  // namespace

Matrix psd_sqrt(const Matrix& q) {
  if (q.size() == 0) return Matrix(q.rows(), q.cols());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (q + q.transpose()));
  Vector ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev(0) < -1e-12 * scale) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "covariance has a negative eigenvalue beyond clipping tolerance");
  }
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

Matrix CIRealization::pair_covariance() const {
  const auto p1 = c1.rows(), p2 = c2.rows();
  Matrix q(p1 + p2, p1 + p2);
  q.topLeftCorner(p1, p1) = c1 * qw * c1.transpose() + qz1;
  q.bottomRightCorner(p2, p2) = c2 * qw * c2.transpose() + qz2;
  q.topRightCorner(p1, p2) = cross_covariance();
  q.bottomLeftCorner(p2, p1) = q.topRightCorner(p1, p2).transpose();
  return q;
}

Matrix CIRealization::triple_covariance() const {
  const auto p1 = c1.rows(), p2 = c2.rows(), n = qw.rows();
  Matrix q(p1 + p2 + n, p1 + p2 + n);
  q.topLeftCorner(p1 + p2, p1 + p2) = pair_covariance();
  q.block(0, p1 + p2, p1, n) = c1 * qw;
  q.block(p1, p1 + p2, p2, n) = c2 * qw;
  q.block(p1 + p2, 0, n, p1 + p2) = q.block(0, p1 + p2, p1 + p2, n).transpose();
  q.bottomRightCorner(n, n) = qw;
  return q;
}

CIRealization family_realization(const Vector& d, const QWParameter& q) {
  const auto n = d.size();
  const Vector s = d.cwiseSqrt();
  CIRealization r;
  r.qw = q.matrix();
  r.c1 = s.asDiagonal() * q.matrix().ldlt().solve(Matrix::Identity(n, n));
  r.c2 = s.asDiagonal();
  r.qz1 = conditional_cov_y1(d, q.matrix());
  r.qz2 = conditional_cov_y2(d, q.matrix());
  require_psd(r.qz1, "QZ1");
  require_psd(r.qz2, "QZ2");
  return r;
}

CIRealization embed_realization(const IndexSextuple& idx,
                                const CIRealization& correlated) {
  if (!idx.consistent() || correlated.state_dim() != idx.p12 ||
      correlated.p1() != idx.p12 || correlated.p2() != idx.p22) {
    throw Error(ErrorCode::InconsistentIndices,
                "correlated realization does not match the index sextuple");
  }
  const Matrix id = Matrix::Identity(idx.p11, idx.p11);
  CIRealization r;
  r.qw = block_diag(id, correlated.qw, Matrix(0, 0));
  r.c1 = block_diag(id, correlated.c1, Matrix(idx.p13, 0));
  r.c2 = block_diag(id, correlated.c2, Matrix(idx.p23, 0));
  r.qz1 = block_diag(Matrix::Zero(idx.p11, idx.p11), correlated.qz1,
                     Matrix::Identity(idx.p13, idx.p13));
  r.qz2 = block_diag(Matrix::Zero(idx.p21, idx.p21), correlated.qz2,
                     Matrix::Identity(idx.p23, idx.p23));
  return r;
}

Matrix canonical_pair_covariance(const IndexSextuple& idx, const Vector& d) {
  check_indices(idx, d);
  const int p1 = idx.p1(), p2 = idx.p2();
  Matrix q = Matrix::Identity(p1 + p2, p1 + p2);
  for (int i = 0; i < idx.p11; ++i) q(i, p1 + i) = q(p1 + i, i) = 1.0;
  for (int i = 0; i < idx.p12; ++i) {
    const int k = idx.p11 + i;
    q(k, p1 + k) = q(p1 + k, k) = d(i);
  }
  return q;
}

OptimalState optimal_state(const IndexSextuple& idx, const Vector& d) {
  check_indices(idx, d);
  OptimalState s;
  s.idx = idx;
  s.d = d;
  s.identical_dim = idx.p11;
  const Eigen::ArrayXd a = d.array();
  s.l1 = (a.sqrt() / (1.0 + a)).matrix().asDiagonal();
  s.l2 = s.l1;
  s.l3 = ((1.0 - a).sqrt() / (1.0 + a).sqrt()).matrix().asDiagonal();
  s.qz = (1.0 - a).matrix().asDiagonal();
  return s;
}

OptimalState::Moments OptimalState::moments() const {
  const Matrix dd = d.asDiagonal();
  Moments m;
  m.qw = l1 * l1.transpose() + l2 * l2.transpose() + l1 * dd * l2.transpose() +
         l2 * dd * l1.transpose() + l3 * l3.transpose();
  m.q1w = l1.transpose() + dd * l2.transpose();
  m.q2w = dd * l1.transpose() + l2.transpose();
  return m;
}

CIRealization OptimalState::realization() const {
  const auto n = d.size();
  CIRealization corr;
  corr.qw = Matrix::Identity(n, n);
  corr.c1 = d.cwiseSqrt().asDiagonal();
  corr.c2 = corr.c1;
  corr.qz1 = qz;
  corr.qz2 = qz;
  return embed_realization(idx, corr);
}

CIRealization encoder_split(const GaussianTriple& triple) {
  triple.validate();
  if (triple.state_dim() > 0) CovMatrix(triple.qw, true);
  const Eigen::LLT<Matrix> llt(triple.qw);
  CIRealization r;
  r.qw = triple.qw;
  if (triple.state_dim() == 0) {
    r.c1 = Matrix::Zero(triple.pair.p1(), 0);
    r.c2 = Matrix::Zero(triple.pair.p2(), 0);
  } else {
    r.c1 = llt.solve(triple.q1w.transpose()).transpose();
    r.c2 = llt.solve(triple.q2w.transpose()).transpose();
  }
  const Matrix z1 = triple.pair.q11() - r.c1 * triple.q1w.transpose();
  const Matrix z2 = triple.pair.q22() - r.c2 * triple.q2w.transpose();
  r.qz1 = 0.5 * (z1 + z1.transpose());
  r.qz2 = 0.5 * (z2 + z2.transpose());
  return r;
}

Matrix residual_cross_covariance(const GaussianTriple& triple,
                                 const CIRealization& split) {
  return triple.pair.q12() - split.c1 * triple.qw * split.c2.transpose();
}

namespace {

struct BranchChannel {
  Matrix a, qv, qe;
};

BranchChannel make_branch(const Matrix& cond, bool diagonal, const Vector& alloc,
                          int branch) {
  const auto n = cond.rows();
  if (alloc.size() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "allocation length must equal the state dimension");
  }
  Matrix u;
  Vector lambda;
  if (diagonal) {
    u = Matrix::Identity(n, n);
    lambda = cond.diagonal();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(cond);
    u = es.eigenvectors().rowwise().reverse();
    lambda = es.eigenvalues().reverse();
  }
  Vector gain(n), qv(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lam = std::max(0.0, lambda(j));
    const double e = alloc(j);
    if (!(e >= 0.0) || e > lam + 1e-12 * (1.0 + lam)) {
      std::ostringstream os;
      os << "branch " << branch << " allocation " << e << " at component " << j
         << " exceeds the conditional variance " << lam;
      throw Error(ErrorCode::AllocationOutOfRange, os.str());
    }
    if (lam <= 1e-14) {
      gain(j) = 1.0;
      qv(j) = 0.0;
    } else {
      const double ec = std::min(e, lam);
      gain(j) = 1.0 - ec / lam;
      qv(j) = ec * gain(j);
    }
  }
  BranchChannel b;
  b.a = u * gain.asDiagonal() * u.transpose();
  b.qv = u * qv.asDiagonal() * u.transpose();
  b.qe = u * alloc.cwiseMin(lambda.cwiseMax(0.0)).asDiagonal() * u.transpose();
  return b;
}

}  // namespace

TestChannel test_channel(const Vector& d, const QWParameter& q,
                         const Vector& alloc1, const Vector& alloc2) {
  TestChannel tc;
  tc.d = d;
  tc.base = family_realization(d, q);
  const bool diagonal = q.is_diagonal();
  const BranchChannel b1 = make_branch(tc.base.qz1, diagonal, alloc1, 1);
  const BranchChannel b2 = make_branch(tc.base.qz2, diagonal, alloc2, 2);
  tc.a1 = b1.a;
  tc.qv1 = b1.qv;
  tc.qe1 = b1.qe;
  tc.a2 = b2.a;
  tc.qv2 = b2.qv;
  tc.qe2 = b2.qe;
  return tc;
}

namespace {

// Allocations in the order test_channel expects.
Vector branch_allocation(const Matrix& cond, bool diagonal, double delta) {
  const auto n = cond.rows();
  Vector lambda;
  if (diagonal) {
    lambda = cond.diagonal();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(cond, Eigen::EigenvaluesOnly);
    lambda = es.eigenvalues().reverse();
  }
  lambda = lambda.cwiseMax(0.0);
  Vector alloc = Vector::Zero(n);
  std::vector<Eigen::Index> pos;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lambda(j) > 1e-14) pos.push_back(j);
  }
  if (pos.empty()) {
    if (!(delta > 0.0)) throw Error(ErrorCode::NonpositiveDistortion, "distortion must be positive");
    return alloc;
  }
  Vector v(static_cast<Eigen::Index>(pos.size()));
  for (std::size_t k = 0; k < pos.size(); ++k) v(k) = lambda(pos[k]);
  const RdfResult r = marginal_rdf(v, delta);
  for (std::size_t k = 0; k < pos.size(); ++k) alloc(pos[k]) = r.alloc(k);
  return alloc;
}

}  // namespace

TestChannel rdf_test_channel(const Vector& d, const QWParameter& q, double delta1,
                             double delta2) {
  const Matrix c1 = conditional_cov_y1(d, q.matrix());
  const Matrix c2 = conditional_cov_y2(d, q.matrix());
  const bool diagonal = q.is_diagonal();
  return test_channel(d, q, branch_allocation(c1, diagonal, delta1),
                      branch_allocation(c2, diagonal, delta2));
}

double reconstruction_orthogonality_residual(const TestChannel& tc) {
  const auto n = tc.d.size();
  if (n == 0) return 0.0;
  const Matrix id = Matrix::Identity(n, n);
  const Matrix r1 = (id - tc.a1) * tc.base.qz1 * tc.a1.transpose() - tc.qv1;
  const Matrix r2 = (id - tc.a2) * tc.base.qz2 * tc.a2.transpose() - tc.qv2;
  return std::max(r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff());
}

SampleBlock sample(const CIRealization& real, Eigen::Index n, std::uint64_t seed) {
  require_samples(n);
  SampleBlock s;
  s.n_samples = n;
  s.w = colored(n, real.qw, seed, kStreamW);
  s.z1 = colored(n, real.qz1, seed, kStreamZ1);
  s.z2 = colored(n, real.qz2, seed, kStreamZ2);
  s.y1 = s.w * real.c1.transpose() + s.z1;
  s.y2 = s.w * real.c2.transpose() + s.z2;
  return s;
}

SampleBlock sample(const OptimalState& state, Eigen::Index n, std::uint64_t seed) {
  require_samples(n);
  const auto& idx = state.idx;
  const Vector& d = state.d;
  const Matrix ident = draw(n, idx.p11, seed, kStreamIdentical);
  const Matrix g1 = draw(n, idx.p12, seed, kStreamCorrelated1);
  const Matrix g2 = draw(n, idx.p12, seed, kStreamCorrelated2);
  const Matrix priv1 = draw(n, idx.p13, seed, kStreamPrivate1);
  const Matrix priv2 = draw(n, idx.p23, seed, kStreamPrivate2);
  const Matrix v = draw(n, idx.p12, seed, kStreamV);

  // Correlated source block: Cov(Y12, Y22) = D.
  const Matrix y12 = g1;
  const Matrix y22 = g1 * d.asDiagonal() +
                     g2 * (1.0 - d.array().square()).sqrt().matrix().asDiagonal();
  const Matrix w2 = y12 * state.l1.transpose() + y22 * state.l2.transpose() +
                    v * state.l3.transpose();
  const Matrix sqrt_d = d.cwiseSqrt().asDiagonal();

  SampleBlock s;
  s.n_samples = n;
  s.v = v;
  s.w.resize(n, state.state_dim());
  s.w << ident, w2;
  s.y1.resize(n, idx.p1());
  s.y1 << ident, y12, priv1;
  s.y2.resize(n, idx.p2());
  s.y2 << ident, y22, priv2;
  s.z1.resize(n, idx.p1());
  s.z1 << Matrix::Zero(n, idx.p11), y12 - w2 * sqrt_d, priv1;
  s.z2.resize(n, idx.p2());
  s.z2 << Matrix::Zero(n, idx.p21), y22 - w2 * sqrt_d, priv2;
  return s;
}

SampleBlock sample(const TestChannel& tc, Eigen::Index n, std::uint64_t seed) {
  SampleBlock s = sample(tc.base, n, seed);
  s.v1 = colored(n, tc.qv1, seed, kStreamV1);
  s.v2 = colored(n, tc.qv2, seed, kStreamV2);
  s.yhat1 = s.w * tc.base.c1.transpose() + s.z1 * tc.a1.transpose() + s.v1;
  s.yhat2 = s.w * tc.base.c2.transpose() + s.z2 * tc.a2.transpose() + s.v2;
  return s;
}

}  // namespace gwgauss
