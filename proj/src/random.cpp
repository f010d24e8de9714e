#include "gwgauss/random.hpp"

namespace gwgauss {

Rng make_stream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return Rng(seq);
}

Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  // row-major fill so a prefix of rows is independent of the total count
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  }
  return m;
}

Matrix random_orthogonal(Eigen::Index n, Rng& rng) {
  const Matrix g = standard_normal(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

JointGaussianPair random_pair_lltt(Eigen::Index p1, Eigen::Index p2, Rng& rng,
                                   double jitter) {
  const Eigen::Index p = p1 + p2;
  const Matrix l = standard_normal(p, p, rng);
  const Matrix q = l * l.transpose() + jitter * Matrix::Identity(p, p);
  return JointGaussianPair::from_joint(q, p1, p2);
}

JointGaussianPair random_pair_conditioned(Eigen::Index p1, Eigen::Index p2,
                                          Rng& rng, double ridge) {
  const Eigen::Index p = p1 + p2;
  const Matrix l = standard_normal(p, p, rng);
  const Matrix q =
      l * l.transpose() / static_cast<double>(p) + ridge * Matrix::Identity(p, p);
  return JointGaussianPair::from_joint(q, p1, p2);
}

Matrix random_family_member(const Vector& d, Rng& rng) {
  const auto n = d.size();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector t(n);
  for (Eigen::Index i = 0; i < n; ++i) t(i) = unif(rng);
  const Matrix r = random_orthogonal(n, rng);
  const Vector span = (d.cwiseInverse() - d).cwiseSqrt();
  const Matrix p = r.transpose() * t.asDiagonal() * r;
  const Matrix qw =
      Matrix(d.asDiagonal()) + span.asDiagonal() * p * span.asDiagonal();
  return 0.5 * (qw + qw.transpose());
}

Matrix random_diagonal_family_member(const Vector& d, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector q(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    q(i) = d(i) + unif(rng) * (1.0 / d(i) - d(i));
  }
  return q.asDiagonal();
}

}  // namespace gwgauss
