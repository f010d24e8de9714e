#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

#include "gwgauss/gaussmodel.hpp"

namespace testsupport {

inline const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(GWG_TEST_DATA_DIR) + "/oracle_values.json");
    return nlohmann::json::parse(in);
  }();
  return j;
}

inline gwgauss::Vector vec(std::initializer_list<double> xs) {
  gwgauss::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline gwgauss::Vector vec(const nlohmann::json& a) {
  gwgauss::Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

inline double max_abs(const gwgauss::Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Pair with identity marginals and the given cross block.
inline gwgauss::JointGaussianPair canonical_pair(const gwgauss::Matrix& q12) {
  return gwgauss::JointGaussianPair(gwgauss::Matrix::Identity(q12.rows(), q12.rows()), q12,
                                    gwgauss::Matrix::Identity(q12.cols(), q12.cols()));
}

}  // namespace testsupport
