#include "gwgauss/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gwgauss {

Json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::nan("");
  }
  throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_json(v(i)));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number_from_json(j[i]);
  return v;
}

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number_json(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return Matrix(0, 0);
  if (!j[0].is_array()) throw Error(ErrorCode::ParseError, "matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::ParseError, "matrix rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = number_from_json(row[static_cast<std::size_t>(c)]);
    }
  }
  return m;
}

Json indices_json(const IndexSextuple& idx) {
  return Json{{"p11", idx.p11}, {"p12", idx.p12}, {"p13", idx.p13},
              {"p21", idx.p21}, {"p22", idx.p22}, {"p23", idx.p23}};
}

IndexSextuple indices_from_json(const Json& j) {
  try {
    IndexSextuple idx;
    idx.p11 = j.at("p11").get<int>();
    idx.p12 = j.at("p12").get<int>();
    idx.p13 = j.at("p13").get<int>();
    idx.p21 = j.at("p21").get<int>();
    idx.p22 = j.at("p22").get<int>();
    idx.p23 = j.at("p23").get<int>();
    return idx;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad index sextuple: ") + e.what());
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileNotFound, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::FileNotFound, "write failed for " + path);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json pair_json(const JointGaussianPair& pair) {
  return Json{{"p1", pair.p1()}, {"p2", pair.p2()}, {"Q", matrix_json(pair.joint())}};
}

JointGaussianPair pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("Q")) {
    throw Error(ErrorCode::ParseError, "pair document needs p1, p2 and Q");
  }
  const Matrix q = matrix_from_json(j.at("Q"));
  Eigen::Index p1 = 0, p2 = 0;
  try {
    p1 = j.at("p1").get<Eigen::Index>();
    p2 = j.at("p2").get<Eigen::Index>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad p1/p2: ") + e.what());
  }
  return JointGaussianPair::from_joint(q, p1, p2);
}

std::string pair_csv(const JointGaussianPair& pair) {
  const Matrix q = pair.joint();
  std::string out = "# p1=" + std::to_string(pair.p1()) + ",p2=" + std::to_string(pair.p2()) + "\n";
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      if (c) out += ',';
      out += format_number(q(r, c));
    }
    out += '\n';
  }
  return out;
}

JointGaussianPair pair_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long p1 = -1, p2 = -1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (std::sscanf(line.c_str(), "# p1=%ld,p2=%ld", &p1, &p2) != 2) {
        throw Error(ErrorCode::ParseError, "CSV header must read '# p1=..,p2=..'");
      }
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad CSV cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (p1 < 0 || p2 < 0) throw Error(ErrorCode::ParseError, "CSV lacks the p1/p2 header");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix q(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) {
      throw Error(ErrorCode::ParseError, "CSV matrix is not square");
    }
    for (Eigen::Index c = 0; c < n; ++c) q(r, c) = rows[r][c];
  }
  return JointGaussianPair::from_joint(q, p1, p2);
}

JointGaussianPair read_pair_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") return pair_from_csv(text);
  return pair_from_json(parse_json(text));
}

Json cvf_json(const CanonicalForm& cf, const Thresholds& th) {
  Json j;
  j["p1"] = cf.p1();
  j["p2"] = cf.p2();
  j["idx"] = indices_json(cf.idx);
  j["d"] = vector_json(cf.d);
  j["S1"] = matrix_json(cf.s1);
  j["S2"] = matrix_json(cf.s2);
  j["thresholds"] = {{"h1", th.h1}, {"h2", th.h2}};
  j["audit"] = {{"U1", matrix_json(cf.u1)},
                {"D1", vector_json(cf.d1)},
                {"U2", matrix_json(cf.u2)},
                {"D2", vector_json(cf.d2)},
                {"U3", matrix_json(cf.u3)},
                {"U4", matrix_json(cf.u4)},
                {"singular_values", vector_json(cf.raw_singular)},
                {"D3", matrix_json(cf.d3_thresholded)}};
  return j;
}

CanonicalData canonical_from_json(const Json& j, const Thresholds& th) {
  if (j.is_object() && j.contains("idx")) {
    CanonicalData c;
    c.idx = indices_from_json(j.at("idx"));
    c.d = j.contains("d") ? vector_from_json(j.at("d")) : Vector();
    check_indices(c.idx, c.d);
    return c;
  }
  const CanonicalForm cf = decompose(pair_from_json(j), th);
  return {cf.idx, cf.d};
}

CanonicalData load_canonical(const std::string& path, const Thresholds& th) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".csv") {
    const CanonicalForm cf = decompose(read_pair_file(path), th);
    return {cf.idx, cf.d};
  }
  return canonical_from_json(parse_json(read_text_file(path)), th);
}

}  // namespace gwgauss
