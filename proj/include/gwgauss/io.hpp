#pragma once

#include <string>

#include "json.hpp"

#include "gwgauss/cvf.hpp"
#include "gwgauss/gaussmodel.hpp"

namespace gwgauss {

using Json = nlohmann::ordered_json;

/// Finite values as numbers (shortest round-trip form); non-finite values
/// as the strings "inf", "-inf", "nan".
Json number_json(double x);
double number_from_json(const Json& j);

Json vector_json(const Vector& v);
Vector vector_from_json(const Json& j);
/// Array of rows.
Json matrix_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json indices_json(const IndexSextuple& idx);
IndexSextuple indices_from_json(const Json& j);

/// %.17g, with inf/-inf/nan spelled out.
std::string format_number(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json parse_json(const std::string& text);

/// {"p1": int, "p2": int, "Q": [[...]]}
Json pair_json(const JointGaussianPair& pair);
JointGaussianPair pair_from_json(const Json& j);

/// "# p1=..,p2=.." header line, then one comma-separated row per line.
std::string pair_csv(const JointGaussianPair& pair);
JointGaussianPair pair_from_csv(const std::string& text);

/// Dispatches on the extension: .csv is CSV, anything else JSON.
JointGaussianPair read_pair_file(const std::string& path);

/// S1, S2, idx, d, thresholds and the decomposition intermediates.
Json cvf_json(const CanonicalForm& cf, const Thresholds& th);

/// Canonical data recovered from either a cvf document or a raw pair
/// document (decomposed on the fly).
struct CanonicalData {
  IndexSextuple idx;
  Vector d;
};

CanonicalData canonical_from_json(const Json& j, const Thresholds& th);
CanonicalData load_canonical(const std::string& path, const Thresholds& th);

}  // namespace gwgauss
