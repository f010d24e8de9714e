#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gwgauss/io.hpp"
#include "gwgauss/realize.hpp"

namespace gwgauss {

enum class Units { Nats, Bits, PaperExampleBits };

/// Throws BadFlags on an unknown name.
Units parse_units(std::string_view name);
std::string_view units_name(Units u) noexcept;
double to_units(double nats, Units u);

Json common_info_doc(const CanonicalData& c, Units u);

/// Carries "status": "inside-DW" or "outside-DW" and the region bound; only
/// the inside case has a value.
Json lossy_common_info_doc(const CanonicalData& c, double delta1, double delta2,
                           Units u);

enum class RdfKind { Marginal, Conditional, Joint, GrayBound };
RdfKind parse_rdf_kind(std::string_view name);

struct RdfRequest {
  RdfKind kind = RdfKind::Marginal;
  double delta1 = 0.0;
  double delta2 = 0.0;  // joint and gray-bound only
  int branch = 1;       // marginal and conditional
  std::optional<Matrix> qw;  // conditional; identity when absent
  Units units = Units::Nats;
};

Json rdf_doc(const CanonicalData& c, const RdfRequest& r);

/// Header comment, column row, then one row per alpha pair in grid order.
std::string region_csv(const CanonicalData& c, double delta1, double delta2,
                       int alpha_grid);

enum class RealizationKind { Optimal, Family, TestChannel };
std::string_view realization_kind_name(RealizationKind k) noexcept;

struct RealizationSpec {
  RealizationKind kind = RealizationKind::Optimal;
  CanonicalData canon;
  Matrix qw;  // correlated-part state covariance
  double delta1 = 0.0, delta2 = 0.0;  // test channel only
};

/// qw absent: optimal state (test channel at QW = I if deltas are given).
RealizationSpec make_realization_spec(const CanonicalData& c,
                                      const std::optional<Matrix>& qw,
                                      std::optional<std::pair<double, double>> deltas);

Json realization_doc(const RealizationSpec& spec);
RealizationSpec realization_from_doc(const Json& j);

Json simulate_doc(const RealizationSpec& spec, Eigen::Index n, std::uint64_t seed);

/// Q = L L^T + 1e-9 I with standard normal L, seeded.
JointGaussianPair demo_random_pair(Eigen::Index p1, Eigen::Index p2, std::uint64_t seed);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace gwgauss
