#include "gwgauss/commands.hpp"

#include <cmath>
#include <sstream>

#include "gwgauss/graywyner.hpp"
#include "gwgauss/mc_oracle.hpp"
#include "gwgauss/random.hpp"
#include "gwgauss/rdf.hpp"
#include "gwgauss/wyner.hpp"

namespace gwgauss {

Units parse_units(std::string_view name) {
  if (name == "nats") return Units::Nats;
  if (name == "bits") return Units::Bits;
  if (name == "paper-example-bits") return Units::PaperExampleBits;
  throw Error(ErrorCode::BadFlags, "unknown units '" + std::string(name) + "'");
}

std::string_view units_name(Units u) noexcept {
  switch (u) {
    case Units::Nats: return "nats";
    case Units::Bits: return "bits";
    case Units::PaperExampleBits: return "paper-example-bits";
  }
  return "nats";
}

double to_units(double nats, Units u) {
  switch (u) {
    case Units::Nats: return nats;
    case Units::Bits: return nats_to_bits(nats);
    case Units::PaperExampleBits: return paper_example_bits(nats);
  }
  return nats;
}

namespace {

Json in_units(const Vector& v, Units u) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_json(to_units(v(i), u)));
  return a;
}

Json int_list(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix identity_state(const CanonicalData& c) {
  return Matrix::Identity(c.d.size(), c.d.size());
}

Matrix canonical_cross(const CanonicalData& c) {
  const Matrix q = canonical_pair_covariance(c.idx, c.d);
  return q.topRightCorner(c.idx.p1(), c.idx.p2());
}

}  // namespace

Json common_info_doc(const CanonicalData& c, Units u) {
  const CommonInfoResult full = common_information(c.idx, c.d);
  const CommonInfoResult corr = common_information(c.d);
  Json j;
  j["units"] = units_name(u);
  j["value"] = number_json(to_units(full.value, u));
  j["case"] = case_name(full.case_tag);
  j["correlated_part_value"] = number_json(to_units(corr.value, u));
  j["per_coefficient_terms"] = in_units(full.per_coefficient_terms, u);
  j["identical_dim"] = c.idx.p11;
  j["idx"] = indices_json(c.idx);
  j["d"] = vector_json(c.d);
  return j;
}

Json lossy_common_info_doc(const CanonicalData& c, double delta1, double delta2,
                           Units u) {
  if (!(delta1 >= 0.0) || !(delta2 >= 0.0)) {
    throw Error(ErrorCode::NonpositiveDistortion, "distortions must be nonnegative");
  }
  const DWRegion region(c.d);
  Json j;
  j["units"] = units_name(u);
  j["delta1"] = number_json(delta1);
  j["delta2"] = number_json(delta2);
  j["region_bound"] = number_json(region.bound());
  if (region.contains(delta1, delta2)) {
    j["status"] = "inside-DW";
    j["value"] = number_json(to_units(common_information(c.idx, c.d).value, u));
  } else {
    j["status"] = "outside-DW";
    j["value"] = nullptr;
    j["message"] = "lossy common information is characterized only on D_W";
  }
  return j;
}

RdfKind parse_rdf_kind(std::string_view name) {
  if (name == "marginal") return RdfKind::Marginal;
  if (name == "conditional") return RdfKind::Conditional;
  if (name == "joint") return RdfKind::Joint;
  if (name == "gray-bound") return RdfKind::GrayBound;
  throw Error(ErrorCode::BadFlags, "unknown rdf kind '" + std::string(name) + "'");
}

Json rdf_doc(const CanonicalData& c, const RdfRequest& r) {
  if (r.units == Units::PaperExampleBits) {
    throw Error(ErrorCode::BadFlags, "rdf reports nats or bits");
  }
  if (r.branch != 1 && r.branch != 2) throw Error(ErrorCode::BadFlags, "branch must be 1 or 2");
  const Units u = r.units;
  Json j;
  j["units"] = units_name(u);
  switch (r.kind) {
    case RdfKind::Marginal:
    case RdfKind::Conditional: {
      RdfResult res;
      if (r.kind == RdfKind::Marginal) {
        const int p = r.branch == 1 ? c.idx.p1() : c.idx.p2();
        if (!(r.delta1 > 0.0)) {
          throw Error(ErrorCode::NonpositiveDistortion, "distortion must be positive");
        }
        res = p > 0 ? marginal_rdf(Vector::Ones(p), r.delta1) : RdfResult{};
        j["kind"] = "marginal";
      } else {
        const Matrix qw = r.qw ? *r.qw : identity_state(c);
        const QWParameter q(c.d, qw);
        // Identical components have zero conditional variance and cost nothing.
        res = conditional_rdf_general(c.d, q.matrix(), r.branch, r.delta1,
                                      r.branch == 1 ? c.idx.p13 : c.idx.p23);
        j["kind"] = "conditional";
      }
      j["branch"] = r.branch;
      j["delta"] = number_json(r.delta1);
      j["rate"] = number_json(to_units(res.rate, u));
      j["variances"] = vector_json(res.variances);
      j["alloc"] = vector_json(res.alloc);
      j["water_level"] = number_json(res.water_level);
      j["active_set"] = int_list(res.active_set);
      j["regime"] = "water-filling";
      return j;
    }
    case RdfKind::Joint: {
      const JointRdfResult res = joint_rdf(c.d, r.delta1, r.delta2);
      j["kind"] = "joint";
      j["delta1"] = number_json(r.delta1);
      j["delta2"] = number_json(r.delta2);
      j["rate"] = number_json(to_units(res.rate, u));
      j["alloc"] = {{"branch1", vector_json(res.alloc1)}, {"branch2", vector_json(res.alloc2)}};
      j["water_level"] = nullptr;
      j["regime"] = regime_name(res.regime);
      j["region_bound"] = number_json(DWRegion(c.d).bound());
      if (res.regime == JointRegime::Numerical) {
        j["multipliers"] = {number_json(res.mu1), number_json(res.mu2)};
        j["kkt_residual"] = number_json(res.kkt_residual);
      }
      return j;
    }
    case RdfKind::GrayBound: {
      j["kind"] = "gray-bound";
      j["delta1"] = number_json(r.delta1);
      j["delta2"] = number_json(r.delta2);
      j["rate"] = number_json(to_units(gray_lower_bound(c.d, r.delta1, r.delta2), u));
      j["alloc"] = nullptr;
      j["water_level"] = nullptr;
      j["regime"] = "lower-bound";
      return j;
    }
  }
  throw Error(ErrorCode::Internal, "unhandled rdf kind");
}

std::string region_csv(const CanonicalData& c, double delta1, double delta2,
                       int alpha_grid) {
  if (c.idx.p11 > 0) {
    throw Error(ErrorCode::InconsistentIndices,
                "identical components make every rate triple infinite; region sweep needs p11 = 0");
  }
  SweepOptions opt;
  opt.private1 = c.idx.p13;
  opt.private2 = c.idx.p23;
  const auto points = region_sweep(c.d, delta1, delta2, default_alpha_grid(alpha_grid), opt);

  std::string out = "# diagonal-family upper bound; units=nats; delta1=" +
                    format_number(delta1) + "; delta2=" + format_number(delta2) + "\n";
  out += "alpha1,alpha2,T,R0,R1,R2";
  for (Eigen::Index j = 0; j < c.d.size(); ++j) out += ",q_" + std::to_string(j + 1);
  out += '\n';
  for (const auto& p : points) {
    const double row[] = {p.alpha1, p.alpha2, p.objective, p.triple.r0, p.triple.r1, p.triple.r2};
    std::string line;
    for (double x : row) {
      if (!line.empty()) line += ',';
      line += format_number(x);
    }
    for (Eigen::Index j = 0; j < p.q.size(); ++j) line += ',' + format_number(p.q(j));
    out += line + '\n';
  }
  return out;
}

std::string_view realization_kind_name(RealizationKind k) noexcept {
  switch (k) {
    case RealizationKind::Optimal: return "optimal";
    case RealizationKind::Family: return "family";
    case RealizationKind::TestChannel: return "test_channel";
  }
  return "optimal";
}

RealizationSpec make_realization_spec(const CanonicalData& c,
                                      const std::optional<Matrix>& qw,
                                      std::optional<std::pair<double, double>> deltas) {
  check_indices(c.idx, c.d);
  RealizationSpec s;
  s.canon = c;
  s.qw = qw ? *qw : identity_state(c);
  QWParameter(c.d, s.qw);
  if (deltas) {
    s.kind = RealizationKind::TestChannel;
    s.delta1 = deltas->first;
    s.delta2 = deltas->second;
    if (!(s.delta1 > 0.0) || !(s.delta2 > 0.0)) {
      throw Error(ErrorCode::NonpositiveDistortion, "test channel needs positive distortions");
    }
  } else {
    s.kind = qw ? RealizationKind::Family : RealizationKind::Optimal;
  }
  return s;
}

Json realization_doc(const RealizationSpec& s) {
  const CanonicalData& c = s.canon;
  Json j;
  j["kind"] = realization_kind_name(s.kind);
  j["idx"] = indices_json(c.idx);
  j["d"] = vector_json(c.d);
  j["QW_param"] = matrix_json(s.qw);

  auto put_realization = [&](const CIRealization& r, const Matrix& target_cross) {
    j["state_dim"] = r.state_dim();
    j["C1"] = matrix_json(r.c1);
    j["C2"] = matrix_json(r.c2);
    j["QZ1"] = matrix_json(r.qz1);
    j["QZ2"] = matrix_json(r.qz2);
    j["QW"] = matrix_json(r.qw);
    j["ci_identity_residual"] = number_json(max_abs(r.cross_covariance() - target_cross));
  };

  switch (s.kind) {
    case RealizationKind::Optimal: {
      const OptimalState st = optimal_state(c.idx, c.d);
      put_realization(st.realization(), canonical_cross(c));
      j["L1"] = vector_json(st.l1.diagonal());
      j["L2"] = vector_json(st.l2.diagonal());
      j["L3"] = vector_json(st.l3.diagonal());
      break;
    }
    case RealizationKind::Family: {
      const CIRealization corr = family_realization(c.d, QWParameter(c.d, s.qw));
      put_realization(embed_realization(c.idx, corr), canonical_cross(c));
      break;
    }
    case RealizationKind::TestChannel: {
      const TestChannel tc = rdf_test_channel(c.d, QWParameter(c.d, s.qw), s.delta1, s.delta2);
      j["delta1"] = number_json(s.delta1);
      j["delta2"] = number_json(s.delta2);
      put_realization(tc.base, Matrix(c.d.asDiagonal()));
      j["A1"] = matrix_json(tc.a1);
      j["A2"] = matrix_json(tc.a2);
      j["QV1"] = matrix_json(tc.qv1);
      j["QV2"] = matrix_json(tc.qv2);
      j["QE1"] = matrix_json(tc.qe1);
      j["QE2"] = matrix_json(tc.qe2);
      j["orthogonality_residual"] = number_json(reconstruction_orthogonality_residual(tc));
      break;
    }
  }
  return j;
}

RealizationSpec realization_from_doc(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw Error(ErrorCode::ParseError, "realization document needs a kind");
  }
  const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
  const CanonicalData c = canonical_from_json(j, Thresholds{});
  const Matrix qw = j.contains("QW_param") ? matrix_from_json(j.at("QW_param"))
                                           : identity_state(c);
  const Matrix q = qw.size() == 0 ? identity_state(c) : qw;
  if (kind == "optimal") return make_realization_spec(c, std::nullopt, std::nullopt);
  if (kind == "family") return make_realization_spec(c, q, std::nullopt);
  if (kind == "test_channel") {
    return make_realization_spec(
        c, q, std::make_pair(number_from_json(j.at("delta1")), number_from_json(j.at("delta2"))));
  }
  throw Error(ErrorCode::ParseError, "unknown realization kind '" + kind + "'");
}

Json simulate_doc(const RealizationSpec& s, Eigen::Index n, std::uint64_t seed) {
  const CanonicalData& c = s.canon;
  SampleBlock block;
  Matrix target;
  double mi_exact = 0.0;
  std::optional<std::pair<double, double>> targets;
  switch (s.kind) {
    case RealizationKind::Optimal:
      block = sample(optimal_state(c.idx, c.d), n, seed);
      target = canonical_pair_covariance(c.idx, c.d);
      mi_exact = mi_canonical(c.idx, c.d);
      break;
    case RealizationKind::Family:
      block = sample(embed_realization(c.idx, family_realization(c.d, QWParameter(c.d, s.qw))),
                     n, seed);
      target = canonical_pair_covariance(c.idx, c.d);
      mi_exact = mi_canonical(c.idx, c.d);
      break;
    case RealizationKind::TestChannel: {
      const TestChannel tc = rdf_test_channel(c.d, QWParameter(c.d, s.qw), s.delta1, s.delta2);
      block = sample(tc, n, seed);
      target = tc.base.pair_covariance();
      const int m = static_cast<int>(c.d.size());
      mi_exact = mi_canonical(IndexSextuple{0, m, 0, 0, m, 0}, c.d);
      targets = std::make_pair(tc.target_distortion1(), tc.target_distortion2());
      break;
    }
  }
  ValidationReport rep = validate_realization(block, target);
  Json j;
  j["kind"] = realization_kind_name(s.kind);
  j["N"] = rep.n_samples;
  j["seed"] = seed;
  j["cov_rel_err"] = number_json(rep.cov_rel_err);
  j["ci_residual"] = number_json(rep.ci_residual);
  j["noise_cross"] = number_json(rep.noise_cross);
  j["clt_threshold"] = number_json(clt_threshold(target.rows(), rep.n_samples));
  j["mi_plugin"] = number_json(rep.mi_plugin);
  j["mi_exact"] = number_json(mi_exact);
  if (targets) {
    const DistortionCheck dc = validate_distortion(block, targets->first, targets->second);
    j["distortion_targets"] = {number_json(targets->first), number_json(targets->second)};
    j["distortions"] = {number_json(dc.empirical1), number_json(dc.empirical2)};
    j["distortion_errs"] = {number_json(dc.rel_err1), number_json(dc.rel_err2)};
  } else {
    j["distortion_errs"] = Json::array();
  }
  return j;
}

JointGaussianPair demo_random_pair(Eigen::Index p1, Eigen::Index p2, std::uint64_t seed) {
  if (p1 < 1 || p2 < 1) throw Error(ErrorCode::BadFlags, "p1 and p2 must be at least 1");
  Rng rng = make_stream(seed, 0);
  return random_pair_lltt(p1, p2, rng, 1e-9);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace gwgauss
