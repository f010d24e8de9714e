#include "gwgauss/gwgauss.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "gwgauss/commands.hpp"
#include "gwgauss/cvf.hpp"
#include "gwgauss/io.hpp"
#include "gwgauss/rdf.hpp"
#include "gwgauss/wyner.hpp"

#ifndef GWGAUSS_VERSION
#define GWGAUSS_VERSION "0.0.0"
#endif

struct gwg_pair {
  gwgauss::JointGaussianPair pair;
};

struct gwg_cvf {
  gwgauss::CanonicalData canon;
  std::optional<gwgauss::CanonicalForm> form;
  gwgauss::Thresholds thresholds;
};

struct gwg_realization {
  gwgauss::RealizationSpec spec;
};

namespace {

using gwgauss::Error;
using gwgauss::ErrorCode;

thread_local std::string g_last_error;
thread_local std::string g_last_error_json;
thread_local int g_last_status = GWG_OK;

int fail(ErrorCode code, const std::string& message) {
  g_last_status = static_cast<int>(code);
  g_last_error = message;
  gwgauss::Json j;
  j["error"] = gwgauss::error_name(code);
  j["code"] = static_cast<int>(code);
  j["message"] = message;
  g_last_error_json = j.dump();
  return g_last_status;
}

template <class F>
int guard(F&& f) {
  try {
    f();
    g_last_status = GWG_OK;
    g_last_error.clear();
    g_last_error_json.clear();
    return GWG_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(ErrorCode::ParseError, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::Internal, "out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::Internal, e.what());
  } catch (...) {
    return fail(ErrorCode::Internal, "unknown failure");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::BadFlags, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gwgauss::Units units_or_nats(const char* units) {
  return units ? gwgauss::parse_units(units) : gwgauss::Units::Nats;
}

std::optional<gwgauss::Matrix> state_matrix(const double* qw, Eigen::Index n) {
  if (qw == nullptr) return std::nullopt;
  // Row-major input.
  gwgauss::Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = qw[r * n + c];
  }
  return m;
}

}  // namespace

extern "C" {

const char* gwg_version(void) { return GWGAUSS_VERSION; }

const char* gwg_status_name(int status) {
  if (status == GWG_OK) return "Ok";
  static thread_local std::string name;
  name = std::string(gwgauss::error_name(static_cast<ErrorCode>(status)));
  return name.c_str();
}

const char* gwg_last_error(void) { return g_last_error.c_str(); }

const char* gwg_last_error_json(void) { return g_last_error_json.c_str(); }

void gwg_string_free(char* s) { delete[] s; }

int gwg_pair_create(const double* q, int p1, int p2, gwg_pair** out) {
  return guard([&] {
    require(q, "q");
    require(out, "out");
    if (p1 < 0 || p2 < 0) throw Error(ErrorCode::BadFlags, "dimensions must be nonnegative");
    const Eigen::Index n = p1 + p2;
    gwgauss::Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = q[r * n + c];
    }
    *out = new gwg_pair{gwgauss::JointGaussianPair::from_joint(m, p1, p2)};
  });
}

int gwg_pair_load(const char* path, gwg_pair** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new gwg_pair{gwgauss::read_pair_file(path)};
  });
}

int gwg_pair_random(int p1, int p2, uint64_t seed, gwg_pair** out) {
  return guard([&] {
    require(out, "out");
    *out = new gwg_pair{gwgauss::demo_random_pair(p1, p2, seed)};
  });
}

int gwg_pair_dims(const gwg_pair* pair, int* p1, int* p2) {
  return guard([&] {
    require(pair, "pair");
    if (p1) *p1 = static_cast<int>(pair->pair.p1());
    if (p2) *p2 = static_cast<int>(pair->pair.p2());
  });
}

int gwg_pair_to_json(const gwg_pair* pair, char** out) {
  return guard([&] {
    require(pair, "pair");
    require(out, "out");
    *out = copy_string(gwgauss::dump(gwgauss::pair_json(pair->pair)));
  });
}

int gwg_pair_to_csv(const gwg_pair* pair, char** out) {
  return guard([&] {
    require(pair, "pair");
    require(out, "out");
    *out = copy_string(gwgauss::pair_csv(pair->pair));
  });
}

void gwg_pair_free(gwg_pair* pair) { delete pair; }

int gwg_cvf_compute(const gwg_pair* pair, double h1, double h2, gwg_cvf** out) {
  return guard([&] {
    require(pair, "pair");
    require(out, "out");
    gwgauss::Thresholds th{h1, h2};
    th.validate();
    gwgauss::CanonicalForm cf = gwgauss::decompose(pair->pair, th);
    gwgauss::CanonicalData canon{cf.idx, cf.d};
    *out = new gwg_cvf{std::move(canon), std::move(cf), th};
  });
}

int gwg_cvf_load(const char* path, double h1, double h2, gwg_cvf** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    gwgauss::Thresholds th{h1, h2};
    th.validate();
    *out = new gwg_cvf{gwgauss::load_canonical(path, th), std::nullopt, th};
  });
}

int gwg_cvf_indices(const gwg_cvf* cvf, int out[6]) {
  return guard([&] {
    require(cvf, "cvf");
    require(out, "out");
    const auto& i = cvf->canon.idx;
    const int v[6] = {i.p11, i.p12, i.p13, i.p21, i.p22, i.p23};
    std::memcpy(out, v, sizeof v);
  });
}

int gwg_cvf_correlations(const gwg_cvf* cvf, double* out, int capacity, int* count) {
  return guard([&] {
    require(cvf, "cvf");
    const auto& d = cvf->canon.d;
    if (count) *count = static_cast<int>(d.size());
    if (out) {
      for (Eigen::Index i = 0; i < d.size() && i < capacity; ++i) out[i] = d(i);
    }
  });
}

int gwg_cvf_to_json(const gwg_cvf* cvf, char** out) {
  return guard([&] {
    require(cvf, "cvf");
    require(out, "out");
    if (cvf->form) {
      *out = copy_string(gwgauss::dump(gwgauss::cvf_json(*cvf->form, cvf->thresholds)));
    } else {
      gwgauss::Json j;
      j["idx"] = gwgauss::indices_json(cvf->canon.idx);
      j["d"] = gwgauss::vector_json(cvf->canon.d);
      *out = copy_string(gwgauss::dump(j));
    }
  });
}

void gwg_cvf_free(gwg_cvf* cvf) { delete cvf; }

int gwg_common_info_value(const gwg_cvf* cvf, double* nats) {
  return guard([&] {
    require(cvf, "cvf");
    require(nats, "nats");
    *nats = gwgauss::common_information(cvf->canon.idx, cvf->canon.d).value;
  });
}

int gwg_common_info_json(const gwg_cvf* cvf, const char* units, char** out) {
  return guard([&] {
    require(cvf, "cvf");
    require(out, "out");
    *out = copy_string(gwgauss::dump(gwgauss::common_info_doc(cvf->canon, units_or_nats(units))));
  });
}

int gwg_lossy_common_info_json(const gwg_cvf* cvf, double delta1, double delta2,
                               const char* units, char** out) {
  return guard([&] {
    require(cvf, "cvf");
    require(out, "out");
    *out = copy_string(gwgauss::dump(
        gwgauss::lossy_common_info_doc(cvf->canon, delta1, delta2, units_or_nats(units))));
  });
}

int gwg_rdf_json(const gwg_cvf* cvf, const char* kind, double delta1, double delta2,
                 int branch, const double* qw, const char* units, char** out) {
  return guard([&] {
    require(cvf, "cvf");
    require(kind, "kind");
    require(out, "out");
    gwgauss::RdfRequest r;
    r.kind = gwgauss::parse_rdf_kind(kind);
    r.delta1 = delta1;
    r.delta2 = delta2;
    r.branch = branch;
    r.qw = state_matrix(qw, cvf->canon.d.size());
    r.units = units_or_nats(units);
    *out = copy_string(gwgauss::dump(gwgauss::rdf_doc(cvf->canon, r)));
  });
}

int gwg_joint_rdf(const double* d, int n, double delta1, double delta2, double* rate) {
  return guard([&] {
    require(rate, "rate");
    if (n < 0) throw Error(ErrorCode::BadFlags, "n must be nonnegative");
    if (n > 0) require(d, "d");
    const gwgauss::Vector dv = n > 0 ? gwgauss::Vector(Eigen::Map<const gwgauss::Vector>(d, n))
                                     : gwgauss::Vector();
    *rate = gwgauss::joint_rdf(dv, delta1, delta2).rate;
  });
}

int gwg_region_csv(const gwg_cvf* cvf, double delta1, double delta2, int alpha_grid,
                   char** out) {
  return guard([&] {
    require(cvf, "cvf");
    require(out, "out");
    *out = copy_string(gwgauss::region_csv(cvf->canon, delta1, delta2, alpha_grid));
  });
}

int gwg_realization_create(const gwg_cvf* cvf, const double* qw, int with_channel,
                           double delta1, double delta2, gwg_realization** out) {
  return guard([&] {
    require(cvf, "cvf");
    require(out, "out");
    std::optional<std::pair<double, double>> deltas;
    if (with_channel) deltas = std::make_pair(delta1, delta2);
    *out = new gwg_realization{gwgauss::make_realization_spec(
        cvf->canon, state_matrix(qw, cvf->canon.d.size()), deltas)};
  });
}

int gwg_realization_load(const char* path, gwg_realization** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new gwg_realization{gwgauss::realization_from_doc(
        gwgauss::parse_json(gwgauss::read_text_file(path)))};
  });
}

int gwg_realization_to_json(const gwg_realization* r, char** out) {
  return guard([&] {
    require(r, "realization");
    require(out, "out");
    *out = copy_string(gwgauss::dump(gwgauss::realization_doc(r->spec)));
  });
}

int gwg_simulate_json(const gwg_realization* r, int64_t n, uint64_t seed, char** out) {
  return guard([&] {
    require(r, "realization");
    require(out, "out");
    *out = copy_string(gwgauss::dump(gwgauss::simulate_doc(r->spec, n, seed)));
  });
}

void gwg_realization_free(gwg_realization* r) { delete r; }

}  // extern "C"
