// Command-line front end over the C interface.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gwgauss/gwgauss.h"

namespace {

struct CliFailure {
  int code;
  std::string message;
};

void emit_error(int code, const std::string& name, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = name;
  j["code"] = code;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

[[noreturn]] void fail(int code, const std::string& message) { throw CliFailure{code, message}; }

// Turns a nonzero library status into a CliFailure carrying its message.
void check(int status) {
  if (status != GWG_OK) throw CliFailure{status, gwg_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  gwg_string_free(s);
  return out;
}

void write_output(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out || !(out << text)) fail(GWG_EFILE_NOT_FOUND, "cannot write " + *path);
}

std::string default_units() {
  const char* env = std::getenv("GWGAUSS_UNITS");
  return env && *env ? env : "nats";
}

struct CvfHandle {
  gwg_cvf* p = nullptr;
  ~CvfHandle() { gwg_cvf_free(p); }
};

struct Thresholds {
  double h1 = 1.0 - 1e-6;
  double h2 = 1e-9;
};

int state_dim(const gwg_cvf* cvf) {
  int n = 0;
  check(gwg_cvf_correlations(cvf, nullptr, 0, &n));
  return n;
}

// QW file: a JSON array of rows, or an object with a "QW" member.
std::vector<double> read_state_matrix(const std::string& path, int n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(GWG_EFILE_NOT_FOUND, "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(GWG_EPARSE, e.what());
  }
  if (j.is_object() && j.contains("QW")) j = j["QW"];
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    fail(GWG_EDIMENSION_MISMATCH, "QW must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  std::vector<double> q;
  q.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      fail(GWG_EDIMENSION_MISMATCH, "QW must be " + std::to_string(n) + " x " + std::to_string(n));
    }
    for (const auto& x : row) {
      if (!x.is_number()) fail(GWG_EPARSE, "QW entries must be numbers");
      q.push_back(x.get<double>());
    }
  }
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical variable form, Wyner common information, rate-distortion "
               "and Gray-Wyner rate regions of Gaussian vector pairs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gwg_version()));

  std::string in_path;
  std::optional<std::string> out_path;
  Thresholds th;
  std::string units = default_units();
  std::optional<double> delta1, delta2;

  auto add_thresholds = [&](CLI::App* c) {
    c->add_option("--h1", th.h1, "identical-component threshold")->capture_default_str();
    c->add_option("--h2", th.h2, "zero-correlation threshold")->capture_default_str();
  };

  auto* cvf = app.add_subcommand("cvf", "canonical variable form of a pair");
  cvf->add_option("--in", in_path, "pair file (.json or .csv)")->required();
  cvf->add_option("--out", out_path, "cvf.json destination (stdout if absent)");
  add_thresholds(cvf);

  bool lossy = false;
  auto* ci = app.add_subcommand("common-info", "Wyner's common information");
  ci->add_option("--in", in_path, "cvf.json or pair file")->required();
  ci->add_option("--units", units, "nats, bits or paper-example-bits");
  ci->add_flag("--lossy", lossy, "lossy common information at (delta1, delta2)");
  ci->add_option("--delta1", delta1);
  ci->add_option("--delta2", delta2);
  ci->add_option("--out", out_path);
  add_thresholds(ci);

  std::string rdf_kind;
  int branch = 1;
  std::optional<std::string> qw_path;
  auto* rdf = app.add_subcommand("rdf", "rate-distortion functions");
  rdf->add_option("kind", rdf_kind, "marginal, conditional, joint or gray-bound")
      ->required()
      ->check(CLI::IsMember({"marginal", "conditional", "joint", "gray-bound"}));
  rdf->add_option("--in", in_path, "cvf.json or pair file")->required();
  rdf->add_option("--delta1", delta1)->required();
  rdf->add_option("--delta2", delta2);
  rdf->add_option("--branch", branch, "1 or 2 (marginal, conditional)")->capture_default_str();
  rdf->add_option("--qw", qw_path, "state covariance file (conditional; identity if absent)");
  rdf->add_option("--units", units, "nats or bits");
  rdf->add_option("--out", out_path);
  add_thresholds(rdf);

  int alpha_grid = 11;
  auto* region = app.add_subcommand("region", "Gray-Wyner region sweep (diagonal-family upper bound)");
  region->add_option("--in", in_path, "cvf.json or pair file")->required();
  region->add_option("--delta1", delta1)->required();
  region->add_option("--delta2", delta2)->required();
  region->add_option("--alpha-grid", alpha_grid, "points per alpha axis")->capture_default_str();
  region->add_option("--out", out_path, "region.csv destination (stdout if absent)");
  add_thresholds(region);

  std::string qw_choice = "identity";
  auto* realize = app.add_subcommand("realize", "build a realization or test channel");
  realize->add_option("--in", in_path, "cvf.json or pair file")->required();
  realize->add_option("--qw", qw_choice, "identity or a state covariance file")->capture_default_str();
  realize->add_option("--delta1", delta1, "test-channel distortion of Y1");
  realize->add_option("--delta2", delta2, "test-channel distortion of Y2");
  realize->add_option("--out", out_path);
  add_thresholds(realize);

  std::string realization_path;
  std::int64_t n_samples = 200000;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo validation of a realization");
  simulate->add_option("--realization", realization_path)->required();
  simulate->add_option("-N", n_samples, "sample count")->capture_default_str();
  simulate->add_option("--seed", seed)->capture_default_str();
  simulate->add_option("--report", out_path, "report.json destination (stdout if absent)");

  int p1 = 0, p2 = 0;
  std::string format = "json";
  auto* demo = app.add_subcommand("demo-random", "random pair Q = L L^T + 1e-9 I");
  demo->add_option("--p1", p1)->required();
  demo->add_option("--p2", p2)->required();
  demo->add_option("--seed", seed)->capture_default_str();
  demo->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  demo->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(GWG_EBAD_FLAGS, "BadFlags", e.what());
    return GWG_EBAD_FLAGS;
  }

  try {
    auto load = [&](CvfHandle& h) { check(gwg_cvf_load(in_path.c_str(), th.h1, th.h2, &h.p)); };
    char* text = nullptr;

    if (cvf->parsed()) {
      gwg_pair* pair = nullptr;
      check(gwg_pair_load(in_path.c_str(), &pair));
      CvfHandle h;
      const int st = gwg_cvf_compute(pair, th.h1, th.h2, &h.p);
      gwg_pair_free(pair);
      check(st);
      check(gwg_cvf_to_json(h.p, &text));
      write_output(out_path, take(text));
    } else if (ci->parsed()) {
      CvfHandle h;
      load(h);
      if (lossy) {
        if (!delta1 || !delta2) fail(GWG_EBAD_FLAGS, "--lossy needs --delta1 and --delta2");
        check(gwg_lossy_common_info_json(h.p, *delta1, *delta2, units.c_str(), &text));
      } else {
        check(gwg_common_info_json(h.p, units.c_str(), &text));
      }
      write_output(out_path, take(text));
    } else if (rdf->parsed()) {
      CvfHandle h;
      load(h);
      const bool two = rdf_kind == "joint" || rdf_kind == "gray-bound";
      if (two && !delta2) fail(GWG_EBAD_FLAGS, rdf_kind + " needs --delta2");
      std::vector<double> qw;
      if (qw_path) {
        if (rdf_kind != "conditional") fail(GWG_EBAD_FLAGS, "--qw applies to conditional only");
        qw = read_state_matrix(*qw_path, state_dim(h.p));
      }
      check(gwg_rdf_json(h.p, rdf_kind.c_str(), *delta1, delta2.value_or(0.0), branch,
                         qw_path ? qw.data() : nullptr, units.c_str(), &text));
      write_output(out_path, take(text));
    } else if (region->parsed()) {
      CvfHandle h;
      load(h);
      check(gwg_region_csv(h.p, *delta1, *delta2, alpha_grid, &text));
      write_output(out_path, take(text));
    } else if (realize->parsed()) {
      CvfHandle h;
      load(h);
      if (delta1.has_value() != delta2.has_value()) {
        fail(GWG_EBAD_FLAGS, "test channel needs both --delta1 and --delta2");
      }
      std::vector<double> qw;
      const bool custom = qw_choice != "identity";
      if (custom) qw = read_state_matrix(qw_choice, state_dim(h.p));
      gwg_realization* r = nullptr;
      check(gwg_realization_create(h.p, custom ? qw.data() : nullptr, delta1.has_value(),
                                   delta1.value_or(0.0), delta2.value_or(0.0), &r));
      const int st = gwg_realization_to_json(r, &text);
      gwg_realization_free(r);
      check(st);
      write_output(out_path, take(text));
    } else if (simulate->parsed()) {
      gwg_realization* r = nullptr;
      check(gwg_realization_load(realization_path.c_str(), &r));
      const int st = gwg_simulate_json(r, n_samples, seed, &text);
      gwg_realization_free(r);
      check(st);
      write_output(out_path, take(text));
    } else if (demo->parsed()) {
      gwg_pair* pair = nullptr;
      check(gwg_pair_random(p1, p2, seed, &pair));
      const int st = format == "csv" ? gwg_pair_to_csv(pair, &text) : gwg_pair_to_json(pair, &text);
      gwg_pair_free(pair);
      check(st);
      write_output(out_path, take(text));
    }
  } catch (const CliFailure& f) {
    emit_error(f.code, gwg_status_name(f.code), f.message);
    return f.code;
  }
  return 0;
}
