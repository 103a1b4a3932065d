#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "transversal/cover.hpp"
#include "transversal/hypersurface.hpp"

namespace transversal {

enum class Verdict { Pass, Inconclusive, Fail, Skipped };
enum class Relation { LE, EQ };

std::string to_string(Verdict v);

struct Assertion {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double mc_error = 0.0;
  Relation relation = Relation::LE;
  double tol = 1e-9;  // relative band (LE: 1e-9 |rhs|; EQ: tol max(1,|rhs|))
  Verdict verdict = Verdict::Pass;
};

Verdict judge(const Assertion& a);

struct InfoTerm {
  std::string name;
  double value = 0.0;
};

struct CheckReport {
  std::string check_id;
  std::string instance;
  std::string fingerprint;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  std::string constant_id;
  double margin = 0.0;  // rhs - lhs of the primary assertion
  double mc_error = 0.0;
  Verdict verdict = Verdict::Pass;
  std::uint64_t seed = 0;
  std::optional<double> runtime_ms;
  int workers = 1;
  std::vector<Assertion> assertions;
  std::vector<InfoTerm> info;
  std::vector<std::string> notes;
  double rhs_scale = 1.0;  // applied to the bounding side of every LE assertion

  Assertion& assert_le(const std::string& name, double lhs, double rhs, double mc_error = 0.0);
  Assertion& assert_eq(const std::string& name, double lhs, double rhs, double tol, double mc_error = 0.0);
  void add_info(const std::string& name, double value) { info.push_back({name, value}); }
  double info_value(const std::string& name) const;  // NaN if absent
  const Assertion* find(const std::string& name) const;
  // Judges all assertions; the primary assertion fills lhs/rhs/margin/mc_error.
  void finalize(const std::string& primary);
};

struct CheckInstance {
  std::vector<DiscreteHypersurface> surfaces;
  std::optional<DiscreteHypersurface> body;  // mixed-volume body (zonotope Pi(body)); ball when absent
  std::optional<Mat> form;                   // positive-definite form for the ellipsoid checks
  std::optional<Mat> basis;                  // columns w_1..w_d
  std::string label;

  std::string fingerprint() const;
  std::string describe() const;
};

struct CheckParams {
  double p = 1.0;
  int j = 0;  // 0: number of surfaces, or d when a single surface is given
  std::optional<UniformCover> cover;
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t seed = 1;
  int random_frames = 4;
  double constant_scale = 1.0;  // test mode: multiplies every bounding side
  double lewis_tol = 1e-9;
  int lewis_max_iter = 500;
};

std::vector<std::string> check_ids();
bool is_check_id(const std::string& id);

// Unknown ids throw std::invalid_argument; precondition failures give a Skipped report.
CheckReport run_check(const std::string& check_id, const CheckInstance& instance, const CheckParams& params);

nlohmann::json report_to_json(const CheckReport& r);
std::string csv_header();
std::string report_to_csv(const CheckReport& r);

}  // namespace transversal
