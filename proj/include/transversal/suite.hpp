#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "transversal/checks.hpp"

namespace transversal {

struct SuiteSummary {
  int pass = 0;
  int fail = 0;
  int inconclusive = 0;
  int skipped = 0;
  int total() const { return pass + fail + inconclusive + skipped; }
  bool ok() const { return fail == 0; }
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  SuiteSummary summary;
};

struct SuiteOptions {
  bool timing = false;  // fill runtime_ms (breaks byte-identical output)
};

// Config errors throw std::runtime_error with a readable message.
CheckInstance instance_from_json(const nlohmann::json& j, std::uint64_t seed_offset = 0);
CheckParams params_from_json(const nlohmann::json& j, int ground_size, const CheckParams& defaults);

SuiteResult run_suite(const nlohmann::json& config, const SuiteOptions& opts = {});
SuiteResult run_suite_file(const std::string& path, const SuiteOptions& opts = {});
SuiteSummary summarize(const std::vector<CheckReport>& reports);

nlohmann::json suite_to_json(const SuiteResult& r);
std::string suite_to_csv(const SuiteResult& r);

}  // namespace transversal
