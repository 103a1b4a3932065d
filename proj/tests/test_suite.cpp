#include "doctest.h"
#include "transversal/suite.hpp"

using namespace transversal;
using nlohmann::json;

TEST_CASE("empty check list gives an empty successful report") {
  SuiteResult r = run_suite(json{{"checks", json::array()}});
  CHECK(r.reports.empty());
  CHECK(r.summary.ok());
  CHECK(suite_to_json(r)["summary"]["total"] == 0);
}

TEST_CASE("config errors are reported") {
  CHECK_THROWS_AS(run_suite(json::array()), std::runtime_error);
  CHECK_THROWS_AS(run_suite(json::parse(R"({"checks":[{"id":"NOPE","instance":{"generator":"axis-cross"}}]})")),
                  std::runtime_error);
  CHECK_THROWS_AS(run_suite(json::parse(R"({"checks":[{"id":"SANTALO"}]})")), std::runtime_error);
  CHECK_THROWS_AS(run_suite(json::parse(R"({"checks":[{"id":"SANTALO","instance":{"generator":"nope"}}]})")),
                  std::runtime_error);
  CHECK_THROWS_AS(run_suite_file("/nonexistent.json"), std::runtime_error);
}

TEST_CASE("repeats, inline instances and matrices") {
  auto cfg = json::parse(R"({
    "seed": 3, "mc_samples": 50000,
    "checks": [
      {"id": "VIS_P2_Q", "instance": {"generator": "random-gaussian", "d": 3, "n": 5, "label": "g"}, "repeat": 3},
      {"id": "SANTALO", "instance": {"surface": {"d": 2, "atoms": [{"w": 1, "v": [1, 0]}, {"w": 2, "v": [1, 1]}]}}},
      {"id": "ELLIPSOID_LW", "instance": {"matrix": [[2, 0], [0, 3]]}, "params": {"cover": {"sets": [[1], [2]]}}},
      {"id": "FINNER_RHO", "instance": {"generator": "random-gaussian", "d": 3, "n": 3, "count": 2},
       "params": {"cover": {"sets": [[1], [2]]}}}
    ]})");
  SuiteResult r = run_suite(cfg);
  REQUIRE(r.reports.size() == 6);
  CHECK(r.summary.pass == 6);
  CHECK(r.reports[0].instance == "g");
  CHECK(r.reports[1].instance == "g#1");
  CHECK(r.reports[0].fingerprint != r.reports[1].fingerprint);
  CHECK(r.reports[0].seed == 3);
  CHECK(r.reports[1].seed == 4);
}

TEST_CASE("corrupted constant in test mode is surfaced") {
  auto cfg = json::parse(R"({"test_mode": {"constant_scale": 0.5},
    "checks": [{"id": "VIS_P2_Q", "instance": {"generator": "random-gaussian", "d": 3, "n": 5}}]})");
  SuiteResult r = run_suite(cfg);
  CHECK(r.summary.fail == 1);
  CHECK_FALSE(r.summary.ok());
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  auto cfg = json::parse(R"({"seed": 1, "mc_samples": 100000, "checks": [
      {"id": "SANTALO", "instance": {"generator": "random-gaussian", "d": 3, "n": 12}},
      {"id": "VIS_P_UPPER", "instance": {"generator": "random-gaussian", "d": 3, "n": 5}, "params": {"p": 3}},
      {"id": "VIS_P1_UPPER", "instance": {"generator": "random-gaussian", "d": 3, "n": 6}}]})");
  set_worker_count(1);
  std::string a = suite_to_json(run_suite(cfg)).dump();
  std::string csv_a = suite_to_csv(run_suite(cfg));
  set_worker_count(3);
  auto b = suite_to_json(run_suite(cfg));
  set_worker_count(0);
  b["workers"] = 1;
  for (auto& rep : b["reports"]) rep["workers"] = 1;
  CHECK(a == b.dump());
  CHECK(csv_a == suite_to_csv(run_suite(cfg)));
}

TEST_CASE("timing is opt-in") {
  auto cfg = json::parse(R"({"checks": [{"id": "SANTALO", "instance": {"generator": "axis-cross", "d": 2}}]})");
  CHECK_FALSE(run_suite(cfg).reports[0].runtime_ms.has_value());
  CHECK(run_suite(cfg, {true}).reports[0].runtime_ms.has_value());
}
