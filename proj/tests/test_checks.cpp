#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "transversal/checks.hpp"
#include "transversal/constants.hpp"

using namespace transversal;

namespace {
CheckInstance one(const DiscreteHypersurface& s) {
  CheckInstance in;
  in.surfaces = {s};
  return in;
}
CheckParams fast(double p = 1.0) {
  CheckParams pr;
  pr.p = p;
  pr.mc_samples = 100000;
  return pr;
}
}  // namespace

TEST_CASE("verdict band") {
  Assertion a{"x", 1.0, 1.0};
  CHECK(judge(a) == Verdict::Pass);
  a.lhs = 1.0 + 0.5e-9;
  CHECK(judge(a) == Verdict::Pass);
  a.lhs = 1.0 + 2e-9;
  CHECK(judge(a) == Verdict::Fail);
  a.mc_error = 1e-3;
  CHECK(judge(a) == Verdict::Inconclusive);
  a.lhs = 1.01;
  CHECK(judge(a) == Verdict::Fail);
  a.lhs = 0.99;
  CHECK(judge(a) == Verdict::Pass);
  a.lhs = 0.998;
  CHECK(judge(a) == Verdict::Inconclusive);
  Assertion e{"e", 1.0, 1.0 + 1e-7, 0.0, Relation::EQ, 1e-6};
  CHECK(judge(e) == Verdict::Pass);
  e.rhs = 1.1;
  CHECK(judge(e) == Verdict::Fail);
  Assertion nan{"n", std::nan(""), 1.0};
  CHECK(judge(nan) == Verdict::Fail);
}

TEST_CASE("registry") {
  CHECK(check_ids().size() == 14);
  for (const auto& id : check_ids()) CHECK(is_check_id(id));
  CHECK_THROWS_AS(run_check("NOPE", one(make_axis_cross(2, 1.0, false)), fast()), std::invalid_argument);
}

TEST_CASE("SANTALO on the axis cross is an equality") {
  CheckReport r = run_check("SANTALO", one(make_axis_cross(3, 1.0, false)), fast());
  CHECK(r.verdict == Verdict::Pass);
  CHECK(std::abs(r.margin) <= 1e-9);
  REQUIRE(r.find("equality_case"));
  CHECK(r.find("equality_case")->verdict == Verdict::Pass);
  CHECK(r.fingerprint.size() == 16);
}

TEST_CASE("ELLIPSOID_LW at M = I is an upper equality") {
  for (int d = 2; d <= 5; ++d) {
    CheckInstance in;
    in.form = Mat::Identity(d, d);
    CheckParams pr = fast();
    std::vector<std::vector<int>> sets{{0, 1}};
    for (int k = 2; k < d; ++k) sets.push_back({k});
    pr.cover = UniformCover::partition(d, sets);
    CheckReport r = run_check("ELLIPSOID_LW", in, pr);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.info_value("upper_ratio") == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("ELLIPSOID_LW reports the printed lower bound failing on a correlated form") {
  CheckInstance in;
  Mat m(2, 2);
  m << 1, 0.99, 0.99, 1;
  in.form = m;
  CheckReport r = run_check("ELLIPSOID_LW", in, fast());
  CHECK(r.find("upper")->verdict == Verdict::Pass);
  CHECK(r.find("det_ineq")->verdict == Verdict::Pass);
  CHECK(r.find("det_ineq_2")->verdict == Verdict::Fail);
  CHECK(r.info_value("section_lower_slack") >= 0.0);
}

TEST_CASE("VIS_P2_Q identity and derived bounds") {
  CheckReport r = run_check("VIS_P2_Q", one(random_gaussian(3, 6, 3)), fast());
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.find("axis_identity")->verdict == Verdict::Pass);
  CHECK(r.info_value("printed_lower_holds") == 0.0);
}

TEST_CASE("checks pass on a desk-scale random instance") {
  auto s = random_gaussian(3, 6, 8);
  for (const char* id : {"FINNER_RHO", "BEZOUT", "AFFINE_LW", "VIS_P1_UPPER", "VIS_P1_LOWER_LEWIS",
                         "REVERSE_LW_ZONOID", "VIS_P_UPPER", "VIS_SANDWICH"}) {
    INFO(id);
    CHECK(run_check(id, one(s), fast()).verdict == Verdict::Pass);
  }
  CHECK(run_check("NU_MEASURE", one(s), fast()).verdict == Verdict::Pass);
  CHECK(run_check("MAXIMIZER", one(random_sphere_measure(3, 6, 2)), fast(1.0)).verdict == Verdict::Pass);
  CHECK(run_check("MAXIMIZER", one(random_sphere_measure(3, 6, 2)), fast(3.0)).verdict == Verdict::Pass);
}

TEST_CASE("Q_INF_A: equality at the isotropic cross, failure of the printed bound below p = 2") {
  CheckReport r = run_check("Q_INF_A", one(make_axis_cross(3, 1.0 / 6.0, true)), fast(2.0));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(std::abs(r.margin) <= 1e-10);
  CheckReport bad = run_check("Q_INF_A", one(make_axis_cross(2, 1.0, false)), fast(1.0));
  CHECK(bad.find("hadamard_lower")->verdict == Verdict::Pass);
  CHECK(bad.find("det_u")->verdict == Verdict::Fail);
}

TEST_CASE("preconditions produce skipped reports") {
  auto flat = make_surface(3, {{1.0, Vec::Unit(3, 0)}, {1.0, Vec::Unit(3, 1)}}, "flat");
  CheckReport r = run_check("VIS_P1_LOWER_LEWIS", one(flat), fast());
  CHECK(r.verdict == Verdict::Skipped);
  CHECK(r.assertions.empty());
  CHECK_FALSE(r.notes.empty());
  CheckReport nu = run_check("NU_MEASURE", one(random_gaussian(4, 6, 1)), fast());
  CHECK(nu.verdict == Verdict::Skipped);
  CheckParams pr = fast();
  pr.cover = UniformCover::weighted(3, {{0, 1}, {1, 2}, {0, 2}}, {0.5, 0.5, 0.5});
  CHECK(run_check("VIS_P1_UPPER", one(random_gaussian(3, 5, 1)), pr).verdict == Verdict::Skipped);
}

TEST_CASE("test mode scaling surfaces failures") {
  CheckParams pr = fast();
  pr.constant_scale = 0.5;
  CheckReport r = run_check("SANTALO", one(cube_sheared(3, 2)), pr);
  CHECK(r.verdict == Verdict::Fail);
}

TEST_CASE("JSON and CSV projections") {
  CheckReport r = run_check("SANTALO", one(cube_sheared(2, 2)), fast());
  auto j = report_to_json(r);
  for (const char* k : {"check_id", "instance", "lhs", "rhs", "constant", "margin", "mc_error", "verdict", "seed",
                        "runtime_ms"})
    CHECK(j.contains(k));
  CHECK(j["runtime_ms"].is_null());
  CHECK(j["verdict"] == "pass");
  std::string row = report_to_csv(r);
  CHECK(row.rfind("SANTALO,", 0) == 0);
  const std::string header = csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}
