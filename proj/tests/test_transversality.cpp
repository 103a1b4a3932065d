#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "transversal/transversality.hpp"

using namespace transversal;

TEST_CASE("q_exact matches nested-loop enumeration (property)") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 2 + trial % 3;
    int j = 1 + trial % d;
    double p = 0.5 + 0.5 * (trial % 5);
    std::vector<DiscreteHypersurface> s;
    for (int a = 0; a < j; ++a) s.push_back(oracle::random_surface(rng, d, 2 + a % 3));
    QResult r = q_exact(s, j, p);
    double ref = oracle::brute_power_sum(s, p);
    CHECK(r.power_sum == doctest::Approx(ref).epsilon(1e-11));
    CHECK(r.value == doctest::Approx(std::pow(ref, 1.0 / (j * p))).epsilon(1e-11));
  }
}

TEST_CASE("q_exact on the axis cross") {
  auto s = make_axis_cross(2, 1.0, false);
  QResult r = q_exact(s, 2, 1.0);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.tuples == 4);
  // diagonal j=1: Q_1^p = (sum w |v|^p)^{1/p}
  CHECK(q_exact(s, 1, 2.0).value == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(q_exact(s, 3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(q_exact(sample_sphere_uniform(4, 200, 1), 4, 1.0, 1000), std::length_error);
}

TEST_CASE("Monte Carlo Q agrees with exact within 4 standard errors") {
  auto s = random_gaussian(3, 6, 5);
  QResult ex = q_exact(s, 3, 1.0);
  QEstimate mc = q_montecarlo(s, 3, 1.0, 400000, 7);
  CHECK(std::abs(mc.power_mean - ex.power_sum) <= 4.0 * mc.stderr_power);
  QEstimate again = q_montecarlo(s, 3, 1.0, 400000, 7);
  CHECK(again.value == mc.value);
}

TEST_CASE("Finner chain on random instances with several covers (property)") {
  std::mt19937_64 rng(22);
  std::vector<UniformCover> covers{UniformCover::singletons(3), UniformCover::partition(3, {{0, 1}, {2}}),
                                   UniformCover::weighted(3, {{0, 1}, {1, 2}, {0, 2}}, {0.5, 0.5, 0.5}),
                                   UniformCover::counting(3, {{0, 1}, {1, 2}, {0, 2}}, 2)};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DiscreteHypersurface> s;
    for (int a = 0; a < 3; ++a) s.push_back(oracle::random_surface(rng, 3 + trial % 2, 3));
    double p = 1.0 + 0.5 * (trial % 4);
    const auto& c = covers[trial % covers.size()];
    FinnerResult f = finner_check(s, c, p);
    CHECK(f.lhs == doctest::Approx(f.rhs_refined).epsilon(1e-10));
    CHECK(f.rhs_refined <= f.rhs_coarse * (1 + 1e-12));
    CHECK(f.rhs_coarse <= f.classical * (1 + 1e-12));
    CHECK(f.sup_rho <= 1.0 + 1e-12);
  }
}

TEST_CASE("orthogonal blocks make rho identically one") {
  Mat v = Mat::Identity(3, 3);
  std::vector<DiscreteHypersurface> s;
  for (int a = 0; a < 3; ++a) s.push_back(make_surface(3, {{1.0, 2.0 * v.col(a)}}, "axis"));
  FinnerResult f = finner_check(s, UniformCover::singletons(3), 1.0);
  CHECK(f.sup_rho == doctest::Approx(1.0));
  CHECK(f.lhs == doctest::Approx(f.classical));
}

namespace {
// I_p(sigma) on S^1 by quadrature: (1/pi) int_0^pi |sin t|^p dt
double ip_circle(double p) {
  return oracle::integrate([&](double t) { return std::pow(std::abs(std::sin(t)), p); }, 0.0, std::numbers::pi) /
         std::numbers::pi;
}
}  // namespace

TEST_CASE("closed form I_p(sigma) against quadrature") {
  // |sin|^p is smooth only for even p; odd and fractional powers limit the quadrature accuracy
  for (double p : {2.0, 4.0, 6.0}) CHECK(i_p_uniform_closed_form(2, p) == doctest::Approx(ip_circle(p)).epsilon(1e-12));
  for (double p : {0.5, 1.0, 1.5, 3.0}) CHECK(i_p_uniform_closed_form(2, p) == doctest::Approx(ip_circle(p)).epsilon(1e-5));
  CHECK(std::abs(ip_circle(4.0) - 0.375) <= 1e-10);
  for (int d = 2; d <= 6; ++d)
    for (double p : {0.5, 1.0, 3.0}) CHECK(i_p_uniform_closed_form(d, p) == doctest::Approx(i_p_uniform_lgamma(d, p)));
  // d = 3: E (1-t^2)^{p/2} with t uniform on [-1,1]
  for (double p : {1.0, 2.5})
    CHECK(i_p_uniform_closed_form(3, p) ==
          doctest::Approx(0.5 * oracle::integrate([&](double t) { return std::pow(1 - t * t, p / 2); }, -1, 1))
              .epsilon(1e-6));
}

TEST_CASE("uniform measure dominates for p <= 2 (property)") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    int d = 2 + seed % 3;
    auto mu = random_sphere_measure(d, 3 + seed % 6, seed);
    for (double p : {0.5, 1.0, 1.5}) CHECK(i_p(mu, p) <= i_p_uniform_closed_form(d, p) + 1e-9);
  }
}

TEST_CASE("four-point measure beats the sphere for p > 2") {
  auto mu = make_axis_cross(2, 0.25, true);
  for (double p : {3.0, 4.0, 6.0}) {
    CHECK(i_p(mu, p) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(0.5 > i_p_uniform_closed_form(2, p));
  }
}

TEST_CASE("J_p bound and equality at balanced crosses") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto mu = random_sphere_measure(2 + seed % 4, 4 + seed % 5, seed);
    JpResult r = jp_bound_check(mu, 2.0 + seed % 4);
    CHECK(r.holds);
    CHECK(r.value <= r.bound + 1e-12);
  }
  for (int d = 2; d <= 5; ++d) {
    auto mu = make_axis_cross(d, 1.0 / (2 * d), true);
    JpResult r = jp_bound_check(mu, 4.0);
    CHECK(std::abs(r.gap) <= 1e-12);
    CHECK(r.equality_certificate);
  }
  CHECK_THROWS_AS(i_p(make_axis_cross(2, 1.0, true), 1.0), std::invalid_argument);
}

TEST_CASE("moment norms of the uniform measure") {
  // E <X,X'>^2 = 1/d
  for (int d = 2; d <= 5; ++d) CHECK(moment_norm_sq_uniform(d, 1) == doctest::Approx(1.0 / d));
  auto mu = make_axis_cross(3, 1.0 / 6.0, true);
  CHECK(moment_norm_sq(mu, 1) == doctest::Approx(1.0 / 3.0));
}
