#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "transversal/transversality.hpp"
#include "transversal/volumes.hpp"

using namespace transversal;

namespace {
// |K^p(S)| for d = 2 via the radial formula (1/2) int ||theta||^{-2} dtheta, split at the kinks of the norm
double planar_kp_area(const DiscreteHypersurface& s, double p) {
  std::vector<double> cuts{0.0, 2.0 * std::numbers::pi};
  for (const auto& a : s.atoms)
    for (double shift : {0.5, 1.5, 2.5}) {
      double t = std::fmod(std::atan2(a.v[1], a.v[0]) + shift * std::numbers::pi, 2.0 * std::numbers::pi);
      if (t > 0.0) cuts.push_back(t);
    }
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double t) {
    Vec th(2);
    th << std::cos(t), std::sin(t);
    double n = kp_norm(s, p, th);
    return 1.0 / (n * n);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) total += oracle::integrate(f, cuts[i], cuts[i + 1], 2000);
  return 0.5 * total;
}
}  // namespace

TEST_CASE("ellipsoid volume and covariance") {
  Mat t(2, 2);
  t << 4, 0, 0, 1;
  CHECK(make_ellipsoid(t).volume() == doctest::Approx(std::numbers::pi / 2));
  Mat bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(make_ellipsoid(bad), std::invalid_argument);
  auto flat = make_surface(2, {{1.0, Vec::Unit(2, 0)}}, "flat");
  CHECK_THROWS_AS(covariance(flat), std::invalid_argument);
  std::mt19937_64 rng(41);
  auto s = oracle::random_surface(rng, 2, 5);
  KpVolume v = kp_volume(s, 2.0);
  CHECK(v.method == "ellipsoid");
  CHECK(v.value == doctest::Approx(planar_kp_area(s, 2.0)).epsilon(1e-9));
}

TEST_CASE("exact polar volume against radial quadrature in the plane (property)") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = oracle::random_surface(rng, 2, 2 + trial % 6);
    KpVolume v = kp_volume(s, 1.0, KpMethod::Exact);
    CHECK(v.method == "exact_polar");
    const double rel = (v.value - planar_kp_area(s, 1.0)) / v.value;
    INFO(rel << " n=" << s.size());
    CHECK(v.value == doctest::Approx(planar_kp_area(s, 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("polar of the cube is the cross-polytope") {
  for (int d = 1; d <= 3; ++d) {
    auto s = make_axis_cross(d, 1.0, false);
    CHECK(kp_volume(s, 1.0, KpMethod::Exact).value == doctest::Approx(std::ldexp(1.0, d) / factorial(d)));
  }
}

TEST_CASE("exact and Monte Carlo volumes agree within 4 standard errors") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    auto s = oracle::random_surface(rng, 3, 4 + trial % 3);
    KpVolume ex = kp_volume(s, 1.0, KpMethod::Exact);
    KpVolume mc = kp_volume(s, 1.0, KpMethod::RadialMC, 300000, 5 + trial);
    CHECK(mc.stderr_value > 0.0);
    CHECK(std::abs(mc.value - ex.value) <= 4.0 * mc.stderr_value);
  }
  // p = 4 in the plane: quadrature oracle for the radial integral
  auto s = oracle::random_surface(rng, 2, 5);
  KpVolume mc = kp_volume(s, 4.0, KpMethod::RadialMC, 400000, 3);
  CHECK(std::abs(mc.value - planar_kp_area(s, 4.0)) <= 4.0 * mc.stderr_value);
  KpVolume again = kp_volume(s, 4.0, KpMethod::RadialMC, 400000, 3);
  CHECK(again.value == mc.value);
  CHECK_THROWS_AS(kp_volume(s, 4.0, KpMethod::Exact), std::invalid_argument);
}

TEST_CASE("visibility scales as |K|^{-1/d}") {
  auto s = make_axis_cross(2, 1.0, false);
  VisResult v = vis_p(s, 1.0);
  CHECK(v.value == doctest::Approx(std::pow(2.0, -0.5)));
  // homogeneity: vis(lambda S) = lambda vis(S) for p = 1
  auto t = s.transformed(3.0 * Mat::Identity(2, 2));
  CHECK(vis_p(t, 1.0).value == doctest::Approx(3.0 * v.value));
}

TEST_CASE("Santalo-type inequality and its equality class") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto par = cube_sheared(3, seed);
    SantaloResult r = santalo_check(par);
    CHECK(r.parallelotope);
    CHECK(r.rhs == doctest::Approx(r.lhs).epsilon(1e-9));
    auto s = random_gaussian(3, 5, seed);
    SantaloResult q = santalo_check(s);
    CHECK_FALSE(q.parallelotope);
    CHECK(q.rhs < q.lhs);
    MahlerResult m = mahler_product(s);
    CHECK(m.value >= m.bound);
  }
  CHECK(distinct_directions(make_axis_cross(3, 1.0, true)) == 3);
}

TEST_CASE("sigma_2 factors: determinant form equals the wedge form") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = oracle::random_surface(rng, 4, 5);
    Mat q = oracle::random_orthogonal(rng, 4);
    for (int k = 1; k <= 4; ++k)
      CHECK(sigma2_plane(s, q.leftCols(k)) == doctest::Approx(sigma2_plane_direct(s, q.leftCols(k))).epsilon(1e-10));
    CHECK(sigma2_plane(s, q) == doctest::Approx(std::pow(q_exact(s, 4, 2.0).value, 4)).epsilon(1e-10));
  }
}
