#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "transversal/transversality.hpp"
#include "transversal/zonotope.hpp"

using namespace transversal;

TEST_CASE("planar zonotope volume equals convex hull area") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    int m = 1 + trial % 7;
    Mat g = oracle::random_matrix(rng, 2, m);
    Zonotope z{2, {}};
    for (int i = 0; i < m; ++i) z.generators.push_back(g.col(i));
    double hull = oracle::hull_area(oracle::zonotope_points(z.generators));
    CHECK(zonotope_volume(z) == doctest::Approx(hull).epsilon(1e-10).scale(1e-12));
  }
}

TEST_CASE("cube and parallelotope volumes") {
  Zonotope cube{3, {Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)}};
  CHECK(zonotope_volume(cube) == doctest::Approx(8.0));
  CHECK(zonotope_volume(cube.scaled(0.5)) == doctest::Approx(1.0));
  CHECK(zonotope_volume(cube + cube) == doctest::Approx(64.0));
  Zonotope flat{3, {Vec::Unit(3, 0), Vec::Unit(3, 1)}};
  CHECK(zonotope_volume(flat) == 0.0);
  Vec y(3);
  y << 1, -2, 0.5;
  CHECK(cube.support(y) == doctest::Approx(3.5));
}

TEST_CASE("volume identity (d!/2^d)|Pi| = Q_d^1 ^ d (property)") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    int d = 2 + trial % 3;
    auto s = oracle::random_surface(rng, d, d + 1 + trial % 3);
    double lhs = factorial(d) / std::ldexp(1.0, d) * zonotope_volume(projection_body(s));
    CHECK(lhs == doctest::Approx(q_exact(s, d, 1.0).power_sum).epsilon(1e-10));
  }
}

TEST_CASE("projections and sigma factors") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = oracle::random_surface(rng, 4, 5);
    Mat q = oracle::random_orthogonal(rng, 4);
    for (int k = 1; k <= 3; ++k) {
      Mat f = q.leftCols(k);
      CHECK(sigma_plane(s, f) == doctest::Approx(sigma_plane_direct(s, f)).epsilon(1e-10));
    }
    // full frame: projection is a rotation
    CHECK(zonotope_volume(project_zonotope(projection_body(s), q)) ==
          doctest::Approx(zonotope_volume(projection_body(s))).epsilon(1e-10));
  }
  Mat bad = Mat::Ones(3, 1);
  CHECK_THROWS_AS(require_orthonormal(bad), std::invalid_argument);
}

TEST_CASE("mixed volume oracles") {
  // V(B^2, [0, e1]) = 1
  CHECK(mixed_volume(Ball{2}, {segment(Vec::Unit(2, 0))}) == doctest::Approx(1.0).epsilon(1e-15));
  // Steiner: |B^3 + t1 S1 + t2 S2| for orthogonal unit segments; the mixed term is 2 t1 t2 = 3! V t1 t2
  auto steiner = [](double t1, double t2) {
    // |B + t1 S1 + t2 S2| = 4pi/3 + pi (t1 + t2) + 2 t1 t2 is checked against a 1D quadrature
    // of the cross-section area along the S1 axis
    return oracle::integrate(
        [&](double x) {
          double r = x < 0 ? std::max(0.0, 1 - x * x) : (x > t1 ? std::max(0.0, 1 - (x - t1) * (x - t1)) : 1.0);
          if (r <= 0.0) return 0.0;
          double rr = std::sqrt(r);
          return std::numbers::pi * r + 2 * rr * t2;  // disc of radius rr stretched by t2
        },
        -1.0, 1.0 + t1, 20000);
  };
  double t1 = 0.7, t2 = 0.4;
  double mixed_coeff = steiner(t1, t2) - 4 * std::numbers::pi / 3 - std::numbers::pi * (t1 + t2);
  double v = mixed_volume(Ball{3}, {segment(Vec::Unit(3, 0)), segment(Vec::Unit(3, 1))});
  CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(factorial(3) * v * t1 * t2 == doctest::Approx(mixed_coeff).epsilon(1e-5));
}

TEST_CASE("mixed volume is the volume on the diagonal and symmetric, multilinear") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 2 + trial % 2;
    auto s = oracle::random_surface(rng, d, 3);
    auto t = oracle::random_surface(rng, d, 2);
    Zonotope z = projection_body(s), w = projection_body(t);
    std::vector<Zonotope> all(d, z);
    CHECK(mixed_volume(z, all) == doctest::Approx(zonotope_volume(z)).epsilon(1e-10));
    CHECK(mixed_volume(z, {}) == doctest::Approx(zonotope_volume(z)).epsilon(1e-10));
    CHECK(mixed_volume(Ball{d}, {z, w}) == doctest::Approx(mixed_volume(Ball{d}, {w, z})).epsilon(1e-12));
    CHECK(mixed_volume(Ball{d}, {z + w}) ==
          doctest::Approx(mixed_volume(Ball{d}, {z}) + mixed_volume(Ball{d}, {w})).epsilon(1e-12));
    CHECK(mixed_volume(Ball{d}, {z.scaled(3.0)}) == doctest::Approx(3.0 * mixed_volume(Ball{d}, {z})).epsilon(1e-12));
  }
  // d = 2: |K + L| = |K| + 2 V(K,L) + |L|
  Zonotope a{2, {Vec::Unit(2, 0), Vec::Ones(2)}}, b{2, {Vec::Unit(2, 1)}};
  double lhs = zonotope_volume(a + b);
  CHECK(lhs == doctest::Approx(zonotope_volume(a) + 2 * mixed_volume(a, {b}) + zonotope_volume(b)));
}

TEST_CASE("Bezout inequality on random zonotopes (property)") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Zonotope> zs{projection_body(oracle::random_surface(rng, 3, 3)),
                             projection_body(oracle::random_surface(rng, 3, 3))};
    ConvexBody k = trial % 2 ? ConvexBody(Ball{3}) : ConvexBody(projection_body(oracle::random_surface(rng, 3, 4)));
    BezoutResult r = bezout_check(k, zs, UniformCover::counting(2, {{0}, {1}}, 1));
    CHECK(r.lhs <= r.rhs * (1 + 1e-9));
  }
  auto s = random_gaussian(4, 3, 2);
  auto c = bezout_corollary_check({s, s, s}, UniformCover::counting(3, {{0, 1}, {1, 2}, {0, 2}}, 2));
  CHECK(c.lhs <= c.rhs);
  CHECK_THROWS_AS(bezout_check(Ball{3}, {}, UniformCover::singletons(1)), std::invalid_argument);
}

TEST_CASE("constants delegate to the catalog") {
  CHECK(bezout_constant(3, 2, {1, 1}) == doctest::Approx(binomial(2, 1) * 3 * binomial(2, 1) * 3 / 9.0));
  CHECK(corollary_q(3, 2, 1, {1, 1}) > 0.0);
}
