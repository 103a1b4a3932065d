#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "transversal/geom_core.hpp"

using namespace transversal;

TEST_CASE("determinant agrees with cofactor expansion (property)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 6;
    Mat m = oracle::random_matrix(rng, n, n);
    double ref = oracle::cofactor_det(m);
    CHECK(determinant(m) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
  }
  Mat sing(3, 3);
  sing << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK(std::abs(determinant(sing)) < 1e-12);
  CHECK_THROWS_AS(determinant(Mat::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("wedge norm equals sqrt det Gram (property)") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    int d = 2 + trial % 4;
    int j = 1 + static_cast<int>(rng() % d);
    Mat v = oracle::random_matrix(rng, d, j);
    VectorTuple t;
    for (int a = 0; a < j; ++a) t.push_back(v.col(a));
    CHECK(wedge_norm(t) == doctest::Approx(oracle::gram_wedge(t)).epsilon(1e-10));
    // Hadamard
    double prod = 1.0;
    for (auto& x : t) prod *= x.norm();
    CHECK(wedge_norm(t) <= prod * (1 + 1e-12));
    // square case: |det|
    if (j == d) CHECK(wedge_norm(t) == doctest::Approx(std::abs(oracle::cofactor_det(v))).epsilon(1e-10));
  }
}

TEST_CASE("wedge of repeated vectors is zero to rounding") {
  Vec a(3), b(3);
  a << 0.3, -1.2, 0.7;
  b << 1.1, 0.4, 0.2;
  CHECK(wedge_norm({a, a, b}) < 1e-14);
  CHECK(wedge_norm({a, 2.0 * a}) < 1e-14);
  CHECK_THROWS_AS(wedge_norm({a, b, a, b}), std::invalid_argument);
}

TEST_CASE("rho is one at orthogonality and at most one") {
  Mat q(3, 3);
  q << 2, 0, 0, 0, 0.5, 0, 0, 0, 3;
  VectorTuple t{q.col(0), q.col(1), q.col(2)};
  auto r = rho_factor(t, UniformCover::singletons(3));
  CHECK(r.value == doctest::Approx(1.0));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Mat v = oracle::random_matrix(rng, 3, 3);
    VectorTuple s{v.col(0), v.col(1), v.col(2)};
    CHECK(rho_factor(s, UniformCover::singletons(3)).value <= 1.0 + 1e-12);
  }
  Vec z = Vec::Zero(3);
  auto deg = rho_factor({z, q.col(0), q.col(2)}, UniformCover::partition(3, {{0, 1}, {2}}));
  CHECK(deg.degenerate);
}

TEST_CASE("local identity residual on 10^4 random tuples") {
  std::mt19937_64 rng(14);
  std::vector<UniformCover> covers{
      UniformCover::singletons(3), UniformCover::partition(3, {{0, 1}, {2}}),
      UniformCover::weighted(3, {{0, 1}, {1, 2}, {0, 2}}, {0.5, 0.5, 0.5}),
      UniformCover::counting(3, {{0, 1}, {1, 2}, {0, 2}}, 2)};
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Mat v = oracle::random_matrix(rng, 4, 3);
    VectorTuple t{v.col(0), v.col(1), v.col(2)};
    double p = 1.0 + (trial % 3);
    const auto& c = covers[trial % covers.size()];
    double scale = std::pow(wedge_norm(t), p);
    worst = std::max(worst, local_identity_residual(t, c, p) / std::max(1.0, scale));
  }
  CHECK(worst <= 1e-10);
}
