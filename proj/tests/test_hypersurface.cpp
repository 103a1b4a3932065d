#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "transversal/hypersurface.hpp"
#include "transversal/volumes.hpp"

using namespace transversal;

TEST_CASE("validation rejects malformed surfaces") {
  CHECK_THROWS_AS(make_surface(2, {}, "empty"), std::invalid_argument);
  CHECK_THROWS_AS(make_surface(2, {{-1.0, Vec::Ones(2)}}, "neg"), std::invalid_argument);
  CHECK_THROWS_AS(make_surface(2, {{1.0, Vec::Ones(3)}}, "len"), std::invalid_argument);
  Vec nan = Vec::Ones(2);
  nan[1] = std::nan("");
  CHECK_THROWS_AS(make_surface(2, {{1.0, nan}}, "nan"), std::invalid_argument);
  CHECK_NOTHROW(make_surface(2, {{1.0, Vec::Zero(2)}}, "zero vector allowed"));
}

TEST_CASE("generators produce their documented structure") {
  auto cross = make_axis_cross(4, 0.5, false);
  CHECK(cross.size() == 4);
  CHECK(cross.total_mass() == doctest::Approx(2.0));
  CHECK(make_axis_cross(3, 1.0, true).size() == 6);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto iso = random_isotropic(3, 3, seed);
    CHECK(iso.total_mass() == doctest::Approx(1.0));
    CHECK((covariance_matrix(iso) - Mat::Identity(3, 3) / 3.0).norm() < 1e-12);
    auto mu = random_sphere_measure(4, 7, seed);
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& a : mu.atoms) CHECK(a.v.norm() == doctest::Approx(1.0).epsilon(1e-14));
    auto sh = cube_sheared(4, seed);
    Mat v = sh.vectors();
    for (int i = 0; i < 4; ++i) CHECK(v(i, i) == 1.0);
  }
  auto sph = sample_sphere_uniform(3, 20000, 3);
  CHECK((covariance_matrix(sph) - Mat::Identity(3, 3) / 3.0).norm() < 0.02);
  CHECK_THROWS_AS(generate({"no-such", 2}), std::invalid_argument);
  for (const auto& name : generator_names()) {
    GeneratorSpec g{name, 3, 5, 2};
    CHECK(generate(g).d == 3);
  }
}

TEST_CASE("generators are reproducible per seed") {
  CHECK(random_gaussian(3, 5, 9).fingerprint() == random_gaussian(3, 5, 9).fingerprint());
  CHECK(random_gaussian(3, 5, 9).fingerprint() != random_gaussian(3, 5, 10).fingerprint());
  CHECK(random_gaussian(3, 5, 9).fingerprint().size() == 16);
}

TEST_CASE("JSON round trip preserves atoms bit for bit") {
  auto s = random_gaussian(3, 6, 4);
  auto back = surface_from_json(surface_to_json(s));
  CHECK(back.fingerprint() == s.fingerprint());
  auto path = std::filesystem::temp_directory_path() / "transversal_roundtrip.json";
  save_surface(s, path.string());
  CHECK(load_surface(path.string()).fingerprint() == s.fingerprint());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_surface("/nonexistent/file.json"), std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(nlohmann::json{{"d", 2}}), std::invalid_argument);
  CHECK_THROWS_AS(surface_from_json(nlohmann::json::parse(R"({"d":2,"atoms":[{"w":1,"v":[1]}]})")),
                  std::invalid_argument);
}

TEST_CASE("linear images and spanning") {
  auto s = make_axis_cross(3, 1.0, false);
  CHECK(s.spans());
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 1;
  CHECK_FALSE(s.transformed(a).spans());
  CHECK(s.transformed(2.0 * Mat::Identity(3, 3)).atoms[1].v[1] == 2.0);
}

TEST_CASE("covers: validation and 1-based JSON") {
  auto c = cover_from_json(nlohmann::json::parse(R"({"sets":[[1,2],[2,3],[1,3]],"s":2})"), 3);
  CHECK(c.is_counting());
  CHECK(c.sets[0] == std::vector<int>{0, 1});
  CHECK(validate_cover(c).valid);
  CHECK(cover_to_json(c)["sets"][2][1] == 3);
  auto bad = UniformCover::weighted(3, {{0, 1}, {2}}, {0.5, 1.0});
  auto v = validate_cover(bad);
  CHECK_FALSE(v.valid);
  CHECK(v.residuals[0] == doctest::Approx(-0.5));
  CHECK_THROWS_AS(validate_cover(UniformCover::partition(2, {{0, 2}})), std::invalid_argument);
  CHECK_THROWS_AS(validate_cover(UniformCover::partition(2, {{0, 0}, {1}})), std::invalid_argument);
  CHECK(UniformCover::singletons(3).describe() == "{1}x1 {2}x1 {3}x1");
}
