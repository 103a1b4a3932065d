#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "transversal/cover.hpp"
#include "transversal/numerics.hpp"

namespace transversal {

struct Atom {
  double w = 0.0;
  Vec v;
};

struct DiscreteHypersurface {
  int d = 0;
  std::vector<Atom> atoms;
  std::string label;

  void validate() const;  // throws std::invalid_argument
  std::size_t size() const { return atoms.size(); }
  double total_mass() const;
  Mat vectors() const;  // d x n
  // Field transformed by a linear map: v -> A v.
  DiscreteHypersurface transformed(const Mat& A, const std::string& new_label = "") const;
  bool spans() const;
  std::string fingerprint() const;  // FNV-1a over the binary atom data, hex
};

DiscreteHypersurface make_surface(int d, std::vector<Atom> atoms, std::string label);

// Generators
DiscreteHypersurface make_axis_cross(int d, double weight_per_axis, bool signed_cross);
DiscreteHypersurface sample_sphere_uniform(int d, std::size_t n, std::uint64_t seed);
// Gaussian vectors with weights uniform in [0.5, 1.5].
DiscreteHypersurface random_gaussian(int d, std::size_t n, std::uint64_t seed);
// Gaussian-direction unit vectors with random probability weights.
DiscreteHypersurface random_sphere_measure(int d, std::size_t n, std::uint64_t seed);
// Union of k random orthonormal bases, each atom weight 1/(k d): isotropic, T = I/d.
DiscreteHypersurface random_isotropic(int d, std::size_t k, std::uint64_t seed);
// Columns of a unit-diagonal upper-triangular matrix (entries in [-1,1]), weight 1.
DiscreteHypersurface cube_sheared(int d, std::uint64_t seed);

struct GeneratorSpec {
  std::string name;
  int d = 2;
  std::size_t n = 0;  // 0: generator default
  std::uint64_t seed = 1;
  double weight = 1.0;
  bool signed_cross = false;
};
DiscreteHypersurface generate(const GeneratorSpec& spec);
std::vector<std::string> generator_names();

// JSON { "d", "atoms": [ { "w", "v" } ], "label" }
nlohmann::json surface_to_json(const DiscreteHypersurface& s);
DiscreteHypersurface surface_from_json(const nlohmann::json& j);
DiscreteHypersurface load_surface(const std::string& path);
void save_surface(const DiscreteHypersurface& s, const std::string& path);

// Covers in JSON use 1-based indices: { "sets": [[1,2],[3]], "weights": [1,1] } or { "sets", "s" }.
nlohmann::json cover_to_json(const UniformCover& c);
UniformCover cover_from_json(const nlohmann::json& j, int ground_size);

}  // namespace transversal
