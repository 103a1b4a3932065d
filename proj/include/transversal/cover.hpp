#pragma once

#include <string>
#include <vector>

namespace transversal {

// Sets A_1..A_m over {0..j-1}. Weighted covers satisfy sum_i alpha_i [l in A_i] = 1;
// counting covers (multiplicity s >= 1) put every l in exactly s sets and act as
// weighted covers with alpha_i = 1/s.
struct UniformCover {
  int j = 0;
  std::vector<std::vector<int>> sets;
  std::vector<double> weights;  // empty for counting covers
  int s = 0;                    // 0 = weighted

  static UniformCover weighted(int j, std::vector<std::vector<int>> sets, std::vector<double> alpha);
  static UniformCover counting(int j, std::vector<std::vector<int>> sets, int s);
  static UniformCover singletons(int j);
  static UniformCover partition(int j, std::vector<std::vector<int>> sets);

  bool is_counting() const { return s > 0; }
  std::size_t size() const { return sets.size(); }
  double alpha(std::size_t i) const { return s > 0 ? 1.0 / s : weights[i]; }
  std::string describe() const;  // 1-based, e.g. "{1,2}x0.5 {2,3}x0.5"
};

struct CoverValidation {
  bool valid = false;
  std::vector<double> residuals;  // per ground index; counts minus s for counting covers
  std::string message;
};

// Throws std::invalid_argument for structural errors (empty set, alpha <= 0,
// out-of-range index); coverage defects are reported in the result.
CoverValidation validate_cover(const UniformCover& c);
void require_valid_cover(const UniformCover& c);

}  // namespace transversal
