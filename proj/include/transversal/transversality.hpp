#pragma once

#include <cstdint>
#include <vector>

#include "transversal/cover.hpp"
#include "transversal/hypersurface.hpp"

namespace transversal {

inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

struct QResult {
  double value = 0.0;      // Q_j^p
  double power_sum = 0.0;  // Q_j^p raised to jp: sum over ordered tuples of prod w |wedge|^p
  std::uint64_t tuples = 0;
};

// surfaces.size() == j; the diagonal case repeats one surface.
QResult q_exact(const std::vector<DiscreteHypersurface>& surfaces, int j, double p,
                std::uint64_t budget = kDefaultTupleBudget);
QResult q_exact(const DiscreteHypersurface& s, int j, double p, std::uint64_t budget = kDefaultTupleBudget);

struct QEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  double power_mean = 0.0;  // estimate of Q^{jp}
  double stderr_power = 0.0;
  std::uint64_t samples = 0;
};

QEstimate q_montecarlo(const std::vector<DiscreteHypersurface>& surfaces, int j, double p,
                       std::uint64_t n_samples, std::uint64_t seed);
QEstimate q_montecarlo(const DiscreteHypersurface& s, int j, double p, std::uint64_t n_samples,
                       std::uint64_t seed);

struct FinnerResult {
  double lhs = 0.0;            // Q_j^p
  double classical = 0.0;      // prod_i Q_{k_i}^p(A_i)^{alpha_i k_i / j}
  double sup_rho = 0.0;        // max over the support product
  double refined_factor = 0.0; // R
  double rhs_refined = 0.0;    // classical * R
  double rhs_coarse = 0.0;     // classical * sup_rho^{1/j}
  std::vector<double> block_q; // Q_{k_i}^p(A_i)
  std::uint64_t tuples = 0;
  std::uint64_t degenerate_tuples = 0;
};

FinnerResult finner_check(const std::vector<DiscreteHypersurface>& surfaces, const UniformCover& cover, double p,
                          std::uint64_t budget = kDefaultTupleBudget);

// Double sum sum_ab w_a w_b (1 - <x_a,x_b>^2)^{p/2}; requires unit atoms and probability weights.
double i_p(const DiscreteHypersurface& mu, double p);
double i_p_uniform_closed_form(int d, double p);
double i_p_uniform_lgamma(int d, double p);

// E <X,X'>^{2k}
double moment_norm_sq(const DiscreteHypersurface& mu, int k);
// E <X,X'>^{2k} for the uniform sphere measure.
double moment_norm_sq_uniform(int d, int k);

struct JpResult {
  double value = 0.0;   // I_p
  double bound = 0.0;   // 1 - 1/d
  double gap = 0.0;     // bound - value
  bool holds = false;   // value <= bound + 1e-10
  bool equality_certificate = false;
  double moment_defect = 0.0;  // max |T - I/d|
};

JpResult jp_bound_check(const DiscreteHypersurface& mu, double p);

// Unit-norm and probability checks used by the measure functionals.
void require_probability_on_sphere(const DiscreteHypersurface& mu);

}  // namespace transversal
