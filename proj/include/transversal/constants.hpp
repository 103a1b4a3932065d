#pragma once

#include <string>
#include <vector>

#include "transversal/numerics.hpp"

namespace transversal::constants {

// Block sizes d_i of a cover and (for weighted covers) the weights p_i.
using Sizes = std::vector<int>;
using Weights = std::vector<double>;

double b_d(int d, const Sizes& sizes);  // (d! / (2^d prod d_i!))^{1/d}
double b_d_lgamma(int d, const Sizes& sizes);

double c_d(int d, const Sizes& sizes);  // (1/(2 sqrt d)) (d! / prod sqrt(d_i!))^{1/d}
double c_d_lgamma(int d, const Sizes& sizes);

// q in the Q-form of the mixed-volume inequality
double q_corollary(int d, int j, int s, const Sizes& sizes);
double q_corollary_lgamma(int d, int j, int s, const Sizes& sizes);

double bezout(int d, int sigma_size, const Sizes& sizes);
double bezout_lgamma(int d, int sigma_size, const Sizes& sizes);

double C_ell(int d, const Sizes& sizes, const Weights& p);  // omega_d / prod omega_{d_j}^{p_j}
double C_ell_lgamma(int d, const Sizes& sizes, const Weights& p);
double c_ell(int d, const Sizes& sizes, const Weights& p);  // omega_d / d^{d/2} prod (d_j^{d_j/2}/omega_{d_j})^{p_j}
double c_ell_lgamma(int d, const Sizes& sizes, const Weights& p);

double c_dp(int d, double p);  // ((d+p)/p)(omega_{d-1}/omega_d) G((p+1)/2) G((d+1)/2) / G((d+p+1)/2)
double c_dp_lgamma(int d, double p);
// int_{S^{d-1}} |<theta, e>|^p dsigma(theta) for the normalized surface measure
double sphere_moment(int d, double p);
double sphere_moment_lgamma(int d, double p);

double c0(int d, double p);  // G(d/p+1)^{1/d} / (d^{1/p} 2 G(1/p+1))
double c0_lgamma(int d, double p);

double reverse_lw(int d, const Sizes& sizes);  // d^{d/2} / prod sqrt(d_j!)
double reverse_lw_lgamma(int d, const Sizes& sizes);

double mahler(int d);  // 4^d / d!
double mahler_lgamma(int d);

double q_inf_upper(int d);  // (d^d / d!)^{1/(2d)}
double q_inf_upper_lgamma(int d);

double vis2_derived(int d);  // ((d!)^{1/2} omega_d)^{1/d}
double vis2_derived_lgamma(int d);
double vis2_printed(int d);  // (sqrt(d! omega_d))^{1/d}
double vis2_printed_lgamma(int d);

// prod_i |wedge_{k in sigma_i} w_k|^{p_i} / |wedge w|; basis as columns, sets 0-based
double bl2(const Mat& basis, const std::vector<std::vector<int>>& sets, const Weights& p);

struct Entry {
  std::string id;
  std::string formula;
  double direct = 0.0;
  double lgamma_route = 0.0;
};

// Every gamma-based constant at representative parameters for dimension d.
std::vector<Entry> catalog(int d);

}  // namespace transversal::constants
