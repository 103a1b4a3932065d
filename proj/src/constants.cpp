#include "transversal/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "transversal/geom_core.hpp"

namespace transversal::constants {

namespace {

double lfact(double n) { return std::lgamma(n + 1.0); }
double lomega(int m) { return 0.5 * m * std::log(std::numbers::pi) - std::lgamma(m / 2.0 + 1.0); }
double lbinom(int n, int k) { return lfact(n) - lfact(k) - lfact(n - k); }

void check_weights(const Sizes& sizes, const Weights& p) {
  if (sizes.size() != p.size()) throw std::invalid_argument("sizes and weights differ in length");
}

}  // namespace

double b_d(int d, const Sizes& sizes) {
  double den = std::ldexp(1.0, d);
  for (int k : sizes) den *= factorial(k);
  return std::pow(factorial(d) / den, 1.0 / d);
}

double b_d_lgamma(int d, const Sizes& sizes) {
  double l = lfact(d) - d * std::log(2.0);
  for (int k : sizes) l -= lfact(k);
  return std::exp(l / d);
}

double c_d(int d, const Sizes& sizes) {
  double den = 1.0;
  for (int k : sizes) den *= std::sqrt(factorial(k));
  return std::pow(factorial(d) / den, 1.0 / d) / (2.0 * std::sqrt(static_cast<double>(d)));
}

double c_d_lgamma(int d, const Sizes& sizes) {
  double l = lfact(d);
  for (int k : sizes) l -= 0.5 * lfact(k);
  return std::exp(l / d - std::log(2.0) - 0.5 * std::log(static_cast<double>(d)));
}

double q_corollary(int d, int j, int s, const Sizes& sizes) {
  const double r = static_cast<double>(sizes.size());
  const double sj = static_cast<double>(s) * j;
  double prod = 1.0;
  for (int di : sizes) prod *= binomial(j, di) * omega(d - di) / (binomial(d, di) * factorial(di));
  return std::pow(omega(d), -r / sj) *
         std::pow(factorial(d) * omega(d) / (factorial(d - j) * omega(d - j)), 1.0 / j) * std::pow(prod, 1.0 / sj);
}

double q_corollary_lgamma(int d, int j, int s, const Sizes& sizes) {
  const double r = static_cast<double>(sizes.size());
  const double sj = static_cast<double>(s) * j;
  double lp = 0.0;
  for (int di : sizes) lp += lbinom(j, di) + lomega(d - di) - lbinom(d, di) - lfact(di);
  return std::exp(-r / sj * lomega(d) + (lfact(d) + lomega(d) - lfact(d - j) - lomega(d - j)) / j + lp / sj);
}

double bezout(int d, int sigma_size, const Sizes& sizes) {
  double c = 1.0;
  for (int di : sizes) c *= binomial(d - di, d - sigma_size) * binomial(d, di);
  return c / std::pow(binomial(d, sigma_size), static_cast<double>(sizes.size()));
}

double bezout_lgamma(int d, int sigma_size, const Sizes& sizes) {
  double l = 0.0;
  for (int di : sizes) l += lbinom(d - di, d - sigma_size) + lbinom(d, di) - lbinom(d, sigma_size);
  return std::exp(l);
}

double C_ell(int d, const Sizes& sizes, const Weights& p) {
  check_weights(sizes, p);
  double den = 1.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) den *= std::pow(omega(sizes[i]), p[i]);
  return omega(d) / den;
}

double C_ell_lgamma(int d, const Sizes& sizes, const Weights& p) {
  check_weights(sizes, p);
  double l = lomega(d);
  for (std::size_t i = 0; i < sizes.size(); ++i) l -= p[i] * lomega(sizes[i]);
  return std::exp(l);
}

double c_ell(int d, const Sizes& sizes, const Weights& p) {
  check_weights(sizes, p);
  double prod = 1.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double dj = sizes[i];
    prod *= std::pow(std::pow(dj, dj / 2.0) / omega(sizes[i]), p[i]);
  }
  return omega(d) / std::pow(static_cast<double>(d), d / 2.0) * prod;
}

double c_ell_lgamma(int d, const Sizes& sizes, const Weights& p) {
  check_weights(sizes, p);
  double l = lomega(d) - 0.5 * d * std::log(static_cast<double>(d));
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double dj = sizes[i];
    l += p[i] * (0.5 * dj * std::log(dj) - lomega(sizes[i]));
  }
  return std::exp(l);
}

double c_dp(int d, double p) {
  return (d + p) / p * omega(d - 1) / omega(d) * std::tgamma((p + 1) / 2.0) * std::tgamma((d + 1) / 2.0) /
         std::tgamma((d + p + 1) / 2.0);
}

double c_dp_lgamma(int d, double p) {
  return std::exp(std::log((d + p) / p) + lomega(d - 1) - lomega(d) + std::lgamma((p + 1) / 2.0) +
                  std::lgamma((d + 1) / 2.0) - std::lgamma((d + p + 1) / 2.0));
}

double sphere_moment(int d, double p) {
  return std::tgamma(d / 2.0) * std::tgamma((p + 1) / 2.0) /
         (std::sqrt(std::numbers::pi) * std::tgamma((d + p) / 2.0));
}

double sphere_moment_lgamma(int d, double p) {
  return std::exp(std::lgamma(d / 2.0) + std::lgamma((p + 1) / 2.0) - 0.5 * std::log(std::numbers::pi) -
                  std::lgamma((d + p) / 2.0));
}

double c0(int d, double p) {
  return std::pow(std::tgamma(d / p + 1.0), 1.0 / d) /
         (std::pow(static_cast<double>(d), 1.0 / p) * 2.0 * std::tgamma(1.0 / p + 1.0));
}

double c0_lgamma(int d, double p) {
  return std::exp(std::lgamma(d / p + 1.0) / d - std::log(static_cast<double>(d)) / p - std::log(2.0) -
                  std::lgamma(1.0 / p + 1.0));
}

double reverse_lw(int d, const Sizes& sizes) {
  double den = 1.0;
  for (int k : sizes) den *= std::sqrt(factorial(k));
  return std::pow(std::sqrt(static_cast<double>(d)), d) / den;
}

double reverse_lw_lgamma(int d, const Sizes& sizes) {
  double l = 0.5 * d * std::log(static_cast<double>(d));
  for (int k : sizes) l -= 0.5 * lfact(k);
  return std::exp(l);
}

double mahler(int d) { return std::pow(4.0, d) / factorial(d); }
double mahler_lgamma(int d) { return std::exp(d * std::log(4.0) - lfact(d)); }

double q_inf_upper(int d) { return std::pow(std::pow(static_cast<double>(d), d) / factorial(d), 1.0 / (2.0 * d)); }
double q_inf_upper_lgamma(int d) { return std::exp((d * std::log(static_cast<double>(d)) - lfact(d)) / (2.0 * d)); }

double vis2_derived(int d) { return std::pow(std::sqrt(factorial(d)) * omega(d), 1.0 / d); }
double vis2_derived_lgamma(int d) { return std::exp((0.5 * lfact(d) + lomega(d)) / d); }
double vis2_printed(int d) { return std::pow(std::sqrt(factorial(d) * omega(d)), 1.0 / d); }
double vis2_printed_lgamma(int d) { return std::exp(0.5 * (lfact(d) + lomega(d)) / d); }

double bl2(const Mat& basis, const std::vector<std::vector<int>>& sets, const Weights& p) {
  if (sets.size() != p.size()) throw std::invalid_argument("sets and weights differ in length");
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d) throw std::invalid_argument("basis must be square");
  double full = std::abs(determinant(basis));
  if (!(full > 0.0)) throw std::invalid_argument("basis is singular");
  double num = 1.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    VectorTuple t;
    for (int k : sets[i]) t.push_back(basis.col(k));
    num *= std::pow(wedge_norm(t), p[i]);
  }
  return num / full;
}

std::vector<Entry> catalog(int d) {
  if (d < 2) throw std::invalid_argument("catalog needs d >= 2");
  std::vector<Entry> out;
  Sizes split{1, d - 1};
  Sizes singles(d, 1);
  Weights ones2{1.0, 1.0};
  Weights onesd(d, 1.0);
  out.push_back({"omega_d", "pi^{d/2}/G(d/2+1)", omega(d), omega_lgamma(d)});
  out.push_back({"b_d", "(d!/(2^d prod d_i!))^{1/d}, blocks {1,d-1}", b_d(d, split), b_d_lgamma(d, split)});
  out.push_back({"c_d", "(1/(2 sqrt d))(d!/prod sqrt(d_i!))^{1/d}, blocks {1,d-1}", c_d(d, split),
                 c_d_lgamma(d, split)});
  out.push_back({"q", "q, j=d-1, singletons", q_corollary(d, d - 1, 1, Sizes(d - 1, 1)),
                 q_corollary_lgamma(d, d - 1, 1, Sizes(d - 1, 1))});
  out.push_back({"bezout", "prod C(d-d_i,d-k)C(d,d_i)/C(d,k)^r, k=2, singletons", bezout(d, 2, {1, 1}),
                 bezout_lgamma(d, 2, {1, 1})});
  out.push_back({"C_ell", "omega_d/prod omega_{d_j}^{p_j}, blocks {1,d-1}", C_ell(d, split, ones2),
                 C_ell_lgamma(d, split, ones2)});
  out.push_back({"c_ell", "omega_d/d^{d/2} prod (d_j^{d_j/2}/omega_{d_j})^{p_j}, singletons",
                 c_ell(d, singles, onesd), c_ell_lgamma(d, singles, onesd)});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    std::string tag = "p=" + std::to_string(p).substr(0, 3);
    out.push_back({"c_dp", "moment-volume constant, " + tag, c_dp(d, p), c_dp_lgamma(d, p)});
    out.push_back({"sphere_moment", "E|<theta,e>|^p, " + tag, sphere_moment(d, p), sphere_moment_lgamma(d, p)});
    out.push_back({"c0", "G(d/p+1)^{1/d}/(d^{1/p} 2 G(1/p+1)), " + tag, c0(d, p), c0_lgamma(d, p)});
  }
  out.push_back({"reverse_lw", "d^{d/2}/prod sqrt(d_j!), blocks {1,d-1}", reverse_lw(d, split),
                 reverse_lw_lgamma(d, split)});
  out.push_back({"mahler", "4^d/d!", mahler(d), mahler_lgamma(d)});
  out.push_back({"q_inf_upper", "(d^d/d!)^{1/(2d)}", q_inf_upper(d), q_inf_upper_lgamma(d)});
  out.push_back({"vis2_derived", "((d!)^{1/2} omega_d)^{1/d}", vis2_derived(d), vis2_derived_lgamma(d)});
  out.push_back({"vis2_printed", "(sqrt(d! omega_d))^{1/d}", vis2_printed(d), vis2_printed_lgamma(d)});
  return out;
}

}  // namespace transversal::constants
