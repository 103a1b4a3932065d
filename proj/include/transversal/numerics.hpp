#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace transversal {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x);
  void merge(const CompensatedSum& o);
  double value() const { return sum + comp; }
};

struct MeanVar {
  CompensatedSum s1;
  CompensatedSum s2;
  std::uint64_t n = 0;
  void add(double x) {
    s1.add(x);
    s2.add(x * x);
    ++n;
  }
  void merge(const MeanVar& o) {
    s1.merge(o.s1);
    s2.merge(o.s2);
    n += o.n;
  }
  double mean() const { return n ? s1.value() / static_cast<double>(n) : 0.0; }
  // standard error of the mean
  double stderr_mean() const;
};

// Worker count: TRANSVERSAL_WORKERS if set to a positive integer, else hardware concurrency.
int worker_count();
void set_worker_count(int n);  // 0 restores the default

// Runs body(chunk) for chunk in [0, n_chunks) on the worker pool. Results must be
// written into per-chunk slots by the caller; reduction order is then fixed.
void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body);

inline constexpr std::size_t kChunk = 1u << 14;

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk);
// uniform in [0,1) from 53 random bits
double uniform01(std::mt19937_64& rng);
Vec gaussian_vector(std::mt19937_64& rng, int d);
Vec uniform_sphere(std::mt19937_64& rng, int d);

double binomial(int n, int k);
double factorial(int n);
// volume of the unit Euclidean ball in R^m, omega_0 = 1
double omega(int m);
double omega_lgamma(int m);

// Gauss-Legendre nodes/weights on [-1,1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Calls f(idx) for every size-k subset of {0..n-1} in lexicographic order.
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& f);
std::vector<std::vector<int>> combinations(int n, int k);
// The combination of the given lexicographic rank; next_combination advances in place.
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank);
bool next_combination(std::vector<int>& idx, int n);

// Orthonormal basis of the orthogonal complement of span(cols of W) (rank tol 1e-10).
Mat orthogonal_complement(const Mat& W);
Mat orthonormal_frame(const Mat& W);  // orthonormal basis of span(cols)
int numerical_rank(const Mat& W, double tol = 1e-10);

}  // namespace transversal
