#include "transversal/numerics.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace transversal {

void CompensatedSum::add(double x) {
  double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}

void CompensatedSum::merge(const CompensatedSum& o) {
  add(o.sum);
  add(o.comp);
}

double MeanVar::stderr_mean() const {
  if (n < 2) return 0.0;
  double nn = static_cast<double>(n);
  double m = s1.value() / nn;
  double var = (s2.value() / nn - m * m) * nn / (nn - 1.0);
  if (var < 0) var = 0;
  return std::sqrt(var / nn);
}

namespace {
std::atomic<int> g_workers{0};
}

int worker_count() {
  int forced = g_workers.load();
  if (forced > 0) return forced;
  if (const char* env = std::getenv("TRANSVERSAL_WORKERS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void set_worker_count(int n) { g_workers.store(n > 0 ? n : 0); }

void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& body) {
  if (n_chunks == 0) return;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n_chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= n_chunks || failed.load()) return;
      try {
        body(c);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (chunk * 0xd1b54a32d192ed03ULL + 1)));
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Vec gaussian_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = nd(rng);
  return v;
}

Vec uniform_sphere(std::mt19937_64& rng, int d) {
  for (;;) {
    Vec v = gaussian_vector(rng, d);
    double n = v.norm();
    if (n > 1e-300) return v / n;
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double omega(int m) { return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0); }

double omega_lgamma(int m) {
  return std::exp(0.5 * m * std::log(std::numbers::pi) - std::lgamma(m / 2.0 + 1.0));
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    // recompute derivative at converged z
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (z * p1 - p2) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  for_each_combination(n, k, [&](const std::vector<int>& c) { out.push_back(c); });
  return out;
}

std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
  std::vector<int> idx;
  int x = 0;
  for (int slot = 0; slot < k; ++slot) {
    for (;; ++x) {
      auto cnt = static_cast<std::uint64_t>(binomial(n - x - 1, k - slot - 1));
      if (rank < cnt) break;
      rank -= cnt;
    }
    idx.push_back(x++);
  }
  return idx;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

int numerical_rank(const Mat& W, double tol) {
  if (W.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(W);
  auto s = svd.singularValues();
  double scale = std::max(1.0, s.size() ? s[0] : 0.0);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol * scale) ++r;
  return r;
}

Mat orthonormal_frame(const Mat& W) {
  const int d = static_cast<int>(W.rows());
  if (W.cols() == 0) return Mat(d, 0);
  Eigen::JacobiSVD<Mat> svd(W, Eigen::ComputeFullU);
  auto s = svd.singularValues();
  double scale = std::max(1.0, s[0]);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > 1e-10 * scale) ++r;
  return svd.matrixU().leftCols(r);
}

Mat orthogonal_complement(const Mat& W) {
  const int d = static_cast<int>(W.rows());
  if (W.cols() == 0) return Mat::Identity(d, d);
  Eigen::JacobiSVD<Mat> svd(W, Eigen::ComputeFullU);
  auto s = svd.singularValues();
  double scale = std::max(1.0, s[0]);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > 1e-10 * scale) ++r;
  return svd.matrixU().rightCols(d - r);
}

}  // namespace transversal
