#include "transversal/geom_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace transversal {

namespace {

constexpr int kStack = 12;

struct Buffer {
  std::array<double, kStack * kStack> small{};
  std::vector<double> big;
  double* data(int n) {
    if (n <= kStack) return small.data();
    big.assign(static_cast<std::size_t>(n) * n, 0.0);
    return big.data();
  }
};

void check_tuple(const VectorTuple& t) {
  if (t.empty()) throw std::invalid_argument("empty vector tuple");
  const auto d = t.front().size();
  if (d == 0) throw std::invalid_argument("zero-dimensional vectors");
  for (const auto& v : t)
    if (v.size() != d) throw std::invalid_argument("dimension mismatch among vectors");
  if (static_cast<long>(t.size()) > d) throw std::invalid_argument("more vectors than the dimension (j > d)");
}

std::vector<const double*> pointers(const VectorTuple& t) {
  std::vector<const double*> p;
  p.reserve(t.size());
  for (const auto& v : t) p.push_back(v.data());
  return p;
}

}  // namespace

double det_inplace(double* a, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    double best = std::abs(a[c * n + c]);
    for (int r = c + 1; r < n; ++r) {
      double v = std::abs(a[r * n + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    double pv = a[c * n + c];
    det *= pv;
    for (int r = c + 1; r < n; ++r) {
      double f = a[r * n + c] / pv;
      if (f == 0.0) continue;
      for (int k = c + 1; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

double determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a[r * n + c] = m(r, c);
  return det_inplace(a.data(), n);
}

Mat gram_matrix(const VectorTuple& t) {
  check_tuple(t);
  const int j = static_cast<int>(t.size());
  Mat g(j, j);
  for (int a = 0; a < j; ++a)
    for (int b = a; b < j; ++b) g(a, b) = g(b, a) = t[a].dot(t[b]);
  return g;
}

Mat unit_gram_matrix(const VectorTuple& t) {
  check_tuple(t);
  VectorTuple u;
  for (const auto& v : t) {
    double n = v.norm();
    if (n > 0.0) {
      u.push_back(v / n);
    } else {
      Vec e = Vec::Zero(v.size());
      e[0] = 1.0;
      u.push_back(e);
    }
  }
  const int j = static_cast<int>(u.size());
  Mat g(j, j);
  for (int a = 0; a < j; ++a)
    for (int b = a; b < j; ++b) g(a, b) = g(b, a) = (a == b) ? 1.0 : u[a].dot(u[b]);
  return g;
}

namespace {

// prod |R_aa| of a Householder QR of the d x j matrix with columns cols[idx[a]]
double householder_volume(const double* const* cols, const int* idx, int j, int d) {
  Buffer buf;
  double* m = buf.data(std::max(j, d));
  for (int a = 0; a < j; ++a)
    for (int k = 0; k < d; ++k) m[a * d + k] = cols[idx ? idx[a] : a][k];
  double vol = 1.0;
  for (int a = 0; a < j; ++a) {
    double* x = m + a * d;
    double n2 = 0.0;
    for (int k = a; k < d; ++k) n2 += x[k] * x[k];
    if (n2 == 0.0) return 0.0;
    double alpha = x[a] > 0.0 ? -std::sqrt(n2) : std::sqrt(n2);
    vol *= std::abs(alpha);
    // v = x - alpha e_a stored in place; |v|^2 = 2 (n2 - alpha x_a)
    double vnorm2 = 2.0 * (n2 - alpha * x[a]);
    x[a] -= alpha;
    for (int b = a + 1; b < j; ++b) {
      double* y = m + b * d;
      double dot = 0.0;
      for (int k = a; k < d; ++k) dot += x[k] * y[k];
      double f = 2.0 * dot / vnorm2;
      for (int k = a; k < d; ++k) y[k] -= f * x[k];
    }
  }
  return vol;
}

}  // namespace

double wedge_norm_raw(const double* const* vecs, int j, int d) { return householder_volume(vecs, nullptr, j, d); }

double wedge_norm(const VectorTuple& t) {
  check_tuple(t);
  auto p = pointers(t);
  return wedge_norm_raw(p.data(), static_cast<int>(t.size()), static_cast<int>(t.front().size()));
}

RhoResult rho_factor_raw(const double* const* vecs, int j, int d, const UniformCover& cover) {
  // unit directions with e_1 fallback
  std::vector<double> u(static_cast<std::size_t>(j) * d, 0.0);
  std::vector<const double*> up(j);
  for (int a = 0; a < j; ++a) {
    double n2 = 0.0;
    for (int k = 0; k < d; ++k) n2 += vecs[a][k] * vecs[a][k];
    if (n2 > 0.0) {
      double inv = 1.0 / std::sqrt(n2);
      for (int k = 0; k < d; ++k) u[a * d + k] = vecs[a][k] * inv;
    } else {
      u[a * d] = 1.0;
    }
    up[a] = u.data() + a * d;
  }
  double num = householder_volume(up.data(), nullptr, j, d);
  double log_den = 0.0;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const auto& A = cover.sets[i];
    double vol = householder_volume(up.data(), A.data(), static_cast<int>(A.size()), d);
    if (vol * vol < 1e-14) return {0.0, true};
    log_den += cover.alpha(i) * std::log(vol);
  }
  if (num <= 0.0) return {0.0, false};
  return {std::exp(std::log(num) - log_den), false};
}

RhoResult rho_factor(const VectorTuple& t, const UniformCover& cover) {
  check_tuple(t);
  if (cover.j != static_cast<int>(t.size()))
    throw std::invalid_argument("cover ground size differs from the tuple length");
  require_valid_cover(cover);
  auto p = pointers(t);
  return rho_factor_raw(p.data(), static_cast<int>(t.size()), static_cast<int>(t.front().size()), cover);
}

double local_identity_residual(const VectorTuple& t, const UniformCover& cover, double p) {
  RhoResult rho = rho_factor(t, cover);
  double full = wedge_norm(t);
  double lhs = std::pow(full, p);
  double rhs = std::pow(rho.value, p);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    VectorTuple sub;
    for (int n : cover.sets[i]) sub.push_back(t[n]);
    rhs *= std::pow(wedge_norm(sub), cover.alpha(i) * p);
  }
  return std::abs(lhs - rhs);
}

}  // namespace transversal
