#include "transversal/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "transversal/geom_core.hpp"
#include "transversal/transversality.hpp"

namespace transversal {

double EllipsoidBody::volume() const { return omega(d) / std::sqrt(determinant(T)); }

EllipsoidBody make_ellipsoid(const Mat& T) {
  if (T.rows() != T.cols() || T.rows() == 0) throw std::invalid_argument("quadratic form must be square");
  if ((T - T.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, T.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("quadratic form is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(T);
  if (!(es.eigenvalues()[0] > 0.0)) throw std::invalid_argument("quadratic form is not positive definite");
  return EllipsoidBody{static_cast<int>(T.rows()), T};
}

Mat covariance_matrix(const DiscreteHypersurface& s) {
  s.validate();
  Mat t = Mat::Zero(s.d, s.d);
  for (const auto& a : s.atoms) t.noalias() += a.w * a.v * a.v.transpose();
  return t;
}

EllipsoidBody covariance(const DiscreteHypersurface& s) {
  Mat t = covariance_matrix(s);
  Eigen::SelfAdjointEigenSolver<Mat> es(t);
  if (es.eigenvalues()[0] <= 1e-12 * t.trace()) throw std::invalid_argument("atoms do not span R^d");
  return EllipsoidBody{s.d, t};
}

double kp_norm(const DiscreteHypersurface& s, double p, const Vec& y) {
  if (p < 1.0) throw std::invalid_argument("p must be at least 1");
  if (y.size() != s.d) throw std::invalid_argument("dimension mismatch");
  CompensatedSum acc;
  for (const auto& a : s.atoms) {
    double t = std::abs(a.v.dot(y));
    acc.add(a.w * (p == 1.0 ? t : p == 2.0 ? t * t : std::pow(t, p)));
  }
  double v = acc.value();
  return p == 1.0 ? v : p == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / p);
}

namespace {

std::vector<Vec> nonzero_generators(const Zonotope& z) {
  std::vector<Vec> g;
  for (const auto& x : z.generators)
    if (x.norm() > 0.0) g.push_back(x);
  return g;
}

bool contains_close(const std::vector<Vec>& pts, const Vec& v, double tol) {
  for (const auto& q : pts)
    if ((q - v).norm() <= tol * std::max(1.0, v.norm())) return true;
  return false;
}

Vec cross3(const Vec& a, const Vec& b) {
  Vec c(3);
  c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
  return c;
}

}  // namespace

double zonotope_polar_volume(const Zonotope& z) {
  const int d = z.d;
  if (d < 1 || d > 3) throw std::invalid_argument("exact polar volume needs d <= 3");
  auto g = nonzero_generators(z);
  const int m = static_cast<int>(g.size());
  if (m > 16) throw std::length_error("too many generators for facet enumeration");
  if (numerical_rank(z.matrix()) < d) throw std::invalid_argument("zonotope is not full-dimensional");
  if (d == 1) return 2.0 / z.support(Vec::Ones(1));

  // vertices of Z^o: n / h_Z(n) for facet normals n of Z
  std::vector<Vec> verts;
  auto add_normal = [&](const Vec& n) {
    if (n.norm() <= 1e-12 * std::max(1.0, n.norm())) return;
    for (int sgn : {1, -1}) {
      Vec v = sgn * n / z.support(n);
      if (!contains_close(verts, v, 1e-10)) verts.push_back(v);
    }
  };
  for (int a = 0; a < m; ++a) {
    if (d == 2) {
      Vec n(2);
      n << -g[a][1], g[a][0];
      add_normal(n);
      continue;
    }
    for (int b = a + 1; b < m; ++b) {
      Vec n = cross3(g[a], g[b]);
      if (n.norm() > 1e-12 * g[a].norm() * g[b].norm()) add_normal(n);
    }
  }

  // facets of Z^o: { y : <s, y> = 1 } for vertices s = sum eps_i g_i of Z
  std::set<std::vector<int>> seen;
  CompensatedSum vol;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    Vec s = Vec::Zero(d);
    for (int i = 0; i < m; ++i) s += ((mask >> i) & 1u) ? g[i] : Vec(-g[i]);
    std::vector<int> on;
    for (std::size_t k = 0; k < verts.size(); ++k)
      if (s.dot(verts[k]) >= 1.0 - 1e-9) on.push_back(static_cast<int>(k));
    if (static_cast<int>(on.size()) < d || !seen.insert(on).second) continue;
    if (d == 2) {
      if (on.size() != 2) continue;
      const Vec& a = verts[on[0]];
      const Vec& b = verts[on[1]];
      vol.add(std::abs(a[0] * b[1] - a[1] * b[0]) / 2.0);
      continue;
    }
    Vec c = Vec::Zero(3);
    for (int k : on) c += verts[k];
    c /= static_cast<double>(on.size());
    Vec e1 = verts[on[0]] - c;
    Vec nrm = s.normalized();
    Vec e2 = cross3(nrm, e1);
    if (e1.norm() == 0.0 || e2.norm() == 0.0) continue;
    std::vector<std::pair<double, int>> ang;
    for (int k : on) {
      Vec r = verts[k] - c;
      ang.emplace_back(std::atan2(r.dot(e2), r.dot(e1)), k);
    }
    std::sort(ang.begin(), ang.end());
    CompensatedSum facet;
    for (std::size_t i = 0; i < ang.size(); ++i) {
      const Vec& p = verts[ang[i].second];
      const Vec& q = verts[ang[(i + 1) % ang.size()].second];
      facet.add(std::abs(c.dot(cross3(p, q))) / 6.0);
    }
    if (facet.value() > 0.0) vol.add(facet.value());
  }
  return vol.value();
}

bool kp_exact_available(const DiscreteHypersurface& s, double p) {
  if (p == 2.0) return true;
  if (p != 1.0 || s.d > 3) return false;
  int nz = 0;
  for (const auto& a : s.atoms)
    if (a.v.norm() > 0.0) ++nz;
  return nz <= 8;
}

KpVolume kp_volume(const DiscreteHypersurface& s, double p, KpMethod method, std::uint64_t n_samples,
                   std::uint64_t seed) {
  if (p < 1.0) throw std::invalid_argument("p must be at least 1");
  s.validate();
  if (!s.spans()) throw std::invalid_argument("atoms do not span R^d");
  KpVolume out;
  if (method == KpMethod::Exact && !kp_exact_available(s, p))
    throw std::invalid_argument("no exact volume method for this p and instance size");
  if (method != KpMethod::RadialMC && kp_exact_available(s, p)) {
    if (p == 2.0) {
      out.value = covariance(s).volume();
      out.method = "ellipsoid";
    } else {
      out.value = zonotope_polar_volume(projection_body(s));
      out.method = "exact_polar";
    }
    return out;
  }
  if (n_samples < 100) throw std::invalid_argument("Monte Carlo needs at least 100 samples");
  const int d = s.d;
  const std::size_t n_chunks = static_cast<std::size_t>((n_samples + kChunk - 1) / kChunk);
  std::vector<MeanVar> partial(n_chunks);
  Mat vt = s.vectors().transpose();  // n x d
  Vec w(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) w[static_cast<int>(i)] = s.atoms[i].w;
  parallel_for_chunks(n_chunks, [&](std::size_t c) {
    auto rng = chunk_rng(seed, c);
    std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    std::uint64_t end = std::min<std::uint64_t>(n_samples, begin + kChunk);
    MeanVar mv;
    Vec proj;
    for (std::uint64_t t = begin; t < end; ++t) {
      Vec theta = uniform_sphere(rng, d);
      proj.noalias() = vt * theta;
      double acc = 0.0;
      for (int i = 0; i < proj.size(); ++i) {
        double x = std::abs(proj[i]);
        acc += w[i] * (p == 1.0 ? x : p == 2.0 ? x * x : std::pow(x, p));
      }
      if (!(acc > 0.0)) throw std::runtime_error("degenerate norm: a direction has norm 0");
      // ||theta||^{-d} = acc^{-d/p}
      mv.add(std::pow(acc, -static_cast<double>(d) / p));
    }
    partial[c] = mv;
  });
  MeanVar total;
  for (const auto& m : partial) total.merge(m);
  out.value = omega(d) * total.mean();
  out.stderr_value = omega(d) * total.stderr_mean();
  out.method = "radial_mc";
  out.samples = n_samples;
  return out;
}

VisResult vis_p(const DiscreteHypersurface& s, double p, KpMethod method, std::uint64_t n_samples,
                std::uint64_t seed) {
  VisResult r;
  r.volume = kp_volume(s, p, method, n_samples, seed);
  const double d = s.d;
  r.value = std::pow(r.volume.value, -1.0 / d);
  r.stderr_value = r.value / (d * r.volume.value) * r.volume.stderr_value;
  return r;
}

int distinct_directions(const DiscreteHypersurface& s) {
  std::vector<Vec> dirs;
  for (const auto& a : s.atoms) {
    double n = a.v.norm();
    if (n == 0.0) continue;
    Vec u = a.v / n;
    bool found = false;
    for (const auto& q : dirs)
      if (std::abs(std::abs(q.dot(u)) - 1.0) <= 1e-10) found = true;
    if (!found) dirs.push_back(u);
  }
  return static_cast<int>(dirs.size());
}

SantaloResult santalo_check(const DiscreteHypersurface& s, std::uint64_t n_samples, std::uint64_t seed) {
  s.validate();
  const int d = s.d;
  SantaloResult r;
  r.lhs = q_exact(s, d, 1.0).power_sum;
  KpVolume k = kp_volume(s, 1.0, KpMethod::Auto, n_samples, seed);
  r.method = k.method;
  const double two_d = std::ldexp(1.0, d);
  r.rhs = two_d / k.value;
  r.rhs_error = two_d * k.stderr_value / (k.value * k.value);
  r.parallelotope = distinct_directions(s) == d;
  return r;
}

MahlerResult mahler_product(const DiscreteHypersurface& s, std::uint64_t n_samples, std::uint64_t seed) {
  MahlerResult r;
  const int d = s.d;
  double pi_vol = zonotope_volume(projection_body(s));
  KpVolume k = kp_volume(s, 1.0, KpMethod::Auto, n_samples, seed);
  r.value = pi_vol * k.value;
  r.stderr_value = pi_vol * k.stderr_value;
  r.bound = std::pow(4.0, d) / factorial(d);
  r.parallelotope = distinct_directions(s) == d;
  return r;
}

double sigma2_plane(const DiscreteHypersurface& s, const Mat& frame) {
  if (frame.rows() != s.d) throw std::invalid_argument("frame has wrong ambient dimension");
  require_orthonormal(frame);
  const int k = static_cast<int>(frame.cols());
  Mat c = frame.transpose() * covariance_matrix(s) * frame;
  double det = k == 0 ? 1.0 : determinant(c);
  return std::sqrt(std::max(0.0, factorial(k) * det));
}

double sigma2_plane_direct(const DiscreteHypersurface& s, const Mat& frame) {
  const int k = static_cast<int>(frame.cols());
  if (k == 0) return 1.0;
  return std::sqrt(q_exact(project_surface(s, frame), k, 2.0).power_sum);
}

}  // namespace transversal
