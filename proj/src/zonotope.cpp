#include "transversal/zonotope.hpp"

#include <cmath>
#include <stdexcept>

#include "transversal/constants.hpp"
#include "transversal/geom_core.hpp"
#include "transversal/transversality.hpp"

namespace transversal {

double Zonotope::support(const Vec& y) const {
  CompensatedSum s;
  for (const auto& g : generators) s.add(std::abs(g.dot(y)));
  return s.value();
}

Mat Zonotope::matrix() const {
  Mat m(d, static_cast<int>(generators.size()));
  for (std::size_t i = 0; i < generators.size(); ++i) m.col(static_cast<int>(i)) = generators[i];
  return m;
}

Zonotope Zonotope::scaled(double lambda) const {
  Zonotope z{d, {}};
  for (const auto& g : generators) z.generators.push_back(lambda * g);
  return z;
}

Zonotope Zonotope::operator+(const Zonotope& o) const {
  if (o.d != d) throw std::invalid_argument("Minkowski sum of zonotopes in different dimensions");
  Zonotope z = *this;
  z.generators.insert(z.generators.end(), o.generators.begin(), o.generators.end());
  return z;
}

Zonotope segment(const Vec& w) { return Zonotope{static_cast<int>(w.size()), {0.5 * w}}; }

Zonotope projection_body(const DiscreteHypersurface& s) {
  s.validate();
  Zonotope z{s.d, {}};
  for (const auto& a : s.atoms) z.generators.push_back(a.w * a.v);
  return z;
}

double zonotope_volume(const Zonotope& z, std::uint64_t budget) {
  const int d = z.d;
  if (d == 0) return 1.0;
  std::vector<const Vec*> gens;
  for (const auto& g : z.generators) {
    if (g.size() != d) throw std::invalid_argument("generator has wrong dimension");
    if (g.squaredNorm() > 0.0) gens.push_back(&g);
  }
  const int m = static_cast<int>(gens.size());
  if (m < d) return 0.0;
  const double count = binomial(m, d);
  if (count > static_cast<double>(budget))
    throw std::length_error("zonotope subset budget exceeded");
  const auto total = static_cast<std::uint64_t>(count);
  const std::size_t n_chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<CompensatedSum> partial(n_chunks);
  parallel_for_chunks(n_chunks, [&](std::size_t c) {
    std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    std::uint64_t end = std::min<std::uint64_t>(total, begin + kChunk);
    std::vector<int> idx = unrank_combination(m, d, begin);
    std::vector<double> a(static_cast<std::size_t>(d) * d);
    CompensatedSum acc;
    for (std::uint64_t t = begin; t < end; ++t) {
      for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) a[r * d + k] = (*gens[idx[k]])[r];
      acc.add(std::abs(det_inplace(a.data(), d)));
      next_combination(idx, m);
    }
    partial[c] = acc;
  });
  CompensatedSum total_sum;
  for (const auto& p : partial) total_sum.merge(p);
  return std::ldexp(total_sum.value(), d);
}

void require_orthonormal(const Mat& frame, double tol) {
  Mat g = frame.transpose() * frame;
  if ((g - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("frame is not orthonormal");
}

Zonotope project_zonotope(const Zonotope& z, const Mat& frame) {
  if (frame.rows() != z.d) throw std::invalid_argument("frame has wrong ambient dimension");
  require_orthonormal(frame);
  Zonotope out{static_cast<int>(frame.cols()), {}};
  for (const auto& g : z.generators) out.generators.push_back(frame.transpose() * g);
  return out;
}

DiscreteHypersurface project_surface(const DiscreteHypersurface& s, const Mat& frame) {
  if (frame.rows() != s.d) throw std::invalid_argument("frame has wrong ambient dimension");
  require_orthonormal(frame);
  DiscreteHypersurface out;
  out.d = static_cast<int>(frame.cols());
  out.label = s.label + "|E";
  for (const auto& a : s.atoms) out.atoms.push_back({a.w, frame.transpose() * a.v});
  return out;
}

double sigma_plane(const DiscreteHypersurface& s, const Mat& frame) {
  const int k = static_cast<int>(frame.cols());
  Zonotope pz = project_zonotope(projection_body(s), frame);
  return factorial(k) / std::ldexp(1.0, k) * zonotope_volume(pz);
}

double sigma_plane_direct(const DiscreteHypersurface& s, const Mat& frame) {
  const int k = static_cast<int>(frame.cols());
  if (k == 0) return 1.0;
  return q_exact(project_surface(s, frame), k, 1.0).power_sum;
}

int body_dimension(const ConvexBody& k) {
  return std::visit([](const auto& b) { return b.d; }, k);
}

double body_volume(const ConvexBody& k) {
  if (const auto* b = std::get_if<Ball>(&k)) return omega(b->d);
  return zonotope_volume(std::get<Zonotope>(k));
}

namespace {

// |P_{W^perp} K| for W spanned by the columns of w (assumed independent)
double complement_volume(const ConvexBody& body, const Mat& w) {
  const int d = body_dimension(body);
  const int k = static_cast<int>(w.cols());
  if (k == d) return 1.0;
  if (std::holds_alternative<Ball>(body)) return omega(d - k);
  Mat comp = orthogonal_complement(w);
  return zonotope_volume(project_zonotope(std::get<Zonotope>(body), comp));
}

}  // namespace

double mixed_volume(const ConvexBody& body, const std::vector<Zonotope>& entries, std::uint64_t budget) {
  const int d = body_dimension(body);
  const int k = static_cast<int>(entries.size());
  if (k > d) throw std::invalid_argument("more mixed-volume entries than the dimension");
  for (const auto& z : entries)
    if (z.d != d) throw std::invalid_argument("mixed-volume entry has wrong dimension");
  if (k == 0) return body_volume(body);
  double terms = 1.0;
  for (const auto& z : entries) terms *= static_cast<double>(z.generators.size());
  if (terms > static_cast<double>(budget)) throw std::length_error("mixed-volume term budget exceeded");
  if (terms == 0.0) return 0.0;

  // V(K[d-k], [0,w_1], ..., [0,w_k]) = |w_1 ^ ... ^ w_k| |P_{W^perp} K| / (C(d,k) k!), with w_i = 2 g_i
  const double norm = binomial(d, k) * factorial(k);
  std::vector<std::size_t> idx(k, 0);
  CompensatedSum acc;
  Mat w(d, k);
  VectorTuple t(k);
  for (;;) {
    for (int i = 0; i < k; ++i) {
      t[i] = 2.0 * entries[i].generators[idx[i]];
      w.col(i) = t[i];
    }
    double wedge = wedge_norm(t);
    if (wedge > 0.0 && numerical_rank(w) == k) acc.add(wedge * complement_volume(body, w) / norm);
    int i = k - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < entries[i].generators.size()) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return acc.value();
}

double bezout_constant(int d, int sigma_size, const std::vector<int>& block_sizes) {
  return constants::bezout(d, sigma_size, block_sizes);
}

BezoutResult bezout_check(const ConvexBody& body, const std::vector<Zonotope>& zonotopes, const UniformCover& cover,
                          std::uint64_t budget) {
  const int d = body_dimension(body);
  const int n = static_cast<int>(zonotopes.size());
  if (cover.j != n) throw std::invalid_argument("cover ground size differs from the number of zonotopes");
  if (!cover.is_counting()) throw std::invalid_argument("the mixed-volume inequality needs an s-uniform cover");
  require_valid_cover(cover);
  if (n > d) throw std::invalid_argument("sigma exceeds the dimension");
  BezoutResult r;
  r.r = static_cast<int>(cover.size());
  r.s = cover.s;
  if (r.r < r.s) throw std::invalid_argument("an s-uniform cover needs at least s sets");
  std::vector<int> sizes;
  for (const auto& A : cover.sets) sizes.push_back(static_cast<int>(A.size()));
  r.constant = bezout_constant(d, n, sizes);
  r.v_sigma = mixed_volume(body, zonotopes, budget);
  double kvol = body_volume(body);
  r.lhs = std::pow(kvol, r.r - r.s) * std::pow(r.v_sigma, r.s);
  r.rhs = r.constant;
  for (const auto& A : cover.sets) {
    std::vector<Zonotope> sub;
    for (int l : A) sub.push_back(zonotopes[l]);
    double v = mixed_volume(body, sub, budget);
    r.v_blocks.push_back(v);
    r.rhs *= v;
  }
  return r;
}

double corollary_q(int d, int j, int s, const std::vector<int>& block_sizes) {
  return constants::q_corollary(d, j, s, block_sizes);
}

BezoutCorollaryResult bezout_corollary_check(const std::vector<DiscreteHypersurface>& surfaces,
                                             const UniformCover& cover) {
  if (surfaces.empty()) throw std::invalid_argument("no surfaces given");
  const int d = surfaces.front().d;
  const int j = static_cast<int>(surfaces.size());
  if (j > d - 1) throw std::invalid_argument("the q bound needs j <= d - 1");
  BezoutCorollaryResult out;
  std::vector<Zonotope> zs;
  for (const auto& s : surfaces) zs.push_back(projection_body(s));
  out.bezout = bezout_check(Ball{d}, zs, cover);
  std::vector<int> sizes;
  for (const auto& A : cover.sets) sizes.push_back(static_cast<int>(A.size()));
  out.q = corollary_q(d, j, cover.s, sizes);
  out.lhs = q_exact(surfaces, j, 1.0).value;
  double log_rhs = std::log(out.q);
  for (const auto& A : cover.sets) {
    std::vector<DiscreteHypersurface> sub;
    for (int l : A) sub.push_back(surfaces[l]);
    const int di = static_cast<int>(A.size());
    double qb = q_exact(sub, di, 1.0).value;
    log_rhs += (qb > 0.0 ? std::log(qb) : -INFINITY) * di / (static_cast<double>(cover.s) * j);
  }
  out.rhs = std::exp(log_rhs);
  return out;
}

}  // namespace transversal
