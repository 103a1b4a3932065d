#include "transversal/transversality.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "transversal/geom_core.hpp"
#include "tuples.hpp"

namespace transversal {

using detail::TupleSpace;

namespace {

double gram_det_raw(const double* const* vecs, int j, int d) {
  double g[144];
  std::vector<double> big;
  double* a = g;
  if (j > 12) {
    big.resize(static_cast<std::size_t>(j) * j);
    a = big.data();
  }
  for (int x = 0; x < j; ++x)
    for (int y = x; y < j; ++y) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += vecs[x][k] * vecs[y][k];
      a[x * j + y] = a[y * j + x] = s;
    }
  double det = det_inplace(a, j);
  return det > 0.0 ? det : 0.0;
}

// |v_1 ^ ... ^ v_j|^p from the Gram determinant
double wedge_pow(const double* const* vecs, int j, int d, double p) {
  double det = gram_det_raw(vecs, j, d);
  if (det <= 0.0) return 0.0;
  if (p == 2.0) return det;
  if (p == 1.0) return std::sqrt(det);
  return std::pow(det, 0.5 * p);
}

void check_jp(int j, int d, double p, std::size_t count) {
  if (j < 1) throw std::invalid_argument("j must be at least 1");
  if (j > d) throw std::invalid_argument("j exceeds the dimension");
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (count != static_cast<std::size_t>(j)) throw std::invalid_argument("need exactly j surfaces");
}

}  // namespace

QResult q_exact(const std::vector<DiscreteHypersurface>& surfaces, int j, double p, std::uint64_t budget) {
  if (surfaces.empty()) throw std::invalid_argument("no surfaces given");
  check_jp(j, surfaces.front().d, p, surfaces.size());
  TupleSpace space(surfaces, budget);
  std::vector<CompensatedSum> partial(space.chunks());
  parallel_for_chunks(space.chunks(), [&](std::size_t c) {
    CompensatedSum acc;
    space.visit_chunk(c, [&](const double* const* v, double w, const auto&) {
      acc.add(w * wedge_pow(v, j, space.d(), p));
    });
    partial[c] = acc;
  });
  CompensatedSum total;
  for (const auto& s : partial) total.merge(s);
  QResult r;
  r.power_sum = total.value();
  r.value = r.power_sum > 0.0 ? std::pow(r.power_sum, 1.0 / (j * p)) : 0.0;
  r.tuples = space.total();
  return r;
}

QResult q_exact(const DiscreteHypersurface& s, int j, double p, std::uint64_t budget) {
  return q_exact(std::vector<DiscreteHypersurface>(static_cast<std::size_t>(std::max(j, 0)), s), j, p, budget);
}

QEstimate q_montecarlo(const std::vector<DiscreteHypersurface>& surfaces, int j, double p,
                       std::uint64_t n_samples, std::uint64_t seed) {
  if (surfaces.empty()) throw std::invalid_argument("no surfaces given");
  const int d = surfaces.front().d;
  check_jp(j, d, p, surfaces.size());
  if (n_samples < 100) throw std::invalid_argument("Monte Carlo needs at least 100 samples");
  std::vector<detail::FlatSurface> flat;
  std::vector<std::vector<double>> cdf;
  double mass = 1.0;
  for (const auto& s : surfaces) {
    s.validate();
    if (s.d != d) throw std::invalid_argument("surfaces have different dimensions");
    flat.push_back(detail::flatten(s));
    std::vector<double> c;
    CompensatedSum acc;
    for (const auto& a : s.atoms) {
      acc.add(a.w);
      c.push_back(acc.value());
    }
    mass *= acc.value();
    for (auto& x : c) x /= acc.value();
    c.back() = 1.0;
    cdf.push_back(std::move(c));
  }
  const std::size_t n_chunks = static_cast<std::size_t>((n_samples + kChunk - 1) / kChunk);
  std::vector<MeanVar> partial(n_chunks);
  parallel_for_chunks(n_chunks, [&](std::size_t c) {
    auto rng = chunk_rng(seed, c);
    std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    std::uint64_t end = std::min<std::uint64_t>(n_samples, begin + kChunk);
    std::vector<const double*> v(j);
    MeanVar mv;
    for (std::uint64_t t = begin; t < end; ++t) {
      for (int i = 0; i < j; ++i) {
        double u = uniform01(rng);
        auto it = std::upper_bound(cdf[i].begin(), cdf[i].end(), u);
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf[i].begin()), flat[i].n() - 1);
        v[i] = flat[i].vec(k);
      }
      mv.add(mass * wedge_pow(v.data(), j, d, p));
    }
    partial[c] = mv;
  });
  MeanVar total;
  for (const auto& m : partial) total.merge(m);
  QEstimate e;
  e.samples = n_samples;
  e.power_mean = total.mean();
  e.stderr_power = total.stderr_mean();
  const double r = 1.0 / (j * p);
  if (e.power_mean > 0.0) {
    e.value = std::pow(e.power_mean, r);
    e.stderr_value = r * std::pow(e.power_mean, r - 1.0) * e.stderr_power;
  }
  return e;
}

QEstimate q_montecarlo(const DiscreteHypersurface& s, int j, double p, std::uint64_t n_samples,
                       std::uint64_t seed) {
  return q_montecarlo(std::vector<DiscreteHypersurface>(static_cast<std::size_t>(std::max(j, 0)), s), j, p,
                      n_samples, seed);
}

FinnerResult finner_check(const std::vector<DiscreteHypersurface>& surfaces, const UniformCover& cover, double p,
                          std::uint64_t budget) {
  if (surfaces.empty()) throw std::invalid_argument("no surfaces given");
  const int j = static_cast<int>(surfaces.size());
  const int d = surfaces.front().d;
  check_jp(j, d, p, surfaces.size());
  if (cover.j != j) throw std::invalid_argument("cover ground size differs from the number of surfaces");
  require_valid_cover(cover);

  FinnerResult out;
  QResult full = q_exact(surfaces, j, p, budget);
  out.lhs = full.value;
  out.tuples = full.tuples;

  // block integrals of F_i = |wedge_{A_i}|^p
  std::vector<double> block_int;
  double log_classical = 0.0;
  bool zero_block = false;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    std::vector<DiscreteHypersurface> sub;
    for (int n : cover.sets[i]) sub.push_back(surfaces[n]);
    const int k = static_cast<int>(sub.size());
    QResult qb = q_exact(sub, k, p, budget);
    out.block_q.push_back(qb.value);
    block_int.push_back(qb.power_sum);
    if (qb.power_sum <= 0.0)
      zero_block = true;
    else
      log_classical += cover.alpha(i) * k * std::log(qb.value) / j;
  }
  out.classical = zero_block ? 0.0 : std::exp(log_classical);

  TupleSpace space(surfaces, budget);
  struct Acc {
    double sup = 0.0;
    CompensatedSum refined;
    std::uint64_t degenerate = 0;
  };
  std::vector<Acc> partial(space.chunks());
  parallel_for_chunks(space.chunks(), [&](std::size_t c) {
    Acc acc;
    std::vector<const double*> sub;
    space.visit_chunk(c, [&](const double* const* v, double w, const auto&) {
      RhoResult rho = rho_factor_raw(v, j, d, cover);
      if (rho.degenerate) ++acc.degenerate;
      acc.sup = std::max(acc.sup, rho.value);
      if (zero_block || rho.value <= 0.0) return;
      double term = std::pow(rho.value, p);
      for (std::size_t i = 0; i < cover.size(); ++i) {
        sub.clear();
        for (int n : cover.sets[i]) sub.push_back(v[n]);
        double f = wedge_pow(sub.data(), static_cast<int>(sub.size()), d, p);
        if (f <= 0.0) {
          term = 0.0;
          break;
        }
        term *= std::pow(f / block_int[i], cover.alpha(i));
      }
      acc.refined.add(w * term);
    });
    partial[c] = acc;
  });
  CompensatedSum refined;
  for (const auto& a : partial) {
    out.sup_rho = std::max(out.sup_rho, a.sup);
    refined.merge(a.refined);
    out.degenerate_tuples += a.degenerate;
  }
  double rr = refined.value();
  out.refined_factor = rr > 0.0 ? std::pow(rr, 1.0 / (j * p)) : 0.0;
  out.rhs_refined = out.classical * out.refined_factor;
  out.rhs_coarse = out.classical * std::pow(out.sup_rho, 1.0 / j);
  return out;
}

void require_probability_on_sphere(const DiscreteHypersurface& mu) {
  mu.validate();
  for (const auto& a : mu.atoms)
    if (std::abs(a.v.norm() - 1.0) > 1e-9) throw std::invalid_argument("measure atoms must be unit vectors");
  if (std::abs(mu.total_mass() - 1.0) > 1e-9) throw std::invalid_argument("measure must have total mass 1");
}

double i_p(const DiscreteHypersurface& mu, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  require_probability_on_sphere(mu);
  CompensatedSum s;
  for (const auto& a : mu.atoms)
    for (const auto& b : mu.atoms) {
      double c = a.v.dot(b.v);
      double t = 1.0 - c * c;
      if (t <= 0.0) continue;
      s.add(a.w * b.w * std::pow(t, 0.5 * p));
    }
  return s.value();
}

double i_p_uniform_closed_form(int d, double p) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  return std::tgamma(d / 2.0) * std::tgamma((p + d - 1) / 2.0) /
         (std::tgamma((d - 1) / 2.0) * std::tgamma((p + d) / 2.0));
}

double i_p_uniform_lgamma(int d, double p) {
  return std::exp(std::lgamma(d / 2.0) + std::lgamma((p + d - 1) / 2.0) - std::lgamma((d - 1) / 2.0) -
                  std::lgamma((p + d) / 2.0));
}

double moment_norm_sq(const DiscreteHypersurface& mu, int k) {
  if (k < 1) throw std::invalid_argument("moment order must be at least 1");
  require_probability_on_sphere(mu);
  CompensatedSum s;
  for (const auto& a : mu.atoms)
    for (const auto& b : mu.atoms) s.add(a.w * b.w * std::pow(a.v.dot(b.v), 2 * k));
  return s.value();
}

double moment_norm_sq_uniform(int d, int k) {
  return std::tgamma(d / 2.0) * std::tgamma(k + 0.5) / (std::sqrt(std::numbers::pi) * std::tgamma(k + d / 2.0));
}

JpResult jp_bound_check(const DiscreteHypersurface& mu, double p) {
  if (p < 2.0) throw std::invalid_argument("the J_p bound needs p >= 2");
  JpResult r;
  r.value = i_p(mu, p);
  const int d = mu.d;
  r.bound = 1.0 - 1.0 / d;
  r.gap = r.bound - r.value;
  r.holds = r.value <= r.bound + 1e-10;
  bool pairs_ok = true;
  for (const auto& a : mu.atoms)
    for (const auto& b : mu.atoms) {
      double c2 = std::pow(a.v.dot(b.v), 2);
      if (std::min(std::abs(c2), std::abs(c2 - 1.0)) > 1e-12) pairs_ok = false;
    }
  Mat t = Mat::Zero(d, d);
  for (const auto& a : mu.atoms) t += a.w * a.v * a.v.transpose();
  r.moment_defect = (t - Mat::Identity(d, d) / d).cwiseAbs().maxCoeff();
  r.equality_certificate = pairs_ok && r.moment_defect <= 1e-12;
  return r;
}

}  // namespace transversal
