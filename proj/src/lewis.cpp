#include "transversal/lewis.hpp"

#include <cmath>
#include <stdexcept>

namespace transversal {

namespace {

void require_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be at least 1");
}

Mat spd_power(const Mat& m, double e) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (!(ev[i] > 0.0)) throw std::runtime_error("moment matrix lost positive definiteness");
    ev[i] = std::pow(ev[i], e);
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

void require_invertible(const Mat& u, int d) {
  if (u.rows() != d || u.cols() != d) throw std::invalid_argument("u has wrong shape");
  Eigen::JacobiSVD<Mat> svd(u);
  auto s = svd.singularValues();
  if (!(s[d - 1] > 1e-14 * s[0])) throw std::invalid_argument("u is singular");
}

}  // namespace

double lewis_functional(const DiscreteHypersurface& s, const Mat& A, double p) {
  CompensatedSum acc;
  for (const auto& a : s.atoms) acc.add(a.w * std::pow((A * a.v).norm(), p));
  return std::pow(acc.value(), 1.0 / p);
}

Mat lewis_moment(const DiscreteHypersurface& s, const Mat& u, double p) {
  Mat m = Mat::Zero(s.d, s.d);
  for (const auto& a : s.atoms) {
    Vec z = u * a.v;
    double n = z.norm();
    if (n == 0.0) continue;
    m.noalias() += a.w * std::pow(n, p - 2.0) * z * z.transpose();
  }
  return m;
}

IsotropyDefect isotropy_defect(const DiscreteHypersurface& s, const Mat& u, double p) {
  require_p(p);
  s.validate();
  require_invertible(u, s.d);
  const int d = s.d;
  IsotropyDefect r;
  r.frobenius = (d * lewis_moment(s, u, p) - Mat::Identity(d, d)).norm();
  r.trace_residual = std::abs(d * std::pow(lewis_functional(s, u, p), p) - d);
  return r;
}

LewisResult lewis_solve(const DiscreteHypersurface& s, double p, double tol, int max_iter) {
  require_p(p);
  s.validate();
  if (!s.spans()) throw std::invalid_argument("atoms do not span R^d");
  if (p < 2.0)
    for (const auto& a : s.atoms)
      if (a.v.norm() == 0.0) throw std::invalid_argument("zero vectors are not allowed for p < 2");
  const int d = s.d;
  const Mat id = Mat::Identity(d, d);
  auto defect_of = [&](const Mat& u) { return (d * lewis_moment(s, u, p) - id).norm(); };

  Mat u = id / lewis_functional(s, id, p);
  double defect = defect_of(u);
  double beta = 1.0;
  LewisResult r;
  r.p = p;
  int it = 0;
  for (; it < max_iter && defect > tol; ++it) {
    Mat next = spd_power(lewis_moment(s, u, p), -beta / 2.0) * u;
    next /= lewis_functional(s, next, p);
    double nd = defect_of(next);
    if (nd > defect) {
      beta /= 2.0;
      if (beta < 1e-6) break;
      continue;
    }
    u = next;
    defect = nd;
  }
  // gauge fix: polar factor (u^T u)^{1/2}
  u = spd_power(u.transpose() * u, 0.5);
  u /= lewis_functional(s, u, p);
  r.u = u;
  r.iterations = it;
  IsotropyDefect def = isotropy_defect(s, u, p);
  r.defect = def.frobenius;
  r.trace_residual = def.trace_residual;
  r.normalization_residual = std::abs(lewis_functional(s, u, p) - 1.0);
  r.converged = r.defect <= tol;
  return r;
}

Mat lewis_eigenframe(const Mat& u) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (u + u.transpose()));
  return es.eigenvectors();
}

}  // namespace transversal
