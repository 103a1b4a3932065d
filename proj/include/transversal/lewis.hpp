#pragma once

#include "transversal/hypersurface.hpp"

namespace transversal {

struct LewisResult {
  Mat u;  // symmetric positive definite representative
  double defect = 0.0;  // || d M(u) - I ||_F
  double trace_residual = 0.0;
  double normalization_residual = 0.0;  // |a(u) - 1|
  int iterations = 0;
  double p = 0.0;
  bool converged = false;
};

struct IsotropyDefect {
  double frobenius = 0.0;       // || d M(u) - I ||_F
  double trace_residual = 0.0;  // | d a(u)^p - d |
};

// a(A) = (sum w ||A v||^p)^{1/p}
double lewis_functional(const DiscreteHypersurface& s, const Mat& A, double p);
// M(u) = sum w ||u v||^{p-2} (u v)(u v)^T
Mat lewis_moment(const DiscreteHypersurface& s, const Mat& u, double p);

LewisResult lewis_solve(const DiscreteHypersurface& s, double p, double tol = 1e-9, int max_iter = 500);
IsotropyDefect isotropy_defect(const DiscreteHypersurface& s, const Mat& u, double p);

// Eigenvectors of the symmetric u as columns (ascending eigenvalues).
Mat lewis_eigenframe(const Mat& u);

}  // namespace transversal
