#pragma once

#include <vector>

#include "transversal/cover.hpp"
#include "transversal/numerics.hpp"

namespace transversal {

using VectorTuple = std::vector<Vec>;

// Partial-pivot elimination on a row-major n x n buffer (destroyed).
double det_inplace(double* a, int n);
double determinant(const Mat& m);

Mat gram_matrix(const VectorTuple& t);
// Gram matrix of unit directions; zero vectors are replaced by e_1.
Mat unit_gram_matrix(const VectorTuple& t);

// sqrt(det Gram), evaluated as prod |R_aa| of a Householder QR.
double wedge_norm(const VectorTuple& t);
// Raw-pointer variant for hot loops: j vectors of length d, vecs[i] points to d doubles.
double wedge_norm_raw(const double* const* vecs, int j, int d);

struct RhoResult {
  double value = 0.0;
  bool degenerate = false;
};

RhoResult rho_factor(const VectorTuple& t, const UniformCover& cover);
RhoResult rho_factor_raw(const double* const* vecs, int j, int d, const UniformCover& cover);

double local_identity_residual(const VectorTuple& t, const UniformCover& cover, double p);

}  // namespace transversal
