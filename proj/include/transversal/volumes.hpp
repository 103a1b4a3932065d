#pragma once

#include <cstdint>
#include <string>

#include "transversal/hypersurface.hpp"
#include "transversal/zonotope.hpp"

namespace transversal {

// { y : y^T T y <= 1 }
struct EllipsoidBody {
  int d = 0;
  Mat T;

  double volume() const;  // omega_d / sqrt(det T)
};

EllipsoidBody make_ellipsoid(const Mat& T);
// T = sum w v v^T; throws when the smallest eigenvalue is <= 1e-12 trace.
EllipsoidBody covariance(const DiscreteHypersurface& s);
Mat covariance_matrix(const DiscreteHypersurface& s);

// (sum w |<y,v>|^p)^{1/p}
double kp_norm(const DiscreteHypersurface& s, double p, const Vec& y);

enum class KpMethod { Auto, Exact, RadialMC };

struct KpVolume {
  double value = 0.0;
  double stderr_value = 0.0;  // 0 for exact methods
  std::string method;         // "ellipsoid", "exact_polar", "radial_mc"
  std::uint64_t samples = 0;
};

inline constexpr std::uint64_t kDefaultVolumeSamples = 1'000'000;

// Exact: p = 2 (ellipsoid) or p = 1 with d <= 3 and at most 8 generators (polar of the zonotope).
bool kp_exact_available(const DiscreteHypersurface& s, double p);
KpVolume kp_volume(const DiscreteHypersurface& s, double p, KpMethod method = KpMethod::Auto,
                   std::uint64_t n_samples = kDefaultVolumeSamples, std::uint64_t seed = 1);

// Volume of the polar of a full-dimensional zonotope, d <= 3, by facet enumeration.
double zonotope_polar_volume(const Zonotope& z);

struct VisResult {
  double value = 0.0;
  double stderr_value = 0.0;
  KpVolume volume;
};

VisResult vis_p(const DiscreteHypersurface& s, double p, KpMethod method = KpMethod::Auto,
                std::uint64_t n_samples = kDefaultVolumeSamples, std::uint64_t seed = 1);

struct SantaloResult {
  double lhs = 0.0;        // Q_d^1(S)^d = integral of |v_1 ^ ... ^ v_d|
  double rhs = 0.0;        // (2 vis)^d = 2^d / |K(S)|
  double rhs_error = 0.0;  // Monte Carlo standard error of rhs
  bool parallelotope = false;
  std::string method;
};

SantaloResult santalo_check(const DiscreteHypersurface& s, std::uint64_t n_samples = kDefaultVolumeSamples,
                            std::uint64_t seed = 1);

struct MahlerResult {
  double value = 0.0;  // |Pi| |Pi^o|
  double stderr_value = 0.0;
  double bound = 0.0;  // 4^d / d!
  bool parallelotope = false;
};

MahlerResult mahler_product(const DiscreteHypersurface& s, std::uint64_t n_samples = kDefaultVolumeSamples,
                            std::uint64_t seed = 1);

// Number of distinct generator directions up to sign (rank tolerance 1e-10).
int distinct_directions(const DiscreteHypersurface& s);

// sqrt(k! det(F^T T F))
double sigma2_plane(const DiscreteHypersurface& s, const Mat& frame);
// square root of the k-fold sum of squared projected wedges
double sigma2_plane_direct(const DiscreteHypersurface& s, const Mat& frame);

}  // namespace transversal
