#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "transversal/cover.hpp"
#include "transversal/hypersurface.hpp"

namespace transversal {

inline constexpr std::uint64_t kDefaultSubsetBudget = 2'000'000;

// Sum_i [-g_i, g_i]
struct Zonotope {
  int d = 0;
  std::vector<Vec> generators;

  double support(const Vec& y) const;
  Mat matrix() const;  // d x m
  Zonotope scaled(double lambda) const;
  Zonotope operator+(const Zonotope& o) const;  // Minkowski sum = generator concatenation
};

// [0, w] as a zonotope (translate of [-w/2, w/2])
Zonotope segment(const Vec& w);

Zonotope projection_body(const DiscreteHypersurface& s);

double zonotope_volume(const Zonotope& z, std::uint64_t budget = kDefaultSubsetBudget);

void require_orthonormal(const Mat& frame, double tol = 1e-10);
// frame: d x k with orthonormal columns spanning E
Zonotope project_zonotope(const Zonotope& z, const Mat& frame);

// Field P_E v in frame coordinates.
DiscreteHypersurface project_surface(const DiscreteHypersurface& s, const Mat& frame);

// (k!/2^k) |P_E Pi(S)|
double sigma_plane(const DiscreteHypersurface& s, const Mat& frame);
// sum over ordered k-tuples of prod w |P_E v_1 ^ ... ^ P_E v_k|
double sigma_plane_direct(const DiscreteHypersurface& s, const Mat& frame);

struct Ball {
  int d = 0;
};
using ConvexBody = std::variant<Ball, Zonotope>;

int body_dimension(const ConvexBody& k);
double body_volume(const ConvexBody& k);

// V(K[d-k], Z_1, ..., Z_k), normalized so V(K, ..., K) = |K|.
double mixed_volume(const ConvexBody& body, const std::vector<Zonotope>& entries,
                    std::uint64_t budget = kDefaultSubsetBudget);

struct BezoutResult {
  double lhs = 0.0;       // |K|^{r-s} V(K[d-|sigma|], Z_sigma)^s
  double rhs = 0.0;       // constant * prod_i V(K[d-d_i], Z_{sigma_i})
  double constant = 0.0;
  double v_sigma = 0.0;
  std::vector<double> v_blocks;
  int r = 0;
  int s = 0;
};

// zonotopes are indexed by the cover's ground set; the cover must be a counting (s-uniform) cover.
BezoutResult bezout_check(const ConvexBody& body, const std::vector<Zonotope>& zonotopes, const UniformCover& cover,
                          std::uint64_t budget = kDefaultSubsetBudget);
double bezout_constant(int d, int sigma_size, const std::vector<int>& block_sizes);

struct BezoutCorollaryResult {
  double lhs = 0.0;  // Q_j^1(S_1..S_j)
  double rhs = 0.0;  // q prod_i Q_{d_i}^1(...)^{d_i/(s j)}
  double q = 0.0;
  BezoutResult bezout;  // the underlying mixed-volume inequality with K = B_2^d
};

BezoutCorollaryResult bezout_corollary_check(const std::vector<DiscreteHypersurface>& surfaces,
                                             const UniformCover& cover);
double corollary_q(int d, int j, int s, const std::vector<int>& block_sizes);

}  // namespace transversal
