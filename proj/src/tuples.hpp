#pragma once

// Chunked enumeration of ordered atom tuples over a product of discrete surfaces.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "transversal/hypersurface.hpp"
#include "transversal/numerics.hpp"

namespace transversal::detail {

struct FlatSurface {
  int d = 0;
  std::vector<double> w;
  std::vector<double> v;  // row-major n x d
  std::size_t n() const { return w.size(); }
  const double* vec(std::size_t i) const { return v.data() + i * d; }
};

inline FlatSurface flatten(const DiscreteHypersurface& s) {
  FlatSurface f;
  f.d = s.d;
  for (const auto& a : s.atoms) {
    f.w.push_back(a.w);
    for (int k = 0; k < s.d; ++k) f.v.push_back(a.v[k]);
  }
  return f;
}

class TupleSpace {
 public:
  TupleSpace(const std::vector<DiscreteHypersurface>& surfaces, std::uint64_t budget) {
    if (surfaces.empty()) throw std::invalid_argument("no surfaces given");
    d_ = surfaces.front().d;
    total_ = 1;
    for (const auto& s : surfaces) {
      s.validate();
      if (s.d != d_) throw std::invalid_argument("surfaces have different dimensions");
      flat_.push_back(flatten(s));
      std::uint64_t n = s.size();
      if (total_ > budget / std::max<std::uint64_t>(n, 1))
        throw std::length_error("tuple enumeration budget exceeded (" + std::to_string(budget) +
                                "); use the Monte Carlo estimator");
      total_ *= n;
    }
    if (total_ > budget)
      throw std::length_error("tuple enumeration budget exceeded (" + std::to_string(budget) +
                              "); use the Monte Carlo estimator");
  }

  int d() const { return d_; }
  int j() const { return static_cast<int>(flat_.size()); }
  std::uint64_t total() const { return total_; }
  std::size_t chunks() const { return static_cast<std::size_t>((total_ + kChunk - 1) / kChunk); }
  const FlatSurface& surface(int i) const { return flat_[i]; }

  // f(const double* const* vecs, double weight_product, const std::vector<std::size_t>& idx)
  template <class F>
  void visit_chunk(std::size_t chunk, F&& f) const {
    std::uint64_t begin = static_cast<std::uint64_t>(chunk) * kChunk;
    std::uint64_t end = std::min<std::uint64_t>(total_, begin + kChunk);
    const int j = this->j();
    std::vector<std::size_t> idx(j);
    std::uint64_t r = begin;
    for (int i = j - 1; i >= 0; --i) {
      idx[i] = static_cast<std::size_t>(r % flat_[i].n());
      r /= flat_[i].n();
    }
    std::vector<const double*> vecs(j);
    for (std::uint64_t t = begin; t < end; ++t) {
      double wprod = 1.0;
      for (int i = 0; i < j; ++i) {
        vecs[i] = flat_[i].vec(idx[i]);
        wprod *= flat_[i].w[idx[i]];
      }
      f(vecs.data(), wprod, idx);
      for (int i = j - 1; i >= 0; --i) {
        if (++idx[i] < flat_[i].n()) break;
        idx[i] = 0;
      }
    }
  }

 private:
  int d_ = 0;
  std::uint64_t total_ = 0;
  std::vector<FlatSurface> flat_;
};

}  // namespace transversal::detail
