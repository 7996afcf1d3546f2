#pragma once

#include <vector>

#include "cstar/fan.hpp"

namespace cstar::drum {

using exactlat::Int;
using exactlat::LatticeVector;

// Convex hull of finitely many lattice points, stored by its vertices (sorted).
class LatticePolytope {
 public:
  LatticePolytope() = default;
  LatticePolytope(std::size_t rank, const std::vector<LatticeVector>& points);

  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return cone_.dim() - 1; }
  const std::vector<LatticeVector>& vertices() const { return vertices_; }

  // cone over P x {1} in rank + 1
  const fan::Cone& homogenized_cone() const { return cone_; }
  bool contains(const LatticeVector& x) const;
  std::vector<LatticeVector> lattice_points() const;  // sorted

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.rank_ == b.rank_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> vertices_;
  fan::Cone cone_;
};

// conv(0, e_first, ..., e_{first+k-1}) in the given rank
LatticePolytope standard_simplex(std::size_t rank, std::size_t first, std::size_t k);

// conv(P_- x {0} and P_+ x {1}); throws RankMismatch
LatticePolytope cayley_sum(const LatticePolytope& p_minus, const LatticePolytope& p_plus);

// full-dimensional simplex whose edge vectors from one vertex form a lattice basis
bool is_unimodular_simplex(const LatticePolytope& p);

struct DrumSpec {
  long k_minus = 0, k_plus = 0;
  void validate() const;  // InvalidType when negative
};

long drum_index(const DrumSpec& d);

struct LayerReport {
  Int bandwidth = 0;                      // spread of the last coordinate over the vertices
  std::vector<Int> layer_values;          // ascending
  std::vector<std::size_t> layer_sizes;   // vertex counts per layer value
};

// last-coordinate layers of a Cayley sum; throws NotCayley when the lattice points
// occupy more than two layers
LayerReport drum_bandwidth_check(const LatticePolytope& p);

}  // namespace cstar::drum
