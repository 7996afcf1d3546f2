#include "cstar/drum.hpp"

#include <algorithm>
#include <map>

#include "cstar/errors.hpp"

namespace cstar::drum {

using exactlat::IntMatrix;

namespace {

LatticeVector lift(const LatticeVector& p, const Int& t) {
  std::vector<Int> xs = p.coords();
  xs.push_back(t);
  return LatticeVector(std::move(xs));
}

LatticeVector drop_last(const LatticeVector& x) {
  std::vector<Int> xs = x.coords();
  xs.pop_back();
  return LatticeVector(std::move(xs));
}

}  // namespace

LatticePolytope::LatticePolytope(std::size_t rank, const std::vector<LatticeVector>& points) : rank_(rank) {
  if (points.empty()) throw ParseError("a polytope needs at least one point");
  std::vector<LatticeVector> lifted;
  for (const auto& p : points) {
    if (p.rank() != rank) throw DimensionMismatch("point " + p.str() + " in a polytope of rank " + std::to_string(rank));
    lifted.push_back(lift(p, 1));
  }
  cone_ = fan::Cone(rank + 1, lifted);
  // the rays of the cone are exactly the lifted vertices: last coordinate 1 keeps them primitive
  for (const auto& r : cone_.rays()) vertices_.push_back(drop_last(r));
  std::sort(vertices_.begin(), vertices_.end());
}

bool LatticePolytope::contains(const LatticeVector& x) const {
  if (x.rank() != rank_) throw DimensionMismatch("point of rank " + std::to_string(x.rank()));
  return cone_.contains(lift(x, 1));
}

std::vector<LatticeVector> LatticePolytope::lattice_points() const {
  std::vector<Int> lo(rank_), hi(rank_);
  for (std::size_t k = 0; k < rank_; ++k) {
    lo[k] = hi[k] = vertices_.front()[k];
    for (const auto& v : vertices_) {
      if (v[k] < lo[k]) lo[k] = v[k];
      if (v[k] > hi[k]) hi[k] = v[k];
    }
  }
  std::vector<LatticeVector> out;
  std::vector<Int> cur = lo;
  while (true) {
    LatticeVector x(cur);
    if (contains(x)) out.push_back(x);
    std::size_t k = 0;
    while (k < rank_ && cur[k] == hi[k]) {
      cur[k] = lo[k];
      ++k;
    }
    if (k == rank_) break;
    ++cur[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticePolytope standard_simplex(std::size_t rank, std::size_t first, std::size_t k) {
  if (first + k > rank) throw DimensionMismatch("simplex does not fit in rank " + std::to_string(rank));
  std::vector<LatticeVector> pts{LatticeVector::zero(rank)};
  for (std::size_t i = 0; i < k; ++i) pts.push_back(LatticeVector::unit(rank, first + i));
  return LatticePolytope(rank, pts);
}

LatticePolytope cayley_sum(const LatticePolytope& p_minus, const LatticePolytope& p_plus) {
  if (p_minus.rank() != p_plus.rank())
    throw RankMismatch("Cayley summands of rank " + std::to_string(p_minus.rank()) + " and " + std::to_string(p_plus.rank()));
  std::vector<LatticeVector> pts;
  for (const auto& v : p_minus.vertices()) pts.push_back(lift(v, 0));
  for (const auto& v : p_plus.vertices()) pts.push_back(lift(v, 1));
  return LatticePolytope(p_minus.rank() + 1, pts);
}

bool is_unimodular_simplex(const LatticePolytope& p) {
  const auto& vs = p.vertices();
  if (vs.size() != p.rank() + 1) return false;
  std::vector<LatticeVector> edges;
  for (std::size_t i = 1; i < vs.size(); ++i) edges.push_back(vs[i] - vs[0]);
  Int det = IntMatrix::from_rows(edges, p.rank()).determinant();
  return det == 1 || det == -1;
}

void DrumSpec::validate() const {
  if (k_minus < 0 || k_plus < 0) throw InvalidType("fibre dimensions must be >= 0");
}

long drum_index(const DrumSpec& d) {
  d.validate();
  return d.k_minus + d.k_plus + 2;
}

LayerReport drum_bandwidth_check(const LatticePolytope& p) {
  if (p.rank() == 0) throw NotCayley("a rank-0 polytope has no layer coordinate");
  std::map<Int, std::size_t> layers;
  for (const auto& x : p.lattice_points()) layers[x[p.rank() - 1]];
  if (layers.size() > 2) throw NotCayley(std::to_string(layers.size()) + " layer values on the lattice points");
  for (const auto& v : p.vertices()) ++layers[v[p.rank() - 1]];
  LayerReport r;
  for (const auto& [value, count] : layers) {
    r.layer_values.push_back(value);
    r.layer_sizes.push_back(count);
  }
  r.bandwidth = r.layer_values.back() - r.layer_values.front();
  return r;
}

}  // namespace cstar::drum
