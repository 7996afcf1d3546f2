#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cstar/exactlat.hpp"

namespace cstar::fan {

using exactlat::Int;
using exactlat::IntMatrix;
using exactlat::LatticeVector;
using exactlat::QuotientMap;
using RaySet = std::vector<std::size_t>;  // sorted indices into a fan's ray list

// Pointed rational polyhedral cone, kept in both descriptions.
// x is in the cone iff <e,x> = 0 for every equation and <a,x> >= 0 for every facet normal.
class Cone {
 public:
  Cone() = default;  // the zero cone in rank 0
  Cone(std::size_t rank, std::vector<LatticeVector> generators);
  static Cone from_inequalities(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                                const std::vector<LatticeVector>& eqs = {});

  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<LatticeVector>& facet_normals() const { return facets_; }
  const std::vector<LatticeVector>& equations() const { return eqs_; }

  bool contains(const LatticeVector& x) const;
  bool contains_in_relative_interior(const LatticeVector& x) const;
  bool contains(const Cone& other) const;
  bool is_face_of(const Cone& other) const;
  bool is_simplicial() const { return rays_.size() == dim_; }
  bool is_smooth() const;
  LatticeVector relative_interior_point() const;  // sum of the rays

  // every face as a sorted subset of indices into rays(), including {} and all
  std::vector<RaySet> faces() const;
  RaySet rays_on_facet(std::size_t facet) const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.rank_ == b.rank_ && a.rays_ == b.rays_; }

 private:
  std::size_t rank_ = 0, dim_ = 0;
  std::vector<LatticeVector> rays_, facets_, eqs_;
};

// Extreme rays of the pointed cone {x : <a,x> >= 0, <e,x> = 0}; throws NotPointed.
std::vector<LatticeVector> extreme_rays(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                                        const std::vector<LatticeVector>& eqs);

Cone intersect(const Cone& a, const Cone& b);

class Fan {
 public:
  Fan() = default;
  // Validates: primitive distinct rays, every listed cone generated exactly by its
  // listed rays, pairwise intersections along common faces. Max cones that are
  // faces of other listed cones are dropped.
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RaySet> max_cones,
      std::vector<std::string> ray_labels = {});

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  const std::vector<std::string>& ray_labels() const { return labels_; }
  std::string label(std::size_t i) const;
  bool has_labels() const { return !labels_.empty(); }

  const std::vector<RaySet>& max_cones() const { return max_; }
  const Cone& max_cone(std::size_t i) const { return max_cones_.at(i); }

  // all cones, ordered by dimension then lexicographically
  const std::vector<RaySet>& cones() const { return all_; }
  std::vector<RaySet> cones_of_dim(std::size_t d) const;
  bool has_cone(const RaySet& s) const;
  Cone cone(const RaySet& s) const;

  std::optional<std::size_t> ray_index(const LatticeVector& u) const;
  std::optional<std::size_t> ray_index(const std::string& label) const;
  // the fan cone equal to c, if any
  std::optional<RaySet> find_cone(const Cone& c) const;
  std::vector<std::size_t> max_cones_containing(const RaySet& s) const;

  bool in_support(const LatticeVector& x) const;
  // the unique cone with x in its relative interior, if x is in the support
  std::optional<RaySet> cone_containing_in_relative_interior(const LatticeVector& x) const;

  bool is_smooth() const;
  bool is_simplicial() const;
  bool is_pure() const;

  friend bool operator==(const Fan& a, const Fan& b);

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<std::string> labels_;
  std::vector<RaySet> max_;
  std::vector<Cone> max_cones_;
  std::vector<RaySet> all_;
};

std::string describe(const Fan& f, const RaySet& s);  // "{e1,f0}" with labels when present

struct StarQuotient {
  Fan fan;
  QuotientMap map;
};

// Fan of the orbit closure V(c): images of cones containing c in N/span(c).
StarQuotient star_quotient_with_map(const Fan& f, const RaySet& c);
Fan star_quotient(const Fan& f, const Cone& c);

struct RefinementCheck {
  bool ok = true;
  std::string reason;
  std::optional<LatticeVector> witness;  // a point of |f2| outside |f1|, or of f1 outside f2
};

// f1 refines f2: same support and every cone of f1 inside a cone of f2.
RefinementCheck check_refinement(const Fan& f1, const Fan& f2);
bool refines(const Fan& f1, const Fan& f2);

// Divisors and curves --------------------------------------------------------

struct TDivisor {
  std::vector<Int> coeffs;  // aligned with the fan's rays
};

struct CartierData {
  std::vector<LatticeVector> m;  // aligned with the fan's max cones
};

TDivisor zero_divisor(const Fan& f);
TDivisor ray_divisor(const Fan& f, std::size_t ray, long coeff = 1);
TDivisor principal_divisor(const Fan& f, const LatticeVector& m);  // div of the character m
TDivisor operator+(const TDivisor& a, const TDivisor& b);

CartierData cartier_data(const Fan& f, const TDivisor& d);

struct Wall {
  RaySet rays;
  std::vector<std::size_t> max_cones;  // full-dimensional max cones containing it
  bool complete() const { return max_cones.size() == 2; }
};

// codimension-one cones and their full-dimensional neighbours
std::vector<Wall> walls(const Fan& f);

// lattice point of the second cone generating N/N_wall
LatticeVector wall_transversal(const Fan& f, const RaySet& wall, std::size_t toward_max_cone);

Int curve_degree(const Fan& f, const RaySet& wall, const TDivisor& d);
Int curve_degree(const Fan& f, const Cone& wall, const TDivisor& d);

struct ClassGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
};

ClassGroup class_group(const Fan& f);

// Integral unimodular A with A(ray) matching rays of b and cones mapping to cones,
// guided by equal ray labels when both fans carry them, else by search.
std::optional<IntMatrix> lattice_isomorphism(const Fan& a, const Fan& b);

}  // namespace cstar::fan
