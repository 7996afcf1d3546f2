#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cstar/errors.hpp"
#include "cstar/fan.hpp"
#include "doctest.h"

using namespace cstar::fan;
using cstar::exactlat::Rat;
using cstar::exactlat::solve_rational;

namespace {

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// Caratheodory: x in cone(G) iff x is a nonnegative combination of an independent subset.
bool member_oracle(const std::vector<LatticeVector>& gens, const LatticeVector& x) {
  if (x.is_zero()) return true;
  std::size_t n = x.rank();
  for (std::size_t k = 1; k <= std::min(n, gens.size()); ++k)
    for (const auto& s : all_subsets(gens.size(), k)) {
      std::vector<LatticeVector> cols;
      for (std::size_t i : s) cols.push_back(gens[i]);
      IntMatrix A = IntMatrix::from_columns(cols, n);
      if (A.rank() != k) continue;
      auto sol = solve_rational(A, x);
      if (!sol) continue;
      if (std::all_of(sol->begin(), sol->end(), [](const Rat& q) { return q >= 0; })) return true;
    }
  return false;
}

// facets of a full-dimensional cone: hyperplanes through n-1 independent generators with all on one side
std::set<LatticeVector> facet_oracle(const std::vector<LatticeVector>& gens, std::size_t n) {
  std::set<LatticeVector> out;
  for (const auto& s : all_subsets(gens.size(), n - 1)) {
    std::vector<LatticeVector> rows;
    for (std::size_t i : s) rows.push_back(gens[i]);
    auto ker = cstar::exactlat::integer_kernel(IntMatrix::from_rows(rows, n));
    if (ker.size() != 1) continue;
    LatticeVector a = ker[0].primitive();
    bool pos = true, neg = true;
    for (const auto& g : gens) {
      Int d = cstar::exactlat::dot(a, g);
      if (d < 0) pos = false;
      if (d > 0) neg = false;
    }
    if (pos) out.insert(a);
    if (neg) out.insert(-a);
  }
  return out;
}

// D_rho . C for the curve of a wall in a smooth fan, from the wall relation
// u + u' + sum c_rho u_rho = 0.
std::vector<Int> wall_relation_oracle(const Fan& f, const Wall& w) {
  std::vector<Int> deg(f.rays().size());
  std::size_t a = 0, b = 0;
  for (std::size_t r : f.max_cones()[w.max_cones[0]])
    if (!std::binary_search(w.rays.begin(), w.rays.end(), r)) a = r;
  for (std::size_t r : f.max_cones()[w.max_cones[1]])
    if (!std::binary_search(w.rays.begin(), w.rays.end(), r)) b = r;
  std::vector<LatticeVector> cols;
  for (std::size_t r : w.rays) cols.push_back(f.ray(r));
  LatticeVector rhs = -(f.ray(a) + f.ray(b));
  auto c = solve_rational(IntMatrix::from_columns(cols, f.rank()), rhs);
  REQUIRE(c);
  deg[a] = 1;
  deg[b] = 1;
  for (std::size_t i = 0; i < w.rays.size(); ++i) {
    REQUIRE((*c)[i].get_den() == 1);
    deg[w.rays[i]] = (*c)[i].get_num();
  }
  return deg;
}

Fan planar_fan(std::vector<LatticeVector> rays, bool closed) {
  std::vector<RaySet> cones;
  for (std::size_t i = 0; i + 1 < rays.size(); ++i) cones.push_back({i, i + 1});
  if (closed) cones.push_back({rays.size() - 1, 0});
  return Fan(2, std::move(rays), std::move(cones));
}

Fan projective_plane() { return planar_fan({{1, 0}, {0, 1}, {-1, -1}}, true); }

Fan hirzebruch(long a) { return planar_fan({{1, 0}, {0, 1}, {-1, a}, {0, -1}}, true); }

// nested subdivisions of the positive quadrant
std::vector<LatticeVector> quadrant_rays(std::mt19937& rng, std::size_t extra) {
  std::set<LatticeVector> pts{{1, 0}, {0, 1}};
  std::uniform_int_distribution<long> d(1, 6);
  while (pts.size() < extra + 2) pts.insert(LatticeVector{d(rng), d(rng)}.primitive());
  std::vector<LatticeVector> out(pts.begin(), pts.end());
  // order by angle: y/x increasing
  std::sort(out.begin(), out.end(), [](const LatticeVector& p, const LatticeVector& q) { return p[1] * q[0] < q[1] * p[0]; });
  return out;
}

}  // namespace

TEST_CASE("cone descriptions agree with independent oracles") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> d(-3, 3);
  int checked = 0;
  while (checked < 40) {
    std::size_t n = 2 + rng() % 2;
    std::vector<LatticeVector> gens;
    std::size_t m = n + rng() % 3;
    // bias towards pointed cones: push everything into a half space x_0 > 0
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Int> c(n);
      for (auto& x : c) x = d(rng);
      c[0] = 1 + (rng() % 3);
      gens.emplace_back(c);
    }
    Cone c(n, gens);
    if (c.dim() != n) continue;
    std::set<LatticeVector> facets(c.facet_normals().begin(), c.facet_normals().end());
    CHECK(facets == facet_oracle(gens, n));
    for (int t = 0; t < 25; ++t) {
      std::vector<Int> x(n);
      for (auto& v : x) v = d(rng) * 2;
      LatticeVector p(x);
      CHECK(c.contains(p) == member_oracle(gens, p));
    }
    // every extreme ray is a generator that no other generators produce
    for (const auto& r : c.rays()) {
      std::vector<LatticeVector> others;
      for (const auto& g : gens)
        if (g.primitive() != r) others.push_back(g);
      CHECK_FALSE(member_oracle(others, r));
    }
    ++checked;
  }
}

TEST_CASE("cones that contain a line are rejected") {
  CHECK_THROWS_AS(Cone(2, {LatticeVector{1, 0}, LatticeVector{-1, 0}}), cstar::NotPointed);
  CHECK_THROWS_AS(Cone(2, {LatticeVector{1, 0}, LatticeVector{-1, 1}, LatticeVector{0, -1}}), cstar::NotPointed);
}

TEST_CASE("smoothness") {
  // a subset of a basis
  CHECK(Cone(5, {LatticeVector::unit(5, 0), LatticeVector::unit(5, 1), LatticeVector::unit(5, 2)}).is_smooth());
  CHECK_FALSE(Cone(2, {LatticeVector{1, 0}, LatticeVector{1, 2}}).is_smooth());
  CHECK(IntMatrix::from_rows({LatticeVector{1, 0}, LatticeVector{1, 2}}, 2).determinant() == 2);
  CHECK_FALSE(Cone(3, {LatticeVector{1, 0, 0}, LatticeVector{0, 1, 0}, LatticeVector{1, 0, 1}, LatticeVector{0, 1, 1}}).is_smooth());
  CHECK(Cone().is_smooth());
}

TEST_CASE("faces of a square cone") {
  Cone c(3, {LatticeVector{1, 0, 1}, LatticeVector{0, 1, 1}, LatticeVector{-1, 0, 1}, LatticeVector{0, -1, 1}});
  auto faces = c.faces();
  // {0}, 4 rays, 4 two-dimensional faces, the cone
  CHECK(faces.size() == 10);
  CHECK(c.facet_normals().size() == 4);
  CHECK_FALSE(c.is_simplicial());
}

TEST_CASE("invalid fans are rejected") {
  CHECK_THROWS_AS(Fan(2, {LatticeVector{2, 0}, LatticeVector{0, 1}}, {{0, 1}}), cstar::InvalidFan);
  // overlapping cones
  CHECK_THROWS_AS(Fan(2, {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}}, {{0, 1}, {0, 2}}), cstar::InvalidFan);
  // shared rays that do not span a face
  CHECK_THROWS_AS(Fan(2, {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}}, {{0, 1}, {2}}), cstar::InvalidFan);
  // a listed ray inside the cone
  CHECK_THROWS_AS(Fan(2, {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{1, 1}}, {{0, 1, 2}}), cstar::InvalidFan);
  // unused ray
  CHECK_THROWS_AS(Fan(2, {LatticeVector{1, 0}, LatticeVector{0, 1}}, {{0}}), cstar::InvalidFan);
}

TEST_CASE("every pair of cones meets in a common face") {
  Fan f = hirzebruch(3);
  for (const auto& a : f.cones())
    for (const auto& b : f.cones()) {
      RaySet common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      Cone meet = intersect(f.cone(a), f.cone(b));
      CHECK(meet == f.cone(common));
    }
}

TEST_CASE("star quotients") {
  Fan p2 = projective_plane();
  // star of {0} is the fan itself
  CHECK(star_quotient(p2, Cone(2, {})) == p2);
  // star of a maximal cone is a point
  Fan pt = star_quotient(p2, p2.max_cone(0));
  CHECK(pt.rank() == 0);
  CHECK(pt.rays().empty());
  CHECK(pt.max_cones().size() == 1);
  // star of a ray of P2 is P1
  Fan p1 = star_quotient(p2, Cone(2, {LatticeVector{1, 0}}));
  CHECK(p1.rank() == 1);
  CHECK(p1.rays().size() == 2);
  CHECK(p1.max_cones().size() == 2);
  CHECK_THROWS_AS(star_quotient(p2, Cone(2, {LatticeVector{1, 1}})), cstar::ConeNotInFan);
}

TEST_CASE("refinement: reflexive, transitive, antisymmetric on nested quadrant subdivisions") {
  std::mt19937 rng(99);
  for (int t = 0; t < 15; ++t) {
    auto r3 = quadrant_rays(rng, 5);
    // nested subsets keeping the two boundary rays
    std::vector<LatticeVector> r2{r3.front()}, r1{r3.front()};
    for (std::size_t i = 1; i + 1 < r3.size(); ++i) {
      if (rng() % 2) r2.push_back(r3[i]);
    }
    for (std::size_t i = 1; i < r2.size(); ++i)
      if (rng() % 2) r1.push_back(r2[i]);
    r2.push_back(r3.back());
    r1.push_back(r3.back());
    Fan f1 = planar_fan(r1, false), f2 = planar_fan(r2, false), f3 = planar_fan(r3, false);
    CHECK(refines(f1, f1));
    CHECK(refines(f3, f2));
    CHECK(refines(f2, f1));
    CHECK(refines(f3, f1));
    if (r2.size() > r1.size()) CHECK_FALSE(refines(f1, f2));
    if (refines(f1, f2) && refines(f2, f1)) CHECK(f1 == f2);
  }
}

TEST_CASE("refinement in dimension three with a stellar subdivision") {
  std::vector<LatticeVector> base{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Fan coarse(3, base, {{0, 1, 2}});
  std::vector<LatticeVector> rays = base;
  rays.push_back({1, 1, 1});
  Fan star(3, rays, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
  CHECK(refines(star, coarse));
  CHECK_FALSE(refines(coarse, star));
  // drop a piece: coverage fails, and the witness sits in the missing cone
  Fan holed(3, rays, {{0, 1, 3}, {1, 2, 3}});
  RefinementCheck r = check_refinement(holed, coarse);
  CHECK_FALSE(r.ok);
  REQUIRE(r.witness);
  CHECK(Cone(3, {rays[0], rays[2], rays[3]}).contains_in_relative_interior(*r.witness));
  CHECK_FALSE(holed.in_support(*r.witness));
}

TEST_CASE("class groups") {
  // affine space: trivial
  Fan affine(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}});
  ClassGroup g = class_group(affine);
  CHECK(g.free_rank == 0);
  CHECK(g.torsion.empty());
  CHECK(class_group(projective_plane()).free_rank == 1);
  CHECK(class_group(hirzebruch(2)).free_rank == 2);
  // A_1 singularity: Z/2 (= |det|)
  Fan a1(2, {{1, 0}, {1, 2}}, {{0, 1}});
  ClassGroup t = class_group(a1);
  CHECK(t.free_rank == 0);
  REQUIRE(t.torsion.size() == 1);
  CHECK(t.torsion[0] == abs(IntMatrix::from_rows(a1.rays(), 2).determinant()));
  // torus factor
  CHECK_THROWS_AS(class_group(Fan(2, {{1, 0}}, {{0}})), cstar::TorusFactor);
}

TEST_CASE("class-group rank is #rays - rank for smooth spanning fans") {
  for (long a = 0; a < 5; ++a) {
    Fan f = hirzebruch(a);
    CHECK(class_group(f).free_rank + f.rank() == f.rays().size());
  }
}

TEST_CASE("curve degrees agree with the wall relation and vanish on principal divisors") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<long> d(-4, 4);
  for (long a = 0; a < 4; ++a) {
    Fan f = hirzebruch(a);
    for (const auto& w : walls(f)) {
      REQUIRE(w.complete());
      auto oracle = wall_relation_oracle(f, w);
      for (int t = 0; t < 10; ++t) {
        TDivisor div;
        Int expect = 0;
        for (std::size_t i = 0; i < f.rays().size(); ++i) {
          div.coeffs.push_back(d(rng));
          expect += div.coeffs.back() * oracle[i];
        }
        CHECK(curve_degree(f, w.rays, div) == expect);
        TDivisor pd = principal_divisor(f, LatticeVector{d(rng), d(rng)});
        CHECK(curve_degree(f, w.rays, pd) == 0);
      }
    }
  }
  // every line in P2 has degree one against each boundary divisor
  Fan p2 = projective_plane();
  for (const auto& w : walls(p2))
    for (std::size_t r = 0; r < 3; ++r) CHECK(curve_degree(p2, w.rays, ray_divisor(p2, r)) == 1);
}

TEST_CASE("non-compact walls and non-Cartier divisors") {
  Fan half = planar_fan({{1, 0}, {0, 1}, {-1, 0}}, false);
  CHECK_THROWS_AS(curve_degree(half, RaySet{0}, zero_divisor(half)), cstar::NotCompactCurve);
  Fan a1(2, {{1, 0}, {1, 2}}, {{0, 1}});
  CHECK_THROWS_AS(cartier_data(a1, ray_divisor(a1, 0)), cstar::NotCartier);
  CartierData cd = cartier_data(a1, ray_divisor(a1, 0, 2));
  CHECK(cd.m[0] == LatticeVector{-2, 1});
  CartierData z = cartier_data(a1, zero_divisor(a1));
  CHECK(z.m[0].is_zero());
}

TEST_CASE("lattice isomorphisms") {
  Fan f = hirzebruch(1);
  // conjugate by a unimodular matrix
  IntMatrix g(2, 2);
  g(0, 0) = 2, g(0, 1) = 1, g(1, 0) = 1, g(1, 1) = 1;
  std::vector<LatticeVector> rays;
  for (const auto& u : f.rays()) rays.push_back(g * u);
  std::reverse(rays.begin(), rays.end());
  Fan h = planar_fan(rays, true);
  auto iso = lattice_isomorphism(f, h);
  REQUIRE(iso);
  CHECK(abs(iso->determinant()) == 1);
  CHECK_FALSE(lattice_isomorphism(hirzebruch(1), hirzebruch(2)));
}
