#include <cstdlib>
#include <random>
#include <set>

#include "cstar/atiyah.hpp"
#include "cstar/errors.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cstar;
using namespace cstar::atiyah;
using exactlat::Int;
using fan::RaySet;

namespace {

std::vector<LatticeVector> rays_of(const Fan& f, const RaySet& s) {
  std::vector<LatticeVector> out;
  for (std::size_t i : s) out.push_back(f.ray(i));
  return out;
}

const Check& find_check(const Report& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return c;
  FAIL("missing check " << prefix);
  return r.checks.front();
}

}  // namespace

TEST_CASE("types parse and validate") {
  AtiyahType t = AtiyahType::parse("1,2,5");
  CHECK(t.r == 1);
  CHECK(t.s == 2);
  CHECK(t.q() == 1);
  CHECK(t.str() == "1,2,5");
  CHECK_THROWS_AS(AtiyahType::parse("1,1,2"), InvalidType);
  CHECK_THROWS_AS(AtiyahType::parse("0,1,3"), InvalidType);
  CHECK_THROWS_AS(AtiyahType::parse("1,1"), ParseError);
  CHECK_THROWS_AS(AtiyahType::parse("1,x,3"), ParseError);
  try {
    AtiyahType::parse("1,1,2");
  } catch (const InvalidType& e) {
    CHECK(std::string(e.what()).find("q must be ≥ 0") != std::string::npos);
  }
}

TEST_CASE("generators in both lattices") {
  AtiyahSuite s(AtiyahType{1, 1, 3});
  CHECK(s.v() == LatticeVector{1, 1, -1, -1});
  CHECK(s.to_flip().project(s.v()).is_zero());
  // dropping the first coordinate: e0 goes to f0 + f1 - e1
  CHECK(s.generator("e0", Lattice::flip) == LatticeVector{-1, 1, 1});
  CHECK(s.generator("e1", Lattice::flip) == LatticeVector{1, 0, 0});
  CHECK(s.u() == LatticeVector{0, 1, 1});
  CHECK(s.generator("-v", Lattice::big) == LatticeVector{-1, -1, 1, 1});
  CHECK_THROWS_AS(s.generator("v", Lattice::flip), ParseError);
  CHECK_THROWS_AS(s.generator("e2", Lattice::big), ParseError);

  AtiyahSuite t(AtiyahType{2, 1, 6});
  CHECK(t.h_labels() == std::vector<std::string>{"h1", "h2"});
  CHECK(t.generator("h2", Lattice::big) == LatticeVector::unit(7, 6));
}

TEST_CASE("fan sizes") {
  for (AtiyahType t : {AtiyahType{1, 1, 3}, AtiyahType{2, 1, 5}, AtiyahType{2, 3, 7}}) {
    AtiyahSuite s(t);
    auto r1 = static_cast<std::size_t>(t.r + 1), s1 = static_cast<std::size_t>(t.s + 1);
    CHECK(s.fan("sigma_minus").max_cones().size() == r1);
    CHECK(s.fan("sigma_plus").max_cones().size() == s1);
    CHECK(s.fan("sigma_sharp").max_cones().size() == r1 * s1);
    CHECK(s.fan("hat").max_cones().size() == r1 + s1 + 1);
    CHECK(s.fan("hat_minus").max_cones().size() == 2 * r1);
    CHECK(s.fan("delta_prime").rank() == static_cast<std::size_t>(t.n));
    CHECK(s.fan("delta").rank() == static_cast<std::size_t>(t.n + 1));
  }
}

TEST_CASE("both triangulations tile the cone over Δ′ (sampled points)") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> coef(0, 6);
  for (AtiyahType t : {AtiyahType{1, 1, 3}, AtiyahType{1, 2, 4}, AtiyahType{2, 2, 6}}) {
    AtiyahSuite s(t);
    const Fan& d = s.fan("delta_prime");
    for (const char* name : {"sigma_minus", "sigma_plus", "sigma_sharp"}) {
      const Fan& f = s.fan(name);
      for (int trial = 0; trial < 60; ++trial) {
        LatticeVector x = LatticeVector::zero(d.rank());
        for (std::size_t r = 0; r < d.rays().size(); ++r) x += Int(coef(rng)) * d.ray(r);
        std::size_t containing = 0, interior = 0;
        for (const auto& m : f.max_cones()) {
          if (oracle::in_simplicial_cone(rays_of(f, m), x, false)) ++containing;
          if (oracle::in_simplicial_cone(rays_of(f, m), x, true)) ++interior;
        }
        CHECK(containing >= 1);
        CHECK(interior <= 1);
      }
      // and nothing outside: a point with a negative Δ′ coordinate is rejected by every cone
      LatticeVector out = -d.ray(0);
      for (const auto& m : f.max_cones()) CHECK_FALSE(oracle::in_simplicial_cone(rays_of(f, m), out, false));
    }
  }
}

TEST_CASE("triangulation, bundle, degree and bordism reports pass on small types") {
  for (AtiyahType t : sweep(SweepBounds{4, 6, -1})) {
    CAPTURE(t.str());
    AtiyahSuite s(t);
    for (const Report& r : {verify_triangulations(s), verify_bundle_structure(s), verify_normal_degrees(s), verify_bordism(s).report}) {
      const Check* bad = r.first_failure();
      CHECK_MESSAGE(bad == nullptr, r.title << ": " << (bad ? bad->name + " (" + bad->detail + ")" : ""));
    }
  }
}

TEST_CASE("the (1,1,3) bordism in detail") {
  AtiyahSuite s(AtiyahType{1, 1, 3});
  BordismResult b = verify_bordism(s);
  CHECK(b.report.ok());
  CHECK(b.bb.components.size() == 3);
  CHECK(*b.bb.components[b.sink].mu == -1);
  CHECK(*b.bb.components[b.inner].mu == 0);
  CHECK(*b.bb.components[b.source].mu == 1);
  CHECK(b.bb.bandwidth == Int(2));
  CHECK(b.bb.bordism_rank == 1L);
  CHECK(b.bb.class_group_proxy == 1L);
  CHECK(b.bb.components[b.inner].dim == 0);
  CHECK(b.bb.components[b.inner].nu_plus == 2);
  CHECK(b.bb.components[b.inner].nu_minus == 2);
}

TEST_CASE("the P1-bundles alone have bordism rank 0") {
  for (AtiyahType t : {AtiyahType{1, 1, 3}, AtiyahType{1, 2, 5}}) {
    AtiyahSuite s(t);
    for (const char* name : {"hat_minus", "hat_plus"}) {
      tflow::BBReport r = tflow::bb_report(s.fan(name), tflow::OneParamSubgroup(s.v()), std::nullopt);
      CHECK(r.b_type);
      CHECK(r.components.size() == 2);
      CHECK(r.bordism_rank == 0L);
    }
  }
}

TEST_CASE("adding a principal divisor shifts every μ by <m, v>") {
  AtiyahSuite s(AtiyahType{1, 2, 5});
  const Fan& hat = s.fan("hat");
  tflow::OneParamSubgroup h(s.v());
  fan::TDivisor d = fan::ray_divisor(hat, *hat.ray_index(std::string("v"))) + fan::ray_divisor(hat, *hat.ray_index(std::string("-v")));
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> coord(-3, 3);
  auto base = tflow::mu_values(hat, h, d);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Int> xs;
    for (std::size_t i = 0; i < hat.rank(); ++i) xs.push_back(coord(rng));
    LatticeVector m(xs);
    auto shifted = tflow::mu_values(hat, h, d + fan::principal_divisor(hat, m));
    Int shift = exactlat::dot(m, s.v());
    for (std::size_t i = 0; i < base.size(); ++i) CHECK(shifted[i] == base[i] + shift);
  }
}

TEST_CASE("V(e_i) + V(f_j) has degree zero on every invariant curve of either side") {
  AtiyahSuite s(AtiyahType{2, 1, 5});
  for (const char* name : {"sigma_minus", "sigma_plus"}) {
    const Fan& f = s.fan(name);
    for (const auto& e : s.e_labels())
      for (const auto& g : s.f_labels()) {
        fan::TDivisor d = fan::ray_divisor(f, *f.ray_index(e)) + fan::ray_divisor(f, *f.ray_index(g));
        for (const auto& w : fan::walls(f))
          if (w.complete()) CHECK(fan::curve_degree(f, w.rays, d) == 0);
      }
  }
}

TEST_CASE("a suite missing a cone of Σ_− fails with a witness in that cone") {
  AtiyahSuite good(AtiyahType{1, 1, 3});
  for (int i = 0; i <= 1; ++i) {
    AtiyahSuite bad = good.without_minus_cone(i);
    Report r = verify_triangulations(bad);
    CHECK_FALSE(r.ok());
    const Check& c = find_check(r, "Σ_− triangulates Δ′");
    CHECK_FALSE(c.ok);
    REQUIRE(c.witness.has_value());
    fan::Cone removed = good.cone(good.delta_minus_i(i), Lattice::flip);
    CHECK(removed.contains_in_relative_interior(*c.witness));
    CHECK(oracle::in_simplicial_cone(removed.rays(), *c.witness, true));
  }
}

TEST_CASE("sweep enumeration and environment bounds") {
  auto types = sweep(SweepBounds{3, 5, -1});
  CHECK(types.size() == 7);
  std::set<std::string> seen;
  for (const auto& t : types) {
    CHECK(t.q() >= 0);
    CHECK(t.r + t.s <= 3);
    seen.insert(t.str());
  }
  CHECK(seen.size() == types.size());
  CHECK(sweep(SweepBounds{3, 5, 0}).size() == 3);

  setenv("CSTAR_SWEEP", "4,6,1", 1);
  SweepBounds b = SweepBounds::from_env();
  CHECK(b.max_r_plus_s == 4);
  CHECK(b.max_n == 6);
  CHECK(b.max_q == 1);
  setenv("CSTAR_SWEEP", "junk", 1);
  CHECK_THROWS_AS(SweepBounds::from_env(), ParseError);
  unsetenv("CSTAR_SWEEP");
  CHECK(SweepBounds::from_env().max_r_plus_s == 5);
}
