#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cstar/errors.hpp"
#include "cstar/rootsys.hpp"
#include "doctest.h"

using namespace cstar;
using namespace cstar::rootsys;

namespace {

// Classical root systems in orthonormal coordinates (doubled to stay integral for B).
struct Euclidean {
  std::vector<Vec> roots;
  std::vector<Vec> simple;
};

long ip(const Vec& a, const Vec& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec unit(std::size_t n, std::size_t i, long x = 1) {
  Vec v(n, 0);
  v[i] = x;
  return v;
}

Vec plus(const Vec& a, const Vec& b, long k = 1) {
  Vec c = a;
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += k * b[i];
  return c;
}

Euclidean classical(char letter, std::size_t n) {
  Euclidean e;
  const std::size_t dim = letter == 'A' ? n + 1 : n;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (i == j) continue;
      e.roots.push_back(plus(unit(dim, i), unit(dim, j), -1));
      if (letter != 'A' && i < j) {
        e.roots.push_back(plus(unit(dim, i), unit(dim, j)));
        e.roots.push_back(plus(unit(dim, i, -1), unit(dim, j), -1));
      }
    }
  for (std::size_t i = 0; i < dim; ++i) {
    if (letter == 'B') {
      e.roots.push_back(unit(dim, i));
      e.roots.push_back(unit(dim, i, -1));
    }
    if (letter == 'C') {
      e.roots.push_back(unit(dim, i, 2));
      e.roots.push_back(unit(dim, i, -2));
    }
  }
  for (std::size_t i = 0; i + 1 < dim; ++i) e.simple.push_back(plus(unit(dim, i), unit(dim, i + 1), -1));
  if (letter == 'A') e.simple.resize(n);
  if (letter == 'B') e.simple.push_back(unit(dim, n - 1));
  if (letter == 'C') e.simple.push_back(unit(dim, n - 1, 2));
  if (letter == 'D') e.simple.push_back(plus(unit(dim, n - 2), unit(dim, n - 1)));
  return e;
}

// naive orbit of a weight given by Dynkin labels, straight from the Cartan matrix
std::size_t naive_orbit_size(const std::vector<Vec>& cartan, const Vec& start) {
  std::set<Vec> seen{start};
  std::deque<Vec> q{start};
  while (!q.empty()) {
    Vec l = q.front();
    q.pop_front();
    for (std::size_t i = 0; i < l.size(); ++i) {
      Vec m = l;
      for (std::size_t k = 0; k < l.size(); ++k) m[k] -= l[i] * cartan[k][i];
      if (seen.insert(m).second) q.push_back(m);
    }
  }
  return seen.size();
}

// signed-permutation orbit of a vector in orthonormal coordinates
std::size_t hyperoctahedral_orbit(const Vec& v, bool even_signs) {
  std::set<Vec> seen{v};
  std::deque<Vec> q{v};
  while (!q.empty()) {
    Vec x = q.front();
    q.pop_front();
    std::vector<Vec> next;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      Vec y = x;
      std::swap(y[i], y[i + 1]);
      next.push_back(y);
    }
    Vec y = x;
    if (even_signs) {
      y[0] = -y[0];
      y[1] = -y[1];
    } else {
      y.back() = -y.back();
    }
    next.push_back(y);
    for (auto& z : next)
      if (seen.insert(z).second) q.push_back(z);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("types") {
  CHECK(DynkinType::parse("e7").str() == "E7");
  CHECK_THROWS_AS(DynkinType::parse("E9"), InadmissibleType);
  CHECK_THROWS_AS(DynkinType::parse("D2"), InadmissibleType);
  CHECK_THROWS_AS(DynkinType::parse("F5"), InadmissibleType);
  CHECK_THROWS_AS(DynkinType::parse("X"), ParseError);
  CHECK_THROWS_AS(RootSystem(DynkinType{'G', 3}), InadmissibleType);
}

TEST_CASE("classical Cartan matrices agree with orthonormal realizations") {
  for (char letter : {'A', 'B', 'C', 'D'})
    for (std::size_t n = (letter == 'D' ? 3 : 1); n <= 7; ++n) {
      if ((letter == 'B' || letter == 'C') && n < 2) continue;
      CAPTURE(letter);
      CAPTURE(n);
      Euclidean e = classical(letter, n);
      RootSystem rs(DynkinType{letter, static_cast<int>(n)});
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          CHECK(rs.cartan()[i][j] == 2 * ip(e.simple[i], e.simple[j]) / ip(e.simple[i], e.simple[i]));
      CHECK(rs.roots().size() == e.roots.size());
      long top = 0;
      for (const auto& r : e.roots) top = std::max(top, ip(r, r));
      std::size_t long_count = static_cast<std::size_t>(std::count_if(e.roots.begin(), e.roots.end(), [&](const Vec& r) { return ip(r, r) == top; }));
      CHECK(rs.long_roots().size() == (letter == 'A' || letter == 'D' ? rs.roots().size() : long_count));
    }
}

TEST_CASE("root counts") {
  std::map<std::string, std::size_t> classical_counts{
      {"A1", 2}, {"A2", 6}, {"A7", 56}, {"B3", 18}, {"C3", 18}, {"D4", 24}, {"D6", 60},
      {"E6", 72}, {"E7", 126}, {"E8", 240}, {"F4", 48}, {"G2", 12}};
  for (const auto& [name, count] : classical_counts) {
    RootSystem rs(DynkinType::parse(name));
    CHECK_MESSAGE(rs.roots().size() == count, name);
  }
  std::map<std::string, std::size_t> long_counts{{"B3", 12}, {"C3", 6}, {"G2", 6}, {"E6", 72}, {"E7", 126}, {"F4", 24}};
  for (const auto& [name, count] : long_counts) CHECK_MESSAGE(RootSystem(DynkinType::parse(name)).long_roots().size() == count, name);
  CHECK(RootSystem(DynkinType{'A', 2}).long_roots().size() == 6);
}

TEST_CASE("roots are closed under simple reflections and lengths are preserved") {
  for (const char* name : {"B4", "C4", "D5", "E6", "F4", "G2"}) {
    RootSystem rs(DynkinType::parse(name));
    std::set<Vec> all(rs.roots().begin(), rs.roots().end());
    for (const auto& r : rs.roots())
      for (int i = 1; i <= rs.rank(); ++i) {
        Vec s = rs.reflect_root(r, i);
        CHECK(all.count(s) == 1);
        CHECK(rs.squared_length(s) == rs.squared_length(r));
      }
    for (const auto& row : rs.cartan())
      for (long x : row) CHECK((x >= -3 && x <= 2));
  }
}

TEST_CASE("fundamental weights pair to the Kronecker delta with simple coroots") {
  for (const char* name : {"A4", "B3", "C4", "D5", "E8", "F4", "G2"}) {
    RootSystem rs(DynkinType::parse(name));
    for (int j = 1; j <= rs.rank(); ++j)
      for (int i = 1; i <= rs.rank(); ++i)
        CHECK(rs.pairing(rs.fundamental_weight(j), rs.simple_coroot(i)) == (i == j ? 1 : 0));
  }
}

TEST_CASE("Weyl orbits of fundamental weights") {
  // C3: lambda_3 = e1+e2+e3 under signed permutations
  RootSystem c3(DynkinType{'C', 3});
  CHECK(weyl_orbit(c3, c3.fundamental_weight(3)).size() == 8);
  CHECK(hyperoctahedral_orbit({1, 1, 1}, false) == 8);
  RootSystem e7(DynkinType{'E', 7});
  CHECK(weyl_orbit(e7, e7.fundamental_weight(7)).size() == 56);
  CHECK(weyl_orbit(e7, Vec(7, 0)).size() == 1);

  // |W| / |W_stab| for the exceptional cases
  CHECK(weyl_orbit(e7, e7.fundamental_weight(1)).size() == 2903040 / 23040);  // stabilizer D6
  RootSystem e6(DynkinType{'E', 6});
  CHECK(weyl_orbit(e6, e6.fundamental_weight(1)).size() == 51840 / 1920);  // D5
  CHECK(weyl_orbit(e6, e6.fundamental_weight(2)).size() == 51840 / 720);   // A5
  RootSystem f4(DynkinType{'F', 4});
  CHECK(weyl_orbit(f4, f4.fundamental_weight(1)).size() == 1152 / 48);  // C3
  CHECK(weyl_orbit(f4, f4.fundamental_weight(4)).size() == 1152 / 48);  // B3
  RootSystem g2(DynkinType{'G', 2});
  CHECK(weyl_orbit(g2, g2.fundamental_weight(1)).size() == 6);
  CHECK(weyl_orbit(g2, g2.fundamental_weight(2)).size() == 6);
  RootSystem e8(DynkinType{'E', 8});
  CHECK(weyl_orbit(e8, e8.fundamental_weight(8)).size() == 240);

  // classical orbits against signed permutations: lambda_j = e1+...+e_j
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t j = 1; j < n; ++j) {
      Vec v(n, 0);
      for (std::size_t k = 0; k < j; ++k) v[k] = 1;
      RootSystem b(DynkinType{'B', static_cast<int>(n)}), c(DynkinType{'C', static_cast<int>(n)});
      CHECK(weyl_orbit(b, b.fundamental_weight(static_cast<int>(j))).size() == hyperoctahedral_orbit(v, false));
      CHECK(weyl_orbit(c, c.fundamental_weight(static_cast<int>(j))).size() == hyperoctahedral_orbit(v, false));
      if (n >= 4 && j + 2 <= n) {
        RootSystem d(DynkinType{'D', static_cast<int>(n)});
        CHECK(weyl_orbit(d, d.fundamental_weight(static_cast<int>(j))).size() == hyperoctahedral_orbit(v, true));
      }
    }
}

TEST_CASE("orbit BFS agrees with a naive closure for every fundamental weight up to rank 7") {
  for (const char* name : {"A5", "B4", "C4", "D5", "E6", "E7", "F4", "G2"}) {
    RootSystem rs(DynkinType::parse(name));
    for (int j = 1; j <= rs.rank(); ++j) {
      auto orbit = weyl_orbit(rs, rs.fundamental_weight(j));
      CHECK(orbit.size() == naive_orbit_size(rs.cartan(), rs.fundamental_weight(j)));
      // words and offsets reproduce each point
      for (std::size_t p = 0; p < orbit.size(); p += 7) {
        Vec w = rs.fundamental_weight(j);
        for (int i : orbit[p].word) w = rs.reflect_weight(w, i);
        CHECK(w == orbit[p].weight);
        CHECK(rs.labels_of_root(orbit[p].offset) == plus(orbit[p].weight, rs.fundamental_weight(j), -1));
      }
    }
  }
}

TEST_CASE("orbits are deterministic") {
  RootSystem rs(DynkinType{'D', 5});
  auto a = weyl_orbit(rs, rs.fundamental_weight(5));
  auto b = weyl_orbit(rs, rs.fundamental_weight(5));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].weight == b[i].weight);
}

TEST_CASE("gradings") {
  RootSystem b4(DynkinType{'B', 4});
  Grading g = grading_by_node(b4, 1, Convention::coefficient);
  for (const auto& r : b4.roots()) {
    CHECK(std::labs(g.value(b4, r)) <= 1);
    CHECK(g.value(b4, plus(Vec(4, 0), r, -1)) == -g.value(b4, r));
  }
  RootSystem g2(DynkinType{'G', 2});
  for (int j : {1, 2}) {
    Grading h = grading_by_node(g2, j, Convention::coefficient);
    long top = 0;
    for (const auto& r : g2.roots()) top = std::max(top, std::labs(h.value(g2, r)));
    CHECK(top >= 2);
  }
  // linearity on root sums that are roots, for both conventions
  RootSystem f4(DynkinType{'F', 4});
  std::set<Vec> all(f4.roots().begin(), f4.roots().end());
  for (Convention c : {Convention::coefficient, Convention::coroot}) {
    Grading h = grading_by_node(f4, 3, c);
    for (const auto& a : f4.roots())
      for (const auto& b : f4.roots())
        if (all.count(plus(a, b))) CHECK(h.value(f4, plus(a, b)) == h.value(f4, a) + h.value(f4, b));
  }
  CHECK_THROWS_AS(grading_by_node(g2, 3, Convention::coroot), InvalidNode);
}

TEST_CASE("short grading nodes") {
  CHECK(short_grading_nodes(DynkinType{'E', 6}) == std::vector<int>{1, 6});
  CHECK(short_grading_nodes(DynkinType{'E', 7}) == std::vector<int>{7});
  CHECK(short_grading_nodes(DynkinType{'E', 8}).empty());
  CHECK(short_grading_nodes(DynkinType{'F', 4}).empty());
  CHECK(short_grading_nodes(DynkinType{'G', 2}).empty());
  CHECK(short_grading_nodes(DynkinType{'A', 5}) == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(short_grading_nodes(DynkinType{'B', 5}) == std::vector<int>{1});
  CHECK(short_grading_nodes(DynkinType{'C', 5}) == std::vector<int>{5});
  CHECK(short_grading_nodes(DynkinType{'D', 6}) == std::vector<int>{1, 5, 6});
}
