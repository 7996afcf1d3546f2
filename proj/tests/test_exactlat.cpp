#include <random>

#include "cstar/errors.hpp"
#include "cstar/exactlat.hpp"
#include "doctest.h"

using namespace cstar::exactlat;

namespace {

long euclid(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// cofactor expansion, independent of the Bareiss code
Int laplace(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Int>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Int t = m[0][c] * laplace(minor);
    s += (c % 2 == 0) ? t : Int(-t);
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// invariant factors from determinantal divisors: d_1...d_k = gcd of k-minors
std::vector<Int> invariant_factors_oracle(const IntMatrix& A) {
  std::vector<Int> dets{Int(1)};
  for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(A.rows(), k, 0, cur, rs);
    subsets(A.cols(), k, 0, cur, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = A(r[i], c[j]);
        Int d = laplace(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    dets.push_back(g);
  }
  std::vector<Int> f;
  for (std::size_t k = 1; k < dets.size(); ++k) f.push_back(dets[k] / dets[k - 1]);
  return f;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

void check_snf(const IntMatrix& A) {
  SnfResult r = snf(A);
  CHECK(r.U * A * r.V == r.S);
  CHECK(r.S.is_diagonal());
  CHECK(abs(r.U.determinant()) == 1);
  CHECK(abs(r.V.determinant()) == 1);
  std::vector<Int> diag;
  for (std::size_t i = 0; i < std::min(A.rows(), A.cols()); ++i)
    if (r.S(i, i) != 0) diag.push_back(r.S(i, i));
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) CHECK(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
  CHECK(diag == invariant_factors_oracle(A));
}

}  // namespace

TEST_CASE("snf of the identity is trivial") {
  IntMatrix I = IntMatrix::identity(3);
  SnfResult r = snf(I);
  CHECK(r.S == I);
  CHECK(r.U == I);
  CHECK(r.V == I);
}

TEST_CASE("snf of diag(2,3)") {
  IntMatrix A(2, 2);
  A(0, 0) = 2;
  A(1, 1) = 3;
  SnfResult r = snf(A);
  CHECK(r.S(0, 0) == 1);
  CHECK(r.S(1, 1) == 6);
  check_snf(A);
}

TEST_CASE("snf of the bordism ray matrix for type (1,1,3)") {
  // rays e0,e1,f0,f1,v,-v in Z^4
  std::vector<LatticeVector> rays{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, -1, -1}, {-1, -1, 1, 1}};
  IntMatrix R = IntMatrix::from_rows(rays, 4);
  SnfResult r = snf(R);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.S(i, i) == 1);
  CHECK(R.rows() - R.rank() == 2);
  check_snf(R);
}

TEST_CASE("snf agrees with determinantal divisors on random matrices") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    check_snf(random_matrix(rng, r, c, -6, 6));
  }
  // rank-deficient and zero inputs
  check_snf(IntMatrix(3, 2));
  IntMatrix dup(2, 3);
  dup(0, 0) = 4, dup(0, 1) = 6, dup(0, 2) = 8, dup(1, 0) = 2, dup(1, 1) = 3, dup(1, 2) = 4;
  check_snf(dup);
}

TEST_CASE("snf pivoting is deterministic") {
  std::mt19937 rng(11);
  IntMatrix A = random_matrix(rng, 4, 5, -9, 9);
  SnfResult a = snf(A), b = snf(A);
  CHECK(a.U == b.U);
  CHECK(a.V == b.V);
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix A = random_matrix(rng, n, n, -5, 5);
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = A(i, j);
    CHECK(A.determinant() == laplace(m));
  }
}

TEST_CASE("primitivity agrees with a reference Euclid on 1000 random vectors") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> d(-60, 60);
  for (int t = 0; t < 1000; ++t) {
    std::size_t n = 1 + rng() % 5;
    std::vector<long> xs(n);
    std::vector<Int> c(n);
    long g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = d(rng);
      c[i] = xs[i];
      g = euclid(g, xs[i]);
    }
    LatticeVector v(c);
    CHECK(v.content() == g);
    CHECK(v.is_primitive() == (g == 1));
  }
}

TEST_CASE("quotient by a coordinate vector") {
  QuotientMap q = quotient_lattice(2, LatticeVector{1, 0});
  CHECK(q.target_rank() == 1);
  CHECK(q.project(LatticeVector{5, 7}) == LatticeVector{7});
  CHECK(q.project(LatticeVector{1, 0}).is_zero());
}

TEST_CASE("quotient rejects non-primitive and zero vectors") {
  CHECK_THROWS_AS(quotient_lattice(3, LatticeVector{2, 0, 0}), cstar::NonPrimitiveVector);
  CHECK_THROWS_AS(quotient_lattice(3, LatticeVector{0, 0, 0}), cstar::ZeroVector);
}

TEST_CASE("quotient by v = sum e - sum f names the generators of the flip lattice") {
  // (r,s,n) = (2,1,5): e0,e1,e2,f0,f1,h1
  const std::size_t rank = 6;
  LatticeVector v{1, 1, 1, -1, -1, 0};
  QuotientMap q = quotient_lattice(rank, v);
  REQUIRE(q.target_rank() == 5);
  // e1,e2,f0,f1,h1 map to the standard basis; e0 to f0+f1-e1-e2
  for (std::size_t k = 1; k < rank; ++k) CHECK(q.project(LatticeVector::unit(rank, k)) == LatticeVector::unit(5, k - 1));
  CHECK(q.project(LatticeVector::unit(rank, 0)) == LatticeVector{-1, -1, 1, 1, 0});
  LatticeVector sum_e = q.project(LatticeVector{1, 1, 1, 0, 0, 0});
  LatticeVector sum_f = q.project(LatticeVector{0, 0, 0, 1, 1, 0});
  CHECK(sum_e == sum_f);
}

TEST_CASE("quotient maps: projection kills v and the section is a right inverse") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-7, 7);
  int done = 0;
  while (done < 200) {
    std::size_t n = 2 + rng() % 4;
    std::vector<Int> c(n);
    for (auto& x : c) x = d(rng);
    LatticeVector v(c);
    if (v.is_zero() || !v.is_primitive()) continue;
    QuotientMap q = quotient_lattice(n, v);
    CHECK(q.target_rank() == n - 1);
    CHECK(q.project(v).is_zero());
    CHECK(q.projection() * q.section() == IntMatrix::identity(n - 1));
    // lift-then-project is the identity, so project-lift-project is idempotent
    LatticeVector x(c);
    x[0] += 3;
    LatticeVector y = q.project(x);
    CHECK(q.project(q.lift(y)) == y);
    ++done;
  }
  // a vector without unit coordinates
  QuotientMap q = quotient_lattice(3, LatticeVector{2, 3, 5});
  CHECK(q.project(LatticeVector{2, 3, 5}).is_zero());
  CHECK(q.projection() * q.section() == IntMatrix::identity(2));
}

TEST_CASE("quotient by a span is saturated") {
  // span of (2,0,0),(0,2,0) saturates to the first two coordinates
  QuotientMap q = quotient_by_span(3, {LatticeVector{2, 0, 0}, LatticeVector{0, 2, 0}});
  REQUIRE(q.target_rank() == 1);
  CHECK(q.project(LatticeVector{1, 0, 0}).is_zero());
  CHECK(q.project(LatticeVector{0, 1, 0}).is_zero());
  CHECK(abs(q.project(LatticeVector{0, 0, 1})[0]) == 1);
  CHECK(q.projection() * q.section() == IntMatrix::identity(1));
}

TEST_CASE("integer kernel and integer solve") {
  IntMatrix A(1, 3);
  A(0, 0) = 2, A(0, 1) = 4, A(0, 2) = 6;
  auto K = integer_kernel(A);
  CHECK(K.size() == 2);
  for (const auto& k : K) CHECK((A * k).is_zero());
  // two independent generators
  CHECK(IntMatrix::from_rows(K, 3).rank() == 2);

  auto x = solve_integer(A, LatticeVector{2});
  REQUIRE(x);
  CHECK(A * *x == LatticeVector{2});
  CHECK_FALSE(solve_integer(A, LatticeVector{3}));
  auto xr = solve_rational(A, LatticeVector{3});
  REQUIRE(xr);
  CHECK(dot(std::vector<Rat>{(*xr)[0], (*xr)[1], (*xr)[2]}, LatticeVector{2, 4, 6}) == 3);
}
