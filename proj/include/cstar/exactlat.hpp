#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace cstar::exactlat {

using Int = mpz_class;
using Rat = mpq_class;

// A point of Z^rank. Primitivity is a predicate, never enforced here.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<Int> coords) : c_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long> coords);

  static LatticeVector zero(std::size_t rank);
  static LatticeVector unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return c_.size(); }
  const Int& operator[](std::size_t i) const { return c_[i]; }
  Int& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Int>& coords() const { return c_; }

  bool is_zero() const;
  Int content() const;  // gcd of the coordinates, 0 for the zero vector
  bool is_primitive() const { return content() == 1; }
  LatticeVector primitive() const;  // divide by content; zero stays zero

  LatticeVector operator-() const;
  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Int& k, const LatticeVector& a);

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

  std::string str() const;  // "(1,0,-2)"

 private:
  std::vector<Int> c_;
};

Int dot(const LatticeVector& a, const LatticeVector& b);
Rat dot(const std::vector<Rat>& a, const LatticeVector& b);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<LatticeVector>& cols, std::size_t rows);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Int& operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

  LatticeVector row(std::size_t i) const;
  LatticeVector col(std::size_t j) const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  LatticeVector operator*(const LatticeVector& v) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const Int& k);
  void add_col(std::size_t a, std::size_t b, const Int& k);
  void negate_row(std::size_t a);

  bool is_diagonal() const;
  std::size_t rank() const;
  Int determinant() const;  // square only (Bareiss)
  std::string str() const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Int> e_;
};

struct SnfResult {
  IntMatrix S, U, V;  // U * A * V == S
};

// Smith normal form with smallest-|.| pivoting, ties broken by row-major index.
SnfResult snf(const IntMatrix& A);

// Inverse of a unimodular matrix; throws DimensionMismatch otherwise.
IntMatrix unimodular_inverse(const IntMatrix& U);

// Saturated basis of {x in Z^cols : A x = 0}, as vectors of length cols.
std::vector<LatticeVector> integer_kernel(const IntMatrix& A);

// Some integer x with A x = b, if one exists.
std::optional<LatticeVector> solve_integer(const IntMatrix& A, const LatticeVector& b);

// Rational solve of A x = b (any solution), if consistent.
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& A, const LatticeVector& b);

// Rank over Q of a list of vectors.
std::size_t rank_of(const std::vector<LatticeVector>& vs, std::size_t ambient);

// Projection N -> N/L with L saturated, and a section of it.
class QuotientMap {
 public:
  QuotientMap() = default;
  QuotientMap(IntMatrix projection, IntMatrix section);

  std::size_t source_rank() const { return proj_.cols(); }
  std::size_t target_rank() const { return proj_.rows(); }
  const IntMatrix& projection() const { return proj_; }
  const IntMatrix& section() const { return sect_; }

  LatticeVector project(const LatticeVector& x) const { return proj_ * x; }
  LatticeVector lift(const LatticeVector& y) const { return sect_ * y; }

 private:
  IntMatrix proj_, sect_;
};

// N -> N / Zv for primitive v (see the pivot rule in the implementation).
QuotientMap quotient_lattice(std::size_t rank, const LatticeVector& v);

// N -> N / saturation(span(gens)). Identity when gens span nothing.
QuotientMap quotient_by_span(std::size_t rank, const std::vector<LatticeVector>& gens);

}  // namespace cstar::exactlat
