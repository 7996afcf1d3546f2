#include "cstar/exactlat.hpp"

#include <algorithm>
#include <sstream>

#include "cstar/errors.hpp"

namespace cstar::exactlat {

LatticeVector::LatticeVector(std::initializer_list<long> coords) {
  c_.reserve(coords.size());
  for (long x : coords) c_.emplace_back(x);
}

LatticeVector LatticeVector::zero(std::size_t rank) { return LatticeVector(std::vector<Int>(rank)); }

LatticeVector LatticeVector::unit(std::size_t rank, std::size_t i) {
  LatticeVector v = zero(rank);
  v.c_.at(i) = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

Int LatticeVector::content() const {
  Int g = 0;
  for (const Int& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

LatticeVector LatticeVector::primitive() const {
  Int g = content();
  if (g == 0 || g == 1) return *this;
  LatticeVector out = *this;
  for (Int& x : out.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector out = *this;
  for (Int& x : out.c_) x = -x;
  return out;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.rank() != rank()) throw DimensionMismatch("vector sum of ranks " + std::to_string(rank()) + " and " + std::to_string(o.rank()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.rank() != rank()) throw DimensionMismatch("vector difference of ranks " + std::to_string(rank()) + " and " + std::to_string(o.rank()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

LatticeVector operator*(const Int& k, const LatticeVector& a) {
  LatticeVector out = a;
  for (Int& x : out.c_) x *= k;
  return out;
}

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    int c = cmp(a.c_[i], b.c_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

Int dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.rank() != b.rank()) throw DimensionMismatch("pairing of ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
  Int s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const std::vector<Rat>& a, const LatticeVector& b) {
  if (a.size() != b.rank()) throw DimensionMismatch("rational pairing");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

// ---------------------------------------------------------------- matrices

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rank() != cols) throw DimensionMismatch("row of rank " + std::to_string(rows[i].rank()) + ", expected " + std::to_string(cols));
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<LatticeVector>& cols, std::size_t rows) {
  return from_rows(cols, rows).transpose();
}

LatticeVector IntMatrix::row(std::size_t i) const {
  return LatticeVector(std::vector<Int>(e_.begin() + i * c_, e_.begin() + (i + 1) * c_));
}

LatticeVector IntMatrix::col(std::size_t j) const {
  std::vector<Int> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return LatticeVector(std::move(v));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (c_ != o.r_) throw DimensionMismatch("matrix product " + std::to_string(r_) + "x" + std::to_string(c_) + " * " + std::to_string(o.r_) + "x" + std::to_string(o.c_));
  IntMatrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) p(i, j) += a * o(k, j);
    }
  return p;
}

LatticeVector IntMatrix::operator*(const LatticeVector& v) const {
  if (c_ != v.rank()) throw DimensionMismatch("matrix-vector product " + std::to_string(r_) + "x" + std::to_string(c_) + " * rank " + std::to_string(v.rank()));
  std::vector<Int> out(r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
  return LatticeVector(std::move(out));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < r_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t a, std::size_t b, const Int& k) {
  for (std::size_t j = 0; j < c_; ++j) (*this)(a, j) += k * (*this)(b, j);
}

void IntMatrix::add_col(std::size_t a, std::size_t b, const Int& k) {
  for (std::size_t i = 0; i < r_; ++i) (*this)(i, a) += k * (*this)(i, b);
}

void IntMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < c_; ++j) (*this)(a, j) = -(*this)(a, j);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

namespace {

// Fraction-free elimination; returns the rank and leaves `m` in echelon form.
std::size_t bareiss(IntMatrix& m, Int* det_sign_tracker = nullptr) {
  std::size_t rows = m.rows(), cols = m.cols(), rank = 0;
  Int prev = 1;
  int sign = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank) {
      m.swap_rows(piv, rank);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        Int t = m(rank, col) * m(i, j) - m(i, col) * m(rank, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, col) = 0;
    }
    prev = m(rank, col);
    ++rank;
  }
  if (det_sign_tracker) *det_sign_tracker = sign;
  return rank;
}

}  // namespace

std::size_t IntMatrix::rank() const {
  IntMatrix m = *this;
  return bareiss(m);
}

Int IntMatrix::determinant() const {
  if (r_ != c_) throw DimensionMismatch("determinant of a non-square matrix");
  if (r_ == 0) return 1;
  IntMatrix m = *this;
  Int sign;
  std::size_t rk = bareiss(m, &sign);
  if (rk < r_) return 0;
  return sign * m(r_ - 1, c_ - 1);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < r_; ++i) os << (i ? "," : "") << row(i).str();
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- SNF

SnfResult snf(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SnfResult res{A, IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& S = res.S;
  IntMatrix& U = res.U;
  IntMatrix& V = res.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block, first in row-major order
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          if (pi == m || mpz_cmpabs(S(i, j).get_mpz_t(), S(pi, pj).get_mpz_t()) < 0) pi = i, pj = j;
        }
      if (pi == m) goto done;  // trailing block is zero
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_cols(t, pj);
      V.swap_cols(t, pj);

      bool clean = true;
      const Int p = S(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), p.get_mpz_t());
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), p.get_mpz_t());
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and go again
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(S(i, j).get_mpz_t(), p.get_mpz_t())) {
            S.add_row(t, i, 1);
            U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
done:
  return res;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  const std::size_t n = U.rows();
  if (U.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = U(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DimensionMismatch("matrix is singular");
    std::swap(a[p], a[c]);
    Rat inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& x = a[i][n + j];
      if (x.get_den() != 1) throw DimensionMismatch("matrix is not unimodular");
      out(i, j) = x.get_num();
    }
  return out;
}

namespace {
std::size_t nonzero_diagonal(const IntMatrix& S) {
  std::size_t k = 0;
  while (k < std::min(S.rows(), S.cols()) && S(k, k) != 0) ++k;
  return k;
}
}  // namespace

std::vector<LatticeVector> integer_kernel(const IntMatrix& A) {
  if (A.rows() == 0) {
    std::vector<LatticeVector> basis;
    for (std::size_t j = 0; j < A.cols(); ++j) basis.push_back(LatticeVector::unit(A.cols(), j));
    return basis;
  }
  SnfResult r = snf(A);
  std::size_t k = nonzero_diagonal(r.S);
  std::vector<LatticeVector> basis;
  for (std::size_t j = k; j < A.cols(); ++j) basis.push_back(r.V.col(j));
  return basis;
}

std::optional<LatticeVector> solve_integer(const IntMatrix& A, const LatticeVector& b) {
  if (b.rank() != A.rows()) throw DimensionMismatch("right-hand side of rank " + std::to_string(b.rank()));
  if (A.rows() == 0) return LatticeVector::zero(A.cols());
  SnfResult r = snf(A);
  LatticeVector ub = r.U * b;
  std::size_t k = nonzero_diagonal(r.S);
  for (std::size_t i = k; i < A.rows(); ++i)
    if (ub[i] != 0) return std::nullopt;
  LatticeVector y = LatticeVector::zero(A.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (!mpz_divisible_p(ub[i].get_mpz_t(), r.S(i, i).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), r.S(i, i).get_mpz_t());
  }
  return r.V * y;
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& A, const LatticeVector& b) {
  const std::size_t m = A.rows(), n = A.cols();
  if (b.rank() != m) throw DimensionMismatch("right-hand side of rank " + std::to_string(b.rank()));
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = A(i, j);
    a[i][n] = b[i];
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    Rat inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = a[i][n];
  return x;
}

std::size_t rank_of(const std::vector<LatticeVector>& vs, std::size_t ambient) {
  return IntMatrix::from_rows(vs, ambient).rank();
}

// ---------------------------------------------------------------- quotients

QuotientMap::QuotientMap(IntMatrix projection, IntMatrix section)
    : proj_(std::move(projection)), sect_(std::move(section)) {
  if (proj_.cols() != sect_.rows() || proj_.rows() != sect_.cols())
    throw DimensionMismatch("projection and section shapes disagree");
}

namespace {

// Complement read off a unimodular U whose first k rows span the dual of the sublattice.
QuotientMap from_unimodular(const IntMatrix& U, std::size_t k) {
  const std::size_t n = U.rows();
  IntMatrix Uinv = unimodular_inverse(U);
  IntMatrix P(n - k, n), S(n, n - k);
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      P(i - k, j) = U(i, j);
      S(j, i - k) = Uinv(j, i);
    }
  return QuotientMap(std::move(P), std::move(S));
}

}  // namespace

QuotientMap quotient_lattice(std::size_t rank, const LatticeVector& v) {
  if (v.rank() != rank) throw DimensionMismatch("quotient vector of rank " + std::to_string(v.rank()) + " in rank " + std::to_string(rank));
  if (v.is_zero()) throw ZeroVector("cannot quotient by the zero vector");
  if (!v.is_primitive()) throw NonPrimitiveVector(v.str() + " has content " + v.content().get_str());

  // Drop a unit coordinate: the one of largest |v_p| when that is 1, otherwise the
  // lowest-index unit coordinate; without unit coordinates fall back to the SNF complement.
  std::size_t p = rank;
  for (std::size_t i = 0; i < rank; ++i)
    if (abs(v[i]) == 1) {
      p = i;
      break;
    }
  if (p == rank) {
    IntMatrix col = IntMatrix::from_columns({v}, rank);
    return from_unimodular(snf(col).U, 1);
  }

  IntMatrix P(rank - 1, rank), S(rank, rank - 1);
  for (std::size_t k = 0, row = 0; k < rank; ++k) {
    if (k == p) continue;
    P(row, k) = 1;
    P(row, p) = -(v[p] * v[k]);
    S(k, row) = 1;
    ++row;
  }
  return QuotientMap(std::move(P), std::move(S));
}

QuotientMap quotient_by_span(std::size_t rank, const std::vector<LatticeVector>& gens) {
  std::vector<LatticeVector> nz;
  for (const auto& g : gens) {
    if (g.rank() != rank) throw DimensionMismatch("generator of rank " + std::to_string(g.rank()) + " in rank " + std::to_string(rank));
    if (!g.is_zero()) nz.push_back(g);
  }
  if (nz.empty()) return QuotientMap(IntMatrix::identity(rank), IntMatrix::identity(rank));
  if (rank_of(nz, rank) == 1) return quotient_lattice(rank, nz.front().primitive());
  IntMatrix G = IntMatrix::from_columns(nz, rank);
  SnfResult r = snf(G);
  return from_unimodular(r.U, nonzero_diagonal(r.S));
}

}  // namespace cstar::exactlat
