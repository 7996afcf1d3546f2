#include <algorithm>
#include <cstdint>
#include <set>

#include "cstar/errors.hpp"
#include "cstar/fan.hpp"

namespace cstar::fan {

using exactlat::Rat;

namespace {

class Bits {
 public:
  void set(std::size_t i) {
    if (w_.size() <= i / 64) w_.resize(i / 64 + 1, 0);
    w_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.w_.resize(std::min(w_.size(), o.w_.size()));
    for (std::size_t i = 0; i < r.w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::uint64_t ow = i < o.w_.size() ? o.w_[i] : 0;
      if (w_[i] & ~ow) return false;
    }
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct DDRay {
  LatticeVector y;
  Bits tight;
};

LatticeVector normalize(const std::vector<Rat>& x) {
  Int l = 1;
  for (const Rat& q : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Int> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = Int(x[i] * l);
  return LatticeVector(std::move(c)).primitive();
}

std::vector<LatticeVector> sorted_unique(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<LatticeVector> extreme_rays(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                                        const std::vector<LatticeVector>& eqs) {
  // Work in coordinates of ker(eqs).
  std::vector<LatticeVector> basis = exactlat::integer_kernel(IntMatrix::from_rows(eqs, rank));
  const std::size_t k = basis.size();
  if (k == 0) return {};

  std::vector<LatticeVector> rows;
  for (const auto& a : ineqs) {
    std::vector<Int> r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = exactlat::dot(a, basis[j]);
    LatticeVector lr(std::move(r));
    if (!lr.is_zero()) rows.push_back(lr.primitive());
  }
  rows = sorted_unique(std::move(rows));
  if (exactlat::rank_of(rows, k) < k) throw NotPointed("inequalities leave a linear subspace");

  // k independent rows give a simplicial start
  std::vector<std::size_t> start, rest;
  std::vector<LatticeVector> chosen;
  if (rows.size() == k) {
    chosen = rows;  // independent by the rank check above
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (start.size() < k) {
        chosen.push_back(rows[i]);
        if (exactlat::rank_of(chosen, k) == chosen.size()) {
          start.push_back(i);
          continue;
        }
        chosen.pop_back();
      }
      rest.push_back(i);
    }
  }

  // columns of the inverse of the chosen rows
  std::vector<DDRay> cur;
  {
    IntMatrix B = IntMatrix::from_rows(chosen, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto x = exactlat::solve_rational(B, LatticeVector::unit(k, j));
      DDRay r{normalize(*x), {}};
      for (std::size_t t = 0; t < k; ++t)
        if (t != j) r.tight.set(t);
      cur.push_back(std::move(r));
    }
  }

  std::size_t processed = k;
  for (std::size_t idx : rest) {
    const LatticeVector& a = rows[idx];
    std::vector<std::size_t> pos, neg;
    std::vector<Int> val(cur.size());
    std::vector<DDRay> next;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      val[i] = exactlat::dot(a, cur[i].y);
      int s = sgn(val[i]);
      if (s > 0) pos.push_back(i);
      if (s < 0) neg.push_back(i);
      if (s >= 0) {
        DDRay r = cur[i];
        if (s == 0) r.tight.set(processed);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t p : pos)
      for (std::size_t n : neg) {
        Bits common = cur[p].tight & cur[n].tight;
        if (k >= 2 && common.count() < k - 2) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < cur.size() && adjacent; ++o)
          if (o != p && o != n && common.subset_of(cur[o].tight)) adjacent = false;
        if (!adjacent) continue;
        LatticeVector y = val[p] * cur[n].y - val[n] * cur[p].y;
        DDRay r{y.primitive(), common};
        r.tight.set(processed);
        next.push_back(std::move(r));
      }
    cur = std::move(next);
    ++processed;
  }

  std::vector<LatticeVector> out;
  for (const auto& r : cur) {
    LatticeVector x = LatticeVector::zero(rank);
    for (std::size_t j = 0; j < k; ++j) x += r.y[j] * basis[j];
    out.push_back(x.primitive());
  }
  return sorted_unique(std::move(out));
}

Cone::Cone(std::size_t rank, std::vector<LatticeVector> generators) : rank_(rank) {
  std::vector<LatticeVector> gens;
  for (auto& g : generators) {
    if (g.rank() != rank) throw DimensionMismatch("generator " + g.str() + " in rank " + std::to_string(rank));
    if (!g.is_zero()) gens.push_back(g.primitive());
  }
  gens = sorted_unique(std::move(gens));

  eqs_ = exactlat::integer_kernel(IntMatrix::from_rows(gens, rank));
  dim_ = rank - eqs_.size();
  if (gens.empty()) return;

  facets_ = extreme_rays(rank, gens, eqs_);
  if (gens.size() == dim_) {  // simplicial: every generator is extreme
    rays_ = gens;
    return;
  }
  if (exactlat::rank_of(facets_, rank) != dim_) throw NotPointed("cone generated by " + std::to_string(gens.size()) + " vectors contains a line");

  // keep the generators that are extreme: tight facets of rank dim-1
  for (const auto& g : gens) {
    std::vector<LatticeVector> tight;
    for (const auto& a : facets_)
      if (exactlat::dot(a, g) == 0) tight.push_back(a);
    if (exactlat::rank_of(tight, rank) + 1 == dim_) rays_.push_back(g);
  }

  // both descriptions must agree on the generators
  for (const auto& g : gens)
    if (!contains(g)) throw NotPointed("facet description misses a generator");
}

Cone Cone::from_inequalities(std::size_t rank, const std::vector<LatticeVector>& ineqs,
                             const std::vector<LatticeVector>& eqs) {
  return Cone(rank, extreme_rays(rank, ineqs, eqs));
}

bool Cone::contains(const LatticeVector& x) const {
  if (x.rank() != rank_) throw DimensionMismatch("point " + x.str() + " against a cone in rank " + std::to_string(rank_));
  for (const auto& e : eqs_)
    if (exactlat::dot(e, x) != 0) return false;
  for (const auto& a : facets_)
    if (exactlat::dot(a, x) < 0) return false;
  return true;
}

bool Cone::contains_in_relative_interior(const LatticeVector& x) const {
  if (x.rank() != rank_) throw DimensionMismatch("point " + x.str() + " against a cone in rank " + std::to_string(rank_));
  for (const auto& e : eqs_)
    if (exactlat::dot(e, x) != 0) return false;
  for (const auto& a : facets_)
    if (exactlat::dot(a, x) <= 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  return std::all_of(other.rays_.begin(), other.rays_.end(), [&](const LatticeVector& r) { return contains(r); });
}

bool Cone::is_face_of(const Cone& other) const {
  if (!other.contains(*this)) return false;
  LatticeVector x = relative_interior_point();
  // smallest face of `other` through x
  std::vector<LatticeVector> face_rays;
  for (const auto& r : other.rays_) {
    bool on = true;
    for (const auto& a : other.facets_)
      if (exactlat::dot(a, x) == 0 && exactlat::dot(a, r) != 0) {
        on = false;
        break;
      }
    if (on) face_rays.push_back(r);
  }
  return face_rays == rays_;
}

bool Cone::is_smooth() const {
  if (!is_simplicial()) return false;
  if (rays_.empty()) return true;
  exactlat::SnfResult r = exactlat::snf(IntMatrix::from_rows(rays_, rank_));
  for (std::size_t i = 0; i < dim_; ++i)
    if (r.S(i, i) != 1) return false;
  return true;
}

LatticeVector Cone::relative_interior_point() const {
  LatticeVector s = LatticeVector::zero(rank_);
  for (const auto& r : rays_) s += r;
  return s;
}

RaySet Cone::rays_on_facet(std::size_t facet) const {
  RaySet s;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (exactlat::dot(facets_.at(facet), rays_[i]) == 0) s.push_back(i);
  return s;
}

std::vector<RaySet> Cone::faces() const {
  RaySet all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<RaySet> facet_sets;
  for (std::size_t f = 0; f < facets_.size(); ++f) facet_sets.push_back(rays_on_facet(f));

  std::set<RaySet> seen{all};
  std::vector<RaySet> todo{all};
  while (!todo.empty()) {
    RaySet cur = std::move(todo.back());
    todo.pop_back();
    for (const auto& fs : facet_sets) {
      RaySet meet;
      std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(), std::back_inserter(meet));
      if (seen.insert(meet).second) todo.push_back(std::move(meet));
    }
  }
  std::vector<RaySet> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const RaySet& a, const RaySet& b) { return a.size() < b.size(); });
  return out;
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.rank() != b.rank()) throw DimensionMismatch("intersection of cones in ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
  std::vector<LatticeVector> ineqs = a.facet_normals(), eqs = a.equations();
  ineqs.insert(ineqs.end(), b.facet_normals().begin(), b.facet_normals().end());
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return Cone::from_inequalities(a.rank(), ineqs, eqs);
}

}  // namespace cstar::fan
