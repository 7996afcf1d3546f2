#include <algorithm>
#include <map>
#include <set>

#include "cstar/errors.hpp"
#include "cstar/fan.hpp"

namespace cstar::fan {

using exactlat::Rat;

namespace {

std::vector<LatticeVector> pick(const std::vector<LatticeVector>& rays, const RaySet& s) {
  std::vector<LatticeVector> out;
  out.reserve(s.size());
  for (std::size_t i : s) out.push_back(rays.at(i));
  return out;
}

bool is_subset(const RaySet& a, const RaySet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::string rs_str(const RaySet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// A valid inequality a >= 0 of the simplicial cone a_cone with a <= 0 on b_cone,
// vanishing on b_cone exactly at the common rays, forces the two cones to meet
// in the face spanned by those rays.
bool separated_at_common_face(const Cone& a_cone, const std::vector<LatticeVector>& b_rays, const std::set<LatticeVector>& common) {
  if (!a_cone.is_simplicial()) return false;
  auto separates = [&](const LatticeVector& a) {
    for (const auto& u : b_rays) {
      int s = sgn(exactlat::dot(a, u));
      if (s > 0 || (s == 0) != (common.count(u) > 0)) return false;
    }
    return true;
  };
  for (const auto& a : a_cone.facet_normals())
    if (separates(a)) return true;
  for (const auto& e : a_cone.equations())
    if (separates(e) || separates(-e)) return true;
  return false;
}

}  // namespace

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RaySet> max_cones,
         std::vector<std::string> ray_labels)
    : rank_(rank), rays_(std::move(rays)), labels_(std::move(ray_labels)) {
  if (!labels_.empty() && labels_.size() != rays_.size())
    throw InvalidFan(std::to_string(labels_.size()) + " labels for " + std::to_string(rays_.size()) + " rays");
  std::set<LatticeVector> distinct;
  for (const auto& u : rays_) {
    if (u.rank() != rank_) throw InvalidFan("ray " + u.str() + " is not in rank " + std::to_string(rank_));
    if (u.is_zero()) throw InvalidFan("zero ray");
    if (!u.is_primitive()) throw InvalidFan("ray " + u.str() + " is not primitive");
    if (!distinct.insert(u).second) throw InvalidFan("ray " + u.str() + " listed twice");
  }
  if (max_cones.empty()) max_cones.push_back({});

  std::vector<RaySet> sets;
  for (auto s : max_cones) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t i : s)
      if (i >= rays_.size()) throw InvalidFan("ray index " + std::to_string(i) + " out of range");
    if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(std::move(s));
  }

  std::vector<Cone> cones;
  for (const auto& s : sets) {
    Cone c(rank_, pick(rays_, s));
    if (c.rays().size() != s.size())
      throw InvalidFan("cone " + rs_str(s) + " lists a ray that is not extreme");
    cones.push_back(std::move(c));
  }

  // drop listed cones that are faces of other listed cones
  for (std::size_t i = 0; i < sets.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < sets.size() && !dominated; ++j)
      if (i != j && sets[i].size() < sets[j].size() && is_subset(sets[i], sets[j]) && cones[i].is_face_of(cones[j]))
        dominated = true;
    if (!dominated) {
      max_.push_back(sets[i]);
      max_cones_.push_back(cones[i]);
    }
  }

  std::vector<bool> used(rays_.size(), false);
  for (const auto& s : max_)
    for (std::size_t i : s) used[i] = true;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) throw InvalidFan("ray " + rays_[i].str() + " lies in no cone");

  // pairwise: common rays span a common face, and nothing else is shared
  for (std::size_t i = 0; i < max_.size(); ++i)
    for (std::size_t j = i + 1; j < max_.size(); ++j) {
      RaySet common;
      std::set_intersection(max_[i].begin(), max_[i].end(), max_[j].begin(), max_[j].end(), std::back_inserter(common));
      auto common_rays = pick(rays_, common);
      std::set<LatticeVector> common_set(common_rays.begin(), common_rays.end());
      if (separated_at_common_face(max_cones_[i], max_cones_[j].rays(), common_set) ||
          separated_at_common_face(max_cones_[j], max_cones_[i].rays(), common_set))
        continue;
      Cone tau(rank_, pick(rays_, common));
      if (!tau.is_face_of(max_cones_[i]) || !tau.is_face_of(max_cones_[j]))
        throw InvalidFan("cones " + rs_str(max_[i]) + " and " + rs_str(max_[j]) + " share rays that do not span a common face");
      Cone meet = intersect(max_cones_[i], max_cones_[j]);
      if (!tau.contains(meet))
        throw InvalidFan("cones " + rs_str(max_[i]) + " and " + rs_str(max_[j]) + " overlap beyond a common face");
    }

  // face poset
  std::set<RaySet> all;
  for (std::size_t i = 0; i < max_.size(); ++i) {
    // Cone sorts its rays; map local positions back to fan indices
    std::vector<std::size_t> local(max_cones_[i].rays().size());
    for (std::size_t t = 0; t < local.size(); ++t)
      local[t] = static_cast<std::size_t>(std::find(rays_.begin(), rays_.end(), max_cones_[i].rays()[t]) - rays_.begin());
    for (const auto& face : max_cones_[i].faces()) {
      RaySet g;
      for (std::size_t t : face) g.push_back(local[t]);
      std::sort(g.begin(), g.end());
      all.insert(std::move(g));
    }
  }
  all_.assign(all.begin(), all.end());
  std::stable_sort(all_.begin(), all_.end(), [](const RaySet& a, const RaySet& b) { return a.size() < b.size(); });
}

std::string Fan::label(std::size_t i) const {
  if (!labels_.empty()) return labels_.at(i);
  return "u" + std::to_string(i);
}

std::vector<RaySet> Fan::cones_of_dim(std::size_t d) const {
  std::vector<RaySet> out;
  for (const auto& s : all_)
    if (exactlat::rank_of(pick(rays_, s), rank_) == d) out.push_back(s);
  return out;
}

bool Fan::has_cone(const RaySet& s) const {
  RaySet t = s;
  std::sort(t.begin(), t.end());
  return std::binary_search(all_.begin(), all_.end(), t, [](const RaySet& a, const RaySet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
}

Cone Fan::cone(const RaySet& s) const { return Cone(rank_, pick(rays_, s)); }

std::optional<std::size_t> Fan::ray_index(const LatticeVector& u) const {
  auto it = std::find(rays_.begin(), rays_.end(), u);
  if (it == rays_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

std::optional<std::size_t> Fan::ray_index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<RaySet> Fan::find_cone(const Cone& c) const {
  if (c.rank() != rank_) return std::nullopt;
  RaySet s;
  for (const auto& r : c.rays()) {
    auto i = ray_index(r);
    if (!i) return std::nullopt;
    s.push_back(*i);
  }
  std::sort(s.begin(), s.end());
  if (!has_cone(s)) return std::nullopt;
  return s;
}

std::vector<std::size_t> Fan::max_cones_containing(const RaySet& s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < max_.size(); ++i)
    if (is_subset(s, max_[i])) out.push_back(i);
  return out;
}

bool Fan::in_support(const LatticeVector& x) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(), [&](const Cone& c) { return c.contains(x); });
}

std::optional<RaySet> Fan::cone_containing_in_relative_interior(const LatticeVector& x) const {
  for (std::size_t i = 0; i < max_.size(); ++i) {
    const Cone& c = max_cones_[i];
    if (!c.contains(x)) continue;
    RaySet s;
    for (std::size_t r : max_[i]) {
      bool on = true;
      for (const auto& a : c.facet_normals())
        if (exactlat::dot(a, x) == 0 && exactlat::dot(a, rays_[r]) != 0) {
          on = false;
          break;
        }
      if (on) s.push_back(r);
    }
    return s;
  }
  return std::nullopt;
}

bool Fan::is_smooth() const {
  return std::all_of(max_cones_.begin(), max_cones_.end(), [](const Cone& c) { return c.is_smooth(); });
}

bool Fan::is_simplicial() const {
  return std::all_of(max_cones_.begin(), max_cones_.end(), [](const Cone& c) { return c.is_simplicial(); });
}

bool Fan::is_pure() const {
  return std::all_of(max_cones_.begin(), max_cones_.end(), [&](const Cone& c) { return c.dim() == max_cones_.front().dim(); });
}

bool operator==(const Fan& a, const Fan& b) {
  if (a.rank_ != b.rank_ || a.rays_ != b.rays_) return false;
  std::vector<RaySet> x = a.max_, y = b.max_;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

std::string describe(const Fan& f, const RaySet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + f.label(s[i]);
  return out + "}";
}

// ---------------------------------------------------------------- stars

StarQuotient star_quotient_with_map(const Fan& f, const RaySet& c) {
  RaySet cs = c;
  std::sort(cs.begin(), cs.end());
  if (!f.has_cone(cs)) throw ConeNotInFan(rs_str(cs));
  QuotientMap q = exactlat::quotient_by_span(f.rank(), pick(f.rays(), cs));

  std::vector<std::size_t> containing = f.max_cones_containing(cs);
  std::set<std::size_t> in_star;
  for (std::size_t m : containing)
    for (std::size_t r : f.max_cones()[m])
      if (!std::binary_search(cs.begin(), cs.end(), r)) in_star.insert(r);

  std::vector<LatticeVector> rays;
  std::vector<std::string> labels;
  std::map<std::size_t, std::size_t> where;
  for (std::size_t r : in_star) {
    LatticeVector img = q.project(f.ray(r)).primitive();
    auto it = std::find(rays.begin(), rays.end(), img);
    if (it == rays.end()) {
      where[r] = rays.size();
      rays.push_back(img);
      if (f.has_labels()) labels.push_back(f.label(r));
    } else {
      where[r] = static_cast<std::size_t>(it - rays.begin());
    }
  }
  std::vector<RaySet> cones;
  for (std::size_t m : containing) {
    RaySet s;
    for (std::size_t r : f.max_cones()[m])
      if (where.count(r)) s.push_back(where[r]);
    cones.push_back(std::move(s));
  }
  return {Fan(q.target_rank(), std::move(rays), std::move(cones), std::move(labels)), std::move(q)};
}

Fan star_quotient(const Fan& f, const Cone& c) {
  auto s = f.find_cone(c);
  if (!s) throw ConeNotInFan("cone with " + std::to_string(c.rays().size()) + " rays is not a cone of the fan");
  return star_quotient_with_map(f, *s).fan;
}

// ---------------------------------------------------------------- refinement

namespace {

// a point of `sigma` outside |f|, assuming the f-cones meeting relint sigma are lower dimensional
std::optional<LatticeVector> uncovered_point(const Fan& f, const Cone& sigma) {
  const auto& r = sigma.rays();
  std::size_t tries = f.cones().size() * (r.size() + 1) + 4;
  for (std::size_t t = 2; t < tries + 2; ++t) {
    LatticeVector x = LatticeVector::zero(sigma.rank());
    Int w = 1;
    for (const auto& u : r) {
      x += w * u;
      w *= static_cast<unsigned long>(t);
    }
    if (!f.in_support(x)) return x;
  }
  return std::nullopt;
}

}  // namespace

RefinementCheck check_refinement(const Fan& f1, const Fan& f2) {
  RefinementCheck out;
  if (f1.rank() != f2.rank()) {
    out.ok = false;
    out.reason = "different lattice ranks";
    return out;
  }
  for (std::size_t i = 0; i < f1.max_cones().size(); ++i) {
    const Cone& tau = f1.max_cone(i);
    bool inside = false;
    for (std::size_t j = 0; j < f2.max_cones().size() && !inside; ++j) inside = f2.max_cone(j).contains(tau);
    if (!inside) {
      out.ok = false;
      out.reason = "cone " + describe(f1, f1.max_cones()[i]) + " lies in no cone of the coarser fan";
      out.witness = tau.relative_interior_point();
      return out;
    }
  }

  for (std::size_t j = 0; j < f2.max_cones().size(); ++j) {
    const Cone& sigma = f2.max_cone(j);
    std::vector<RaySet> pieces;
    for (const auto& s : f1.cones()) {
      if (s.size() < sigma.dim()) continue;
      Cone c = f1.cone(s);
      if (c.dim() == sigma.dim() && sigma.contains(c)) pieces.push_back(s);
    }
    if (pieces.empty()) {
      out.ok = false;
      out.reason = "cone " + describe(f2, f2.max_cones()[j]) + " is not covered";
      out.witness = uncovered_point(f1, sigma);
      return out;
    }
    std::map<RaySet, std::vector<std::size_t>> wall_use;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      Cone c = f1.cone(pieces[p]);
      for (std::size_t fct = 0; fct < c.facet_normals().size(); ++fct) {
        RaySet w;
        for (std::size_t loc : c.rays_on_facet(fct)) w.push_back(*f1.ray_index(c.rays()[loc]));
        std::sort(w.begin(), w.end());
        wall_use[w].push_back(p);
      }
    }
    for (const auto& [w, users] : wall_use) {
      if (users.size() == 2) continue;
      bool boundary = false;
      for (const auto& a : sigma.facet_normals()) {
        bool all_zero = true;
        for (std::size_t r : w)
          if (exactlat::dot(a, f1.ray(r)) != 0) {
            all_zero = false;
            break;
          }
        if (all_zero) {
          boundary = true;
          break;
        }
      }
      if (boundary && users.size() == 1) continue;
      out.ok = false;
      if (users.size() > 2) {
        out.reason = "wall " + describe(f1, w) + " is shared by " + std::to_string(users.size()) + " cones";
        return out;
      }
      out.reason = "cone " + describe(f2, f2.max_cones()[j]) + " is not covered across wall " + describe(f1, w);
      LatticeVector cw = LatticeVector::zero(f1.rank()), away = LatticeVector::zero(f1.rank());
      for (std::size_t r : w) cw += f1.ray(r);
      for (std::size_t r : pieces[users.front()])
        if (!std::binary_search(w.begin(), w.end(), r)) away += f1.ray(r);
      Int t = 1;
      for (int k = 0; k < 64; ++k, t *= 2) {
        LatticeVector x = t * cw - away;
        if (sigma.contains_in_relative_interior(x) && !f1.in_support(x)) {
          out.witness = x;
          break;
        }
      }
      return out;
    }
  }
  return out;
}

bool refines(const Fan& f1, const Fan& f2) { return check_refinement(f1, f2).ok; }

// ---------------------------------------------------------------- divisors

TDivisor zero_divisor(const Fan& f) { return TDivisor{std::vector<Int>(f.rays().size())}; }

TDivisor ray_divisor(const Fan& f, std::size_t ray, long coeff) {
  TDivisor d = zero_divisor(f);
  d.coeffs.at(ray) = coeff;
  return d;
}

TDivisor principal_divisor(const Fan& f, const LatticeVector& m) {
  TDivisor d;
  for (const auto& u : f.rays()) d.coeffs.push_back(exactlat::dot(m, u));
  return d;
}

TDivisor operator+(const TDivisor& a, const TDivisor& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw DimensionMismatch("divisors on different ray sets");
  TDivisor d = a;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) d.coeffs[i] += b.coeffs[i];
  return d;
}

namespace {

LatticeVector cartier_on(const Fan& f, std::size_t max_index, const TDivisor& d) {
  const RaySet& s = f.max_cones().at(max_index);
  IntMatrix A = IntMatrix::from_rows(pick(f.rays(), s), f.rank());
  LatticeVector b = LatticeVector::zero(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b[i] = -d.coeffs.at(s[i]);
  auto m = exactlat::solve_integer(A, b);
  if (!m) throw NotCartier("no integral linear function on cone " + describe(f, s));
  return *m;
}

}  // namespace

CartierData cartier_data(const Fan& f, const TDivisor& d) {
  if (d.coeffs.size() != f.rays().size())
    throw DimensionMismatch(std::to_string(d.coeffs.size()) + " coefficients for " + std::to_string(f.rays().size()) + " rays");
  CartierData cd;
  for (std::size_t i = 0; i < f.max_cones().size(); ++i) cd.m.push_back(cartier_on(f, i, d));
  return cd;
}

std::vector<Wall> walls(const Fan& f) {
  std::vector<Wall> out;
  if (f.rank() == 0) return out;
  for (const auto& s : f.cones_of_dim(f.rank() - 1)) {
    Wall w{s, {}};
    for (std::size_t m : f.max_cones_containing(s))
      if (f.max_cone(m).dim() == f.rank()) w.max_cones.push_back(m);
    out.push_back(std::move(w));
  }
  return out;
}

LatticeVector wall_transversal(const Fan& f, const RaySet& wall, std::size_t toward) {
  QuotientMap q = exactlat::quotient_by_span(f.rank(), pick(f.rays(), wall));
  if (q.target_rank() != 1) throw NotCompactCurve(describe(f, wall) + " is not of codimension one");
  for (std::size_t r : f.max_cones().at(toward)) {
    Int img = q.project(f.ray(r))[0];
    if (img != 0) return q.lift(LatticeVector{img > 0 ? 1L : -1L});
  }
  throw NotCompactCurve("cone " + describe(f, f.max_cones()[toward]) + " does not leave the wall");
}

Int curve_degree(const Fan& f, const RaySet& wall, const TDivisor& d) {
  RaySet w = wall;
  std::sort(w.begin(), w.end());
  if (!f.has_cone(w)) throw ConeNotInFan(rs_str(w));
  std::vector<std::size_t> adj;
  for (std::size_t m : f.max_cones_containing(w))
    if (f.max_cone(m).dim() == f.rank()) adj.push_back(m);
  if (adj.size() != 2 || f.cone(w).dim() + 1 != f.rank())
    throw NotCompactCurve(describe(f, w) + " bounds " + std::to_string(adj.size()) + " full-dimensional cones");
  LatticeVector m1 = cartier_on(f, adj[0], d), m2 = cartier_on(f, adj[1], d);
  return exactlat::dot(m1 - m2, wall_transversal(f, w, adj[1]));
}

Int curve_degree(const Fan& f, const Cone& wall, const TDivisor& d) {
  auto s = f.find_cone(wall);
  if (!s) throw ConeNotInFan("wall is not a cone of the fan");
  return curve_degree(f, *s, d);
}

ClassGroup class_group(const Fan& f) {
  IntMatrix R = IntMatrix::from_rows(f.rays(), f.rank());
  if (R.rank() < f.rank()) throw TorusFactor("rays span a proper subspace");
  exactlat::SnfResult r = exactlat::snf(R);
  ClassGroup g;
  g.free_rank = f.rays().size() - f.rank();
  for (std::size_t i = 0; i < f.rank(); ++i)
    if (r.S(i, i) > 1) g.torsion.push_back(r.S(i, i));
  return g;
}

// ---------------------------------------------------------------- isomorphism

namespace {

// A with A*a_i = b_{perm[i]} on the given rays, checked integral unimodular and cone-preserving.
std::optional<IntMatrix> try_map(const Fan& a, const Fan& b, const std::vector<std::size_t>& image) {
  std::set<RaySet> target(b.max_cones().begin(), b.max_cones().end()), mapped;
  for (const auto& s : a.max_cones()) {
    RaySet t;
    for (std::size_t i : s) t.push_back(image[i]);
    std::sort(t.begin(), t.end());
    mapped.insert(t);
  }
  if (mapped != target) return std::nullopt;

  const std::size_t n = a.rank();
  // unknowns: entries of A, row-major
  IntMatrix M(a.rays().size() * n, n * n);
  LatticeVector rhs = LatticeVector::zero(a.rays().size() * n);
  for (std::size_t i = 0; i < a.rays().size(); ++i)
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) M(i * n + r, r * n + c) = a.ray(i)[c];
      rhs[i * n + r] = b.ray(image[i])[r];
    }
  auto sol = exactlat::solve_integer(M, rhs);
  if (!sol) return std::nullopt;
  IntMatrix A(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) A(r, c) = (*sol)[r * n + c];
  Int det = A.determinant();
  if (det != 1 && det != -1) return std::nullopt;
  return A;
}

}  // namespace

std::optional<IntMatrix> lattice_isomorphism(const Fan& a, const Fan& b) {
  if (a.rank() != b.rank() || a.rays().size() != b.rays().size() || a.max_cones().size() != b.max_cones().size())
    return std::nullopt;
  const std::size_t nr = a.rays().size();
  if (nr == 0) return IntMatrix::identity(a.rank());

  if (a.has_labels() && b.has_labels()) {
    std::vector<std::size_t> image(nr);
    bool ok = true;
    for (std::size_t i = 0; i < nr && ok; ++i) {
      auto j = b.ray_index(a.label(i));
      if (!j) ok = false;
      else image[i] = *j;
    }
    if (ok && std::set<std::size_t>(image.begin(), image.end()).size() == nr)
      if (auto A = try_map(a, b, image)) return A;
  }

  // bounded search over ray bijections
  std::vector<std::size_t> image(nr);
  for (std::size_t i = 0; i < nr; ++i) image[i] = i;
  std::size_t budget = 200000;
  do {
    if (auto A = try_map(a, b, image)) return A;
  } while (--budget > 0 && std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

}  // namespace cstar::fan
