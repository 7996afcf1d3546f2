#include "cstar/tflow.hpp"

#include <algorithm>
#include <functional>

#include "cstar/errors.hpp"

namespace cstar::tflow {

using exactlat::IntMatrix;
using exactlat::Rat;
using fan::Cone;

OneParamSubgroup::OneParamSubgroup(LatticeVector v) : v_(std::move(v)) {
  if (v_.is_zero()) throw ZeroVector("the one-parameter subgroup must be nontrivial");
  if (!v_.is_primitive()) throw NonPrimitiveVector(v_.str() + "; divide by " + v_.content().get_str());
}

namespace {

std::vector<LatticeVector> pick(const Fan& f, const RaySet& s) {
  std::vector<LatticeVector> out;
  for (std::size_t i : s) out.push_back(f.ray(i));
  return out;
}

bool in_span(const Fan& f, const RaySet& s, const LatticeVector& v) {
  std::vector<LatticeVector> rows = pick(f, s);
  std::size_t r = exactlat::rank_of(rows, f.rank());
  rows.push_back(v);
  return exactlat::rank_of(rows, f.rank()) == r;
}

bool subset(const RaySet& a, const RaySet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// coordinates of v in the ray basis of a smooth full-dimensional cone, aligned with its RaySet
std::vector<Int> coords_in_cone(const Fan& f, std::size_t max_cone, const LatticeVector& v) {
  const RaySet& s = f.max_cones().at(max_cone);
  const Cone& c = f.max_cone(max_cone);
  if (c.dim() != f.rank() || !c.is_smooth())
    throw NotSmoothCone(fan::describe(f, s) + " is not smooth of full dimension");
  auto x = exactlat::solve_integer(IntMatrix::from_columns(pick(f, s), f.rank()), v);
  return x->coords();
}

LatticeVector cartier_m(const Fan& f, std::size_t max_cone, const TDivisor& d) {
  const RaySet& s = f.max_cones().at(max_cone);
  LatticeVector b = LatticeVector::zero(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b[i] = -d.coeffs.at(s[i]);
  auto m = exactlat::solve_integer(IntMatrix::from_rows(pick(f, s), f.rank()), b);
  if (!m) throw NotCartier("divisor is not Cartier on " + fan::describe(f, s));
  return *m;
}

// rational linear function with <m,u_rho> = -a_rho on a cone
std::vector<Rat> rational_m(const Fan& f, std::size_t max_cone, const TDivisor& d) {
  const RaySet& s = f.max_cones().at(max_cone);
  LatticeVector b = LatticeVector::zero(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b[i] = -d.coeffs.at(s[i]);
  auto m = exactlat::solve_rational(IntMatrix::from_rows(pick(f, s), f.rank()), b);
  if (!m) throw NotCartier("divisor is not Q-Cartier on " + fan::describe(f, s));
  return *m;
}

// component holding the torus-fixed point of a full-dimensional max cone
std::size_t component_of(const std::vector<FixedComponent>& comps, const RaySet& cone) {
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (subset(comps[i].min_cone, cone)) return i;
  throw InvalidFan("cone " + std::to_string(cone.size()) + " rays meets no fixed component");
}

// image of v in N/N_wall as a signed integer, positive toward `toward`
Int transversal_coordinate(const Fan& f, const RaySet& wall, std::size_t toward, const LatticeVector& v) {
  auto q = exactlat::quotient_by_span(f.rank(), pick(f, wall));
  Int side = 0;
  for (std::size_t r : f.max_cones()[toward]) {
    side = q.project(f.ray(r))[0];
    if (side != 0) break;
  }
  Int x = q.project(v)[0];
  return side > 0 ? x : Int(-x);
}

}  // namespace

std::optional<RaySet> limit_cone(const Fan& f, const RaySet& sigma, const LatticeVector& v) {
  RaySet s = sigma;
  std::sort(s.begin(), s.end());
  if (!f.has_cone(s)) throw ConeNotInFan(fan::describe(f, s));
  auto q = exactlat::quotient_by_span(f.rank(), pick(f, s));
  LatticeVector vb = q.project(v);
  for (std::size_t m : f.max_cones_containing(s)) {
    RaySet rest;
    std::vector<LatticeVector> imgs;
    for (std::size_t r : f.max_cones()[m])
      if (!std::binary_search(s.begin(), s.end(), r)) {
        rest.push_back(r);
        imgs.push_back(q.project(f.ray(r)));
      }
    Cone img(q.target_rank(), imgs);
    if (!img.contains(vb)) continue;
    RaySet tau = s;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      bool on = true;
      for (const auto& a : img.facet_normals())
        if (exactlat::dot(a, vb) == 0 && exactlat::dot(a, imgs[i]) != 0) {
          on = false;
          break;
        }
      if (on) tau.push_back(rest[i]);
    }
    std::sort(tau.begin(), tau.end());
    return tau;
  }
  return std::nullopt;
}

std::vector<Int> tangent_weights(const Fan& f, std::size_t max_cone, const LatticeVector& v) {
  std::vector<Int> w = coords_in_cone(f, max_cone, v);
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

std::vector<FixedComponent> fixed_components(const Fan& f, const OneParamSubgroup& h) {
  const LatticeVector& v = h.v();
  if (v.rank() != f.rank()) throw DimensionMismatch("subgroup in rank " + std::to_string(v.rank()) + " for a fan in rank " + std::to_string(f.rank()));
  std::vector<FixedComponent> out;
  for (const auto& s : f.cones()) {
    if (std::any_of(out.begin(), out.end(), [&](const FixedComponent& c) { return subset(c.min_cone, s); })) continue;
    if (!in_span(f, s, v)) continue;
    FixedComponent c;
    c.min_cone = s;
    c.component_fan = fan::star_quotient_with_map(f, s).fan;
    c.dim = c.component_fan.rank();
    for (std::size_t m : f.max_cones_containing(s)) {
      const Cone& mc = f.max_cone(m);
      if (mc.dim() == f.rank() && mc.is_smooth()) {
        c.weight_cone = m;
        c.tangent_weights = tangent_weights(f, m, v);
        break;
      }
    }
    for (const Int& w : c.tangent_weights) {
      if (w > 0) ++c.nu_plus;
      if (w < 0) ++c.nu_minus;
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Int> mu_values(const Fan& f, const OneParamSubgroup& h, const TDivisor& d) {
  std::vector<FixedComponent> comps = fixed_components(f, h);
  std::vector<Int> out;
  for (const auto& c : comps) {
    std::optional<Int> mu;
    for (std::size_t m : f.max_cones_containing(c.min_cone)) {
      Int val = -exactlat::dot(cartier_m(f, m, d), h.v());
      if (mu && *mu != val) throw NotCartier("linearization is not constant on " + fan::describe(f, c.min_cone));
      mu = val;
    }
    out.push_back(*mu);
  }
  return out;
}

CurveTable invariant_curve_table(const Fan& f, const OneParamSubgroup& h, const TDivisor& d) {
  const LatticeVector& v = h.v();
  std::vector<FixedComponent> comps = fixed_components(f, h);
  CurveTable t;
  for (const auto& w : fan::walls(f)) {
    if (!w.complete()) {
      t.skipped.push_back(w.rays);
      continue;
    }
    CurveRow row;
    row.wall = w.rays;
    row.degree = fan::curve_degree(f, w.rays, d);
    std::size_t a = w.max_cones[0], b = w.max_cones[1];
    if (in_span(f, w.rays, v)) {
      row.fixed = true;
      row.source_cone = a;
      row.sink_cone = b;
    } else {
      Int x = transversal_coordinate(f, w.rays, a, v);
      row.source_cone = x > 0 ? a : b;
      row.sink_cone = x > 0 ? b : a;
      row.delta = abs(x);
    }
    row.source = component_of(comps, f.max_cones()[row.source_cone]);
    row.sink = component_of(comps, f.max_cones()[row.sink_cone]);
    Int mu_src = -exactlat::dot(cartier_m(f, row.source_cone, d), v);
    Int mu_snk = -exactlat::dot(cartier_m(f, row.sink_cone, d), v);
    row.mu_difference = mu_src - mu_snk;
    row.am_fm = row.mu_difference == row.delta * row.degree;

    const Cone& cs = f.max_cone(row.source_cone);
    const Cone& ck = f.max_cone(row.sink_cone);
    if (!row.fixed && cs.is_smooth() && ck.is_smooth()) {
      std::vector<Int> ca = coords_in_cone(f, row.source_cone, v), cb = coords_in_cone(f, row.sink_cone, v);
      const RaySet& sa = f.max_cones()[row.source_cone];
      const RaySet& sb = f.max_cones()[row.sink_cone];
      for (std::size_t rho : w.rays) {
        Int wa = ca[static_cast<std::size_t>(std::lower_bound(sa.begin(), sa.end(), rho) - sa.begin())];
        Int wb = cb[static_cast<std::size_t>(std::lower_bound(sb.begin(), sb.end(), rho) - sb.begin())];
        Int dr = fan::curve_degree(f, w.rays, fan::ray_divisor(f, rho));
        if (wa - wb != row.delta * dr) row.normal_weights = false;
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::vector<Rat>> moving_curve_classes(const Fan& f, const OneParamSubgroup& h) {
  std::vector<std::vector<Rat>> out;
  for (const auto& w : fan::walls(f)) {
    if (!w.complete() || in_span(f, w.rays, h.v())) continue;
    std::size_t a = w.max_cones[0], b = w.max_cones[1];
    LatticeVector u = fan::wall_transversal(f, w.rays, b);
    std::vector<Rat> cls;
    for (std::size_t rho = 0; rho < f.rays().size(); ++rho) {
      TDivisor d = fan::ray_divisor(f, rho);
      std::vector<Rat> ma = rational_m(f, a, d), mb = rational_m(f, b, d);
      Rat deg = 0;
      for (std::size_t k = 0; k < f.rank(); ++k) deg += (ma[k] - mb[k]) * Rat(u[k]);
      cls.push_back(deg);
    }
    out.push_back(std::move(cls));
  }
  return out;
}

BBReport bb_report(const Fan& f, const OneParamSubgroup& h, const std::optional<TDivisor>& d) {
  BBReport r;
  r.v = h.v();
  r.components = fixed_components(f, h);

  auto locate = [&](const LatticeVector& x) -> std::optional<std::size_t> {
    auto tau = f.cone_containing_in_relative_interior(x);
    if (!tau) return std::nullopt;
    for (std::size_t i = 0; i < r.components.size(); ++i)
      if (subset(r.components[i].min_cone, *tau)) return i;
    return std::nullopt;
  };
  r.source = locate(h.v());
  r.sink = locate(-h.v());

  r.equalized = std::all_of(r.components.begin(), r.components.end(), [](const FixedComponent& c) {
    if (!c.weight_cone) return false;
    return std::all_of(c.tangent_weights.begin(), c.tangent_weights.end(), [](const Int& w) { return w == 0 || w == 1 || w == -1; });
  });

  r.b_type = r.source && r.sink && r.components[*r.source].dim + 1 == f.rank() && r.components[*r.sink].dim + 1 == f.rank();

  auto classes = moving_curve_classes(f, h);
  std::vector<LatticeVector> rows;
  for (const auto& c : classes) {
    Int l = 1;
    for (const Rat& q : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Int> iv;
    for (const Rat& q : c) iv.push_back(Int(q * l));
    rows.emplace_back(std::move(iv));
  }
  r.curve_class_rank = exactlat::rank_of(rows, f.rays().size());
  if (r.b_type) r.bordism_rank = static_cast<long>(r.curve_class_rank) - 1;
  try {
    r.class_group_proxy = static_cast<long>(fan::class_group(f).free_rank) - 1;
  } catch (const TorusFactor&) {
  }

  if (d) {
    r.has_divisor = true;
    std::vector<Int> mu = mu_values(f, h, *d);
    for (std::size_t i = 0; i < mu.size(); ++i) r.components[i].mu = mu[i];
    if (!mu.empty()) r.bandwidth = *std::max_element(mu.begin(), mu.end()) - *std::min_element(mu.begin(), mu.end());
    r.curves = invariant_curve_table(f, h, *d);
  } else {
    r.curves = invariant_curve_table(f, h, fan::zero_divisor(f));
  }
  return r;
}

}  // namespace cstar::tflow
