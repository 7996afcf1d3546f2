#include "cstar/atiyah.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "cstar/errors.hpp"

namespace cstar::atiyah {

using exactlat::Int;
using exactlat::IntMatrix;
using fan::RaySet;

// ---------------------------------------------------------------- types

void AtiyahType::validate() const {
  if (r < 1 || s < 1) throw InvalidType("r and s must be >= 1, got " + str());
  if (q() < 0) throw InvalidType("q must be ≥ 0 (q = n-1-r-s = " + std::to_string(q()) + " for " + str() + ")");
}

std::string AtiyahType::str() const {
  return std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(n);
}

AtiyahType AtiyahType::parse(const std::string& text) {
  std::vector<int> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("type must be r,s,n with integers, got '" + text + "'");
    }
  }
  if (xs.size() != 3) throw ParseError("type must be r,s,n, got '" + text + "'");
  AtiyahType t{xs[0], xs[1], xs[2]};
  t.validate();
  return t;
}

// ---------------------------------------------------------------- suite

namespace {

std::vector<std::string> numbered(char c, int from, int to) {
  std::vector<std::string> out;
  for (int i = from; i <= to; ++i) out.push_back(std::string(1, c) + std::to_string(i));
  return out;
}

std::vector<std::string> join(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::string> without(std::vector<std::string> a, const std::string& x) {
  a.erase(std::remove(a.begin(), a.end(), x), a.end());
  return a;
}

}  // namespace

std::vector<std::string> AtiyahSuite::e_labels() const { return numbered('e', 0, type_.r); }
std::vector<std::string> AtiyahSuite::f_labels() const { return numbered('f', 0, type_.s); }
std::vector<std::string> AtiyahSuite::h_labels() const { return numbered('h', 1, type_.q()); }

std::vector<std::string> AtiyahSuite::delta_minus_i(int i) const {
  return join(join(without(e_labels(), "e" + std::to_string(i)), f_labels()), h_labels());
}

std::vector<std::string> AtiyahSuite::delta_plus_j(int j) const {
  return join(join(e_labels(), without(f_labels(), "f" + std::to_string(j))), h_labels());
}

LatticeVector AtiyahSuite::generator(const std::string& label, Lattice l) const {
  const std::size_t big = static_cast<std::size_t>(type_.n) + 1;
  auto in_big = [&](const std::string& lab) -> LatticeVector {
    if (lab == "v") return v_;
    if (lab == "-v") return -v_;
    if (lab.size() >= 2 && (lab[0] == 'e' || lab[0] == 'f' || lab[0] == 'h')) {
      int k = std::stoi(lab.substr(1));
      if (lab[0] == 'e' && k >= 0 && k <= type_.r) return LatticeVector::unit(big, static_cast<std::size_t>(k));
      if (lab[0] == 'f' && k >= 0 && k <= type_.s) return LatticeVector::unit(big, static_cast<std::size_t>(type_.r + 1 + k));
      if (lab[0] == 'h' && k >= 1 && k <= type_.q()) return LatticeVector::unit(big, static_cast<std::size_t>(type_.r + type_.s + 1 + k));
    }
    throw ParseError("unknown generator '" + lab + "'");
  };
  if (l == Lattice::big) {
    if (label == "u") throw ParseError("u lives in the flip lattice");
    return in_big(label);
  }
  if (label == "u") return u_;
  if (label == "v" || label == "-v") throw ParseError("v is zero in the flip lattice");
  return to_flip_.project(in_big(label));
}

fan::Cone AtiyahSuite::cone(const std::vector<std::string>& labels, Lattice l) const {
  std::vector<LatticeVector> gens;
  for (const auto& lab : labels) gens.push_back(generator(lab, l));
  std::size_t rank = static_cast<std::size_t>(type_.n) + (l == Lattice::big ? 1 : 0);
  return fan::Cone(rank, gens);
}

Fan AtiyahSuite::make_fan(const std::vector<std::vector<std::string>>& cones, Lattice l) const {
  std::vector<std::string> order = join(join(join(e_labels(), f_labels()), h_labels()), {"u", "v", "-v"});
  std::set<std::string> used;
  for (const auto& c : cones) used.insert(c.begin(), c.end());
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  std::vector<LatticeVector> rays;
  for (const auto& lab : order)
    if (used.count(lab)) {
      index[lab] = labels.size();
      labels.push_back(lab);
      rays.push_back(generator(lab, l));
    }
  std::vector<RaySet> sets;
  for (const auto& c : cones) {
    RaySet s;
    for (const auto& lab : c) s.push_back(index.at(lab));
    sets.push_back(std::move(s));
  }
  std::size_t rank = static_cast<std::size_t>(type_.n) + (l == Lattice::big ? 1 : 0);
  return Fan(rank, std::move(rays), std::move(sets), std::move(labels));
}

AtiyahSuite::AtiyahSuite(AtiyahType t) : type_(t) {
  type_.validate();
  const std::size_t big = static_cast<std::size_t>(t.n) + 1;
  v_ = LatticeVector::zero(big);
  for (int i = 0; i <= t.r; ++i) v_[static_cast<std::size_t>(i)] = 1;
  for (int j = 0; j <= t.s; ++j) v_[static_cast<std::size_t>(t.r + 1 + j)] = -1;
  to_flip_ = exactlat::quotient_lattice(big, v_);
  LatticeVector sum_e = LatticeVector::zero(big);
  for (int i = 0; i <= t.r; ++i) sum_e[static_cast<std::size_t>(i)] = 1;
  u_ = to_flip_.project(sum_e);

  const auto all = join(join(e_labels(), f_labels()), h_labels());
  std::vector<std::vector<std::string>> minus, plus, sharp, mp, mm, pp, pm;
  for (int i = 0; i <= t.r; ++i) {
    minus.push_back(delta_minus_i(i));
    mp.push_back(join(delta_minus_i(i), {"-v"}));
    mm.push_back(join(delta_minus_i(i), {"v"}));
  }
  for (int j = 0; j <= t.s; ++j) {
    plus.push_back(delta_plus_j(j));
    pp.push_back(join(delta_plus_j(j), {"v"}));
    pm.push_back(join(delta_plus_j(j), {"-v"}));
  }
  for (int i = 0; i <= t.r; ++i)
    for (int j = 0; j <= t.s; ++j)
      sharp.push_back(join(join(join({"u"}, without(e_labels(), "e" + std::to_string(i))), without(f_labels(), "f" + std::to_string(j))), h_labels()));

  auto cat = [](std::vector<std::vector<std::string>> a, const std::vector<std::vector<std::string>>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  auto add = [&](std::string name, std::string symbol, Lattice l, const std::vector<std::vector<std::string>>& cones) {
    fans_.push_back({std::move(name), std::move(symbol), l, make_fan(cones, l)});
  };
  add("delta", "Σ(Δ)", Lattice::big, {all});
  add("delta_prime", "Σ(Δ′)", Lattice::flip, {all});
  add("sigma_minus", "Σ_−", Lattice::flip, minus);
  add("sigma_plus", "Σ_+", Lattice::flip, plus);
  add("sigma_sharp", "Σ#", Lattice::flip, sharp);
  add("tilde_minus", "Σ̃_−", Lattice::big, minus);
  add("tilde_plus", "Σ̃_+", Lattice::big, plus);
  add("hat_minus_plus", "Σ̂_−^+", Lattice::big, mp);
  add("hat_minus_minus", "Σ̂_−^−", Lattice::big, mm);
  add("hat_plus_plus", "Σ̂_+^+", Lattice::big, pp);
  add("hat_plus_minus", "Σ̂_+^−", Lattice::big, pm);
  add("hat_minus", "Σ̂_−", Lattice::big, cat(mp, mm));
  add("hat_plus", "Σ̂_+", Lattice::big, cat(pp, pm));
  add("hat", "Σ̂", Lattice::big, cat(cat(mp, {all}), pp));
  add("delta_v", "Σ(Δ+ℝ≥0·v)", Lattice::big, {join(all, {"v"})});
  add("delta_minus_v", "Σ(Δ+ℝ≥0·(−v))", Lattice::big, {join(all, {"-v"})});
  add("hat_prime_minus", "Σ̂′_−", Lattice::big, cat(mp, {join(all, {"v"})}));
  add("hat_prime_plus", "Σ̂′_+", Lattice::big, cat(pp, {join(all, {"-v"})}));
}

const Fan& AtiyahSuite::fan(const std::string& name) const {
  for (const auto& nf : fans_)
    if (nf.name == name) return nf.fan;
  throw ParseError("no fan named '" + name + "'");
}

void AtiyahSuite::replace_fan(const std::string& name, Fan f) {
  for (auto& nf : fans_)
    if (nf.name == name) {
      nf.fan = std::move(f);
      return;
    }
  throw ParseError("no fan named '" + name + "'");
}

AtiyahSuite AtiyahSuite::without_minus_cone(int i) const {
  AtiyahSuite out = *this;
  std::vector<std::vector<std::string>> cones;
  for (int k = 0; k <= type_.r; ++k)
    if (k != i) cones.push_back(delta_minus_i(k));
  out.replace_fan("sigma_minus", make_fan(cones, Lattice::flip));
  return out;
}

// ---------------------------------------------------------------- reports

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

const Check* Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.ok) return &c;
  return nullptr;
}

namespace {

Check refinement_check(const std::string& name, const Fan& fine, const Fan& coarse) {
  fan::RefinementCheck r = fan::check_refinement(fine, coarse);
  return Check{name, r.ok, r.reason, r.witness};
}

std::set<std::string> label_set(const Fan& f, const RaySet& s) {
  std::set<std::string> out;
  for (std::size_t i : s) out.insert(f.label(i));
  return out;
}

std::set<std::set<std::string>> max_label_sets(const Fan& f) {
  std::set<std::set<std::string>> out;
  for (const auto& s : f.max_cones()) out.insert(label_set(f, s));
  return out;
}

std::set<std::set<std::string>> all_label_sets(const Fan& f) {
  std::set<std::set<std::string>> out;
  for (const auto& s : f.cones()) out.insert(label_set(f, s));
  return out;
}

std::set<std::set<std::string>> with_label(std::set<std::set<std::string>> cones, const std::string& extra) {
  std::set<std::set<std::string>> out;
  for (auto c : cones) {
    c.insert(extra);
    out.insert(std::move(c));
  }
  return out;
}

Check bijection_check(const AtiyahSuite& s, const std::string& tilde, const std::string& base) {
  const Fan& ft = s.fan(tilde);
  const Fan& fb = s.fan(base);
  Check c{tilde + " maps cone-bijectively onto " + base, true, "", std::nullopt};
  std::set<RaySet> images;
  for (const auto& m : ft.max_cones()) {
    RaySet img;
    for (std::size_t r : m) {
      auto idx = fb.ray_index(s.to_flip().project(ft.ray(r)).primitive());
      if (!idx) {
        c.ok = false;
        c.detail = "ray " + ft.label(r) + " has no image ray";
        return c;
      }
      img.push_back(*idx);
    }
    std::sort(img.begin(), img.end());
    if (img.size() != m.size() || !fb.has_cone(img)) {
      c.ok = false;
      c.detail = "image of " + fan::describe(ft, m) + " is not a cone";
      return c;
    }
    images.insert(img);
  }
  std::set<RaySet> target(fb.max_cones().begin(), fb.max_cones().end());
  if (images != target) {
    c.ok = false;
    c.detail = "images do not exhaust the maximal cones";
  }
  return c;
}

// lines through the fibre of V(center): walls containing the center inside `f`
std::vector<RaySet> fibre_walls(const Fan& f, const std::set<std::string>& center) {
  std::vector<RaySet> out;
  for (const auto& w : fan::walls(f)) {
    if (!w.complete()) continue;
    std::set<std::string> l = label_set(f, w.rays);
    if (std::includes(l.begin(), l.end(), center.begin(), center.end())) out.push_back(w.rays);
  }
  return out;
}

std::string str(const Int& x) { return x.get_str(); }

}  // namespace

Report verify_triangulations(const AtiyahSuite& s) {
  Report rep{"triangulations of type " + s.type().str(), {}};
  auto& c = rep.checks;
  c.push_back(refinement_check("Σ_+ triangulates Δ′", s.fan("sigma_plus"), s.fan("delta_prime")));
  c.push_back(refinement_check("Σ_− triangulates Δ′", s.fan("sigma_minus"), s.fan("delta_prime")));
  c.push_back(refinement_check("∪(δ_−^i+ℝ≥0·v) = Δ+ℝ≥0·v", s.fan("hat_minus_minus"), s.fan("delta_v")));
  {
    std::vector<std::vector<std::string>> cones{join(join(s.e_labels(), s.f_labels()), s.h_labels())};
    for (int j = 0; j <= s.type().s; ++j) cones.push_back(join(s.delta_plus_j(j), {"v"}));
    c.push_back(refinement_check("∪(δ_+^j+ℝ≥0·v) ∪ Δ = Δ+ℝ≥0·v", s.make_fan(cones, Lattice::big), s.fan("delta_v")));
  }
  c.push_back(refinement_check("∪(δ_+^j+ℝ≥0·(−v)) = Δ+ℝ≥0·(−v)", s.fan("hat_plus_minus"), s.fan("delta_minus_v")));
  {
    std::vector<std::vector<std::string>> cones{join(join(s.e_labels(), s.f_labels()), s.h_labels())};
    for (int i = 0; i <= s.type().r; ++i) cones.push_back(join(s.delta_minus_i(i), {"-v"}));
    c.push_back(refinement_check("∪(δ_−^i+ℝ≥0·(−v)) ∪ Δ = Δ+ℝ≥0·(−v)", s.make_fan(cones, Lattice::big), s.fan("delta_minus_v")));
  }
  c.push_back(refinement_check("Σ̂ refines Σ̂′_−", s.fan("hat"), s.fan("hat_prime_minus")));
  c.push_back(refinement_check("Σ̂_− refines Σ̂′_−", s.fan("hat_minus"), s.fan("hat_prime_minus")));
  c.push_back(refinement_check("Σ̂ refines Σ̂′_+", s.fan("hat"), s.fan("hat_prime_plus")));
  c.push_back(refinement_check("Σ̂_+ refines Σ̂′_+", s.fan("hat_plus"), s.fan("hat_prime_plus")));
  c.push_back(refinement_check("Σ# refines Σ_−", s.fan("sigma_sharp"), s.fan("sigma_minus")));
  c.push_back(refinement_check("Σ# refines Σ_+", s.fan("sigma_sharp"), s.fan("sigma_plus")));
  {
    fan::RefinementCheck r = fan::check_refinement(s.fan("sigma_minus"), s.fan("sigma_plus"));
    c.push_back(Check{"Σ_− does not refine Σ_+", !r.ok, r.ok ? "unexpected refinement" : r.reason, std::nullopt});
  }
  {
    Check reg{"all cones regular", true, "", std::nullopt};
    static const std::set<std::string> non_simplicial{"delta_prime", "delta_v", "delta_minus_v", "hat_prime_minus", "hat_prime_plus"};
    for (const auto& nf : s.fans()) {
      if (non_simplicial.count(nf.name)) continue;
      if (!nf.fan.is_smooth()) {
        reg.ok = false;
        reg.detail += nf.symbol + " has a singular cone; ";
      }
    }
    c.push_back(reg);
  }
  return rep;
}

Report verify_bundle_structure(const AtiyahSuite& s) {
  Report rep{"bundle structure of type " + s.type().str(), {}};
  auto& c = rep.checks;
  c.push_back(bijection_check(s, "tilde_minus", "sigma_minus"));
  c.push_back(bijection_check(s, "tilde_plus", "sigma_plus"));

  struct Lift {
    const char* hat;
    const char* tilde;
    const char* ray;
  };
  for (Lift l : {Lift{"hat_minus_plus", "tilde_minus", "-v"}, Lift{"hat_minus_minus", "tilde_minus", "v"},
                 Lift{"hat_plus_plus", "tilde_plus", "v"}, Lift{"hat_plus_minus", "tilde_plus", "-v"}}) {
    bool ok = max_label_sets(s.fan(l.hat)) == with_label(max_label_sets(s.fan(l.tilde)), l.ray);
    c.push_back(Check{std::string(l.hat) + " adds the ray " + l.ray + " over every cone of " + l.tilde, ok, "", std::nullopt});
  }
  for (const char* side : {"minus", "plus"}) {
    std::string base = std::string("hat_") + side;
    auto a = max_label_sets(s.fan(base + "_plus")), b = max_label_sets(s.fan(base + "_minus"));
    auto un = a;
    un.insert(b.begin(), b.end());
    c.push_back(Check{base + " is the union of its two halves", max_label_sets(s.fan(base)) == un, "", std::nullopt});

    auto ca = all_label_sets(s.fan(base + "_plus")), cb = all_label_sets(s.fan(base + "_minus"));
    std::set<std::set<std::string>> meet;
    std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::inserter(meet, meet.begin()));
    c.push_back(Check{base + " halves meet in Σ̃", meet == all_label_sets(s.fan(std::string("tilde_") + side)), "", std::nullopt});
  }

  // supporting function of -V(e0): 1 on e0, 0 on the other generators, on both Σ_±
  for (const char* name : {"sigma_minus", "sigma_plus"}) {
    const Fan& f = s.fan(name);
    fan::TDivisor d = fan::ray_divisor(f, *f.ray_index(std::string("e0")), -1);
    fan::CartierData cd = fan::cartier_data(f, d);
    Check ch{std::string("supporting function of −V(e0) on ") + name, true, "", std::nullopt};
    for (std::size_t m = 0; m < f.max_cones().size(); ++m)
      for (std::size_t r : f.max_cones()[m]) {
        Int val = exactlat::dot(cd.m[m], f.ray(r));
        Int expect = f.label(r) == "e0" ? 1 : 0;
        if (val != expect) {
          ch.ok = false;
          ch.detail = "value " + str(val) + " on " + f.label(r);
        }
      }
    c.push_back(ch);
  }

  // normal bundles of the two sections of each P^1-bundle
  struct Section {
    const char* fan;
    const char* ray;
    int degree;
  };
  for (Section sec : {Section{"hat_minus", "-v", 1}, Section{"hat_minus", "v", -1}, Section{"hat_plus", "v", 1},
                      Section{"hat_plus", "-v", -1}}) {
    const Fan& f = s.fan(sec.fan);
    std::size_t ray = *f.ray_index(std::string(sec.ray));
    Check ch{std::string("normal bundle of V(") + sec.ray + ") in " + sec.fan + " has degree " + std::to_string(sec.degree) + " on lines", true, "", std::nullopt};
    auto lines = fibre_walls(f, {sec.ray});
    std::size_t counted = 0;
    for (const auto& w : lines) {
      Int deg = fan::curve_degree(f, w, fan::ray_divisor(f, ray));
      ++counted;
      if (deg != sec.degree) {
        ch.ok = false;
        ch.detail = "degree " + str(deg) + " on " + fan::describe(f, w);
      }
    }
    if (counted == 0) {
      ch.ok = false;
      ch.detail = "no invariant lines found in the section";
    }
    c.push_back(ch);
  }

  if (s.type().r == s.type().s)
    c.push_back(Check{"flop: both triangulations have the same number of cones",
                      s.fan("sigma_minus").max_cones().size() == s.fan("sigma_plus").max_cones().size(), "", std::nullopt});
  return rep;
}

Report verify_normal_degrees(const AtiyahSuite& s) {
  Report rep{"normal degrees of type " + s.type().str(), {}};
  struct Side {
    const char* fan;
    std::vector<std::string> center;
    char negative;  // divisors of degree -1
    int fibre_dim;
  };
  for (const Side& side : {Side{"sigma_plus", s.delta_plus(), 'e', s.type().s}, Side{"sigma_minus", s.delta_minus(), 'f', s.type().r}}) {
    const Fan& f = s.fan(side.fan);
    std::set<std::string> center(side.center.begin(), side.center.end());
    auto lines = fibre_walls(f, center);
    Check ch{std::string("fibre lines of V(δ) in ") + side.fan + ": " + side.negative + "-divisors degree −1, others +1", true, "", std::nullopt};
    std::size_t expect_lines = static_cast<std::size_t>(side.fibre_dim) * static_cast<std::size_t>(side.fibre_dim + 1) / 2;
    if (lines.size() != expect_lines) {
      ch.ok = false;
      ch.detail = std::to_string(lines.size()) + " fibre lines, expected " + std::to_string(expect_lines);
    }
    for (const auto& w : lines)
      for (std::size_t r = 0; r < f.rays().size(); ++r) {
        char kind = f.label(r)[0];
        Int expect = kind == 'h' ? 0 : (kind == side.negative ? -1 : 1);
        Int deg = fan::curve_degree(f, w, fan::ray_divisor(f, r));
        if (deg != expect) {
          ch.ok = false;
          ch.detail = "V(" + f.label(r) + ") has degree " + str(deg) + " on " + fan::describe(f, w);
        }
      }
    rep.checks.push_back(ch);
  }
  return rep;
}

BordismResult verify_bordism(const AtiyahSuite& s) {
  BordismResult out;
  const Fan& hat = s.fan("hat");
  tflow::OneParamSubgroup h(s.v());
  fan::TDivisor d = fan::ray_divisor(hat, *hat.ray_index(std::string("v"))) + fan::ray_divisor(hat, *hat.ray_index(std::string("-v")));
  out.bb = tflow::bb_report(hat, h, d);
  const auto& bb = out.bb;
  Report& rep = out.report;
  rep.title = "bordism of type " + s.type().str();
  auto add = [&](std::string name, bool ok, std::string detail = "") { rep.checks.push_back(Check{std::move(name), ok, std::move(detail), std::nullopt}); };

  add("three fixed components", bb.components.size() == 3, std::to_string(bb.components.size()) + " components");
  std::optional<std::size_t> sink, source, inner;
  std::set<std::string> ef;
  for (const auto& l : s.e_labels()) ef.insert(l);
  for (const auto& l : s.f_labels()) ef.insert(l);
  for (std::size_t i = 0; i < bb.components.size(); ++i) {
    std::set<std::string> l = label_set(hat, bb.components[i].min_cone);
    if (l == std::set<std::string>{"-v"}) sink = i;
    if (l == std::set<std::string>{"v"}) source = i;
    if (l == ef) inner = i;
  }
  add("sink is V(ℝ≥0·(−v))", sink && bb.sink == sink);
  add("source is V(ℝ≥0·v)", source && bb.source == source);
  add("inner component is V(δ_−+δ_+)", inner.has_value());
  if (!sink || !source || !inner || bb.components.size() != 3) return out;
  out.sink = *sink;
  out.source = *source;
  out.inner = *inner;
  const auto& ck = bb.components[*sink];
  const auto& cs = bb.components[*source];
  const auto& ci = bb.components[*inner];

  add("sink fan ≅ Σ_− (lattice isomorphism)", fan::lattice_isomorphism(ck.component_fan, s.fan("sigma_minus")).has_value());
  add("source fan ≅ Σ_+ (lattice isomorphism)", fan::lattice_isomorphism(cs.component_fan, s.fan("sigma_plus")).has_value());
  {
    const Fan& fi = ci.component_fan;
    bool affine = fi.rank() == static_cast<std::size_t>(s.type().q()) && fi.max_cones().size() == 1 && fi.max_cone(0).dim() == fi.rank() && fi.is_smooth();
    add("inner component ≅ 𝔸^q", affine, "rank " + std::to_string(fi.rank()));
  }
  add("μ(sink) = −1", ck.mu && *ck.mu == -1, ck.mu ? str(*ck.mu) : "unset");
  add("μ(inner) = 0", ci.mu && *ci.mu == 0, ci.mu ? str(*ci.mu) : "unset");
  add("μ(source) = +1", cs.mu && *cs.mu == 1, cs.mu ? str(*cs.mu) : "unset");
  add("bandwidth 2", bb.bandwidth && *bb.bandwidth == 2);
  add("equalized", bb.equalized);
  add("inner ν⁺ = r+1", ci.nu_plus == static_cast<std::size_t>(s.type().r + 1), std::to_string(ci.nu_plus));
  add("inner ν⁻ = s+1", ci.nu_minus == static_cast<std::size_t>(s.type().s + 1), std::to_string(ci.nu_minus));
  add("inner dimension q", ci.dim == static_cast<std::size_t>(s.type().q()), std::to_string(ci.dim));
  add("sink and source are divisors", bb.b_type);
  std::size_t cl = fan::class_group(hat).free_rank;
  add("class group of Σ̂ has rank 2", cl == 2, std::to_string(cl));
  add("bordism rank 1", bb.bordism_rank && *bb.bordism_rank == 1, bb.bordism_rank ? std::to_string(*bb.bordism_rank) : "undefined");
  bool amfm = std::all_of(bb.curves.rows.begin(), bb.curves.rows.end(), [](const tflow::CurveRow& r) { return r.am_fm; });
  add("μ(source) − μ(sink) = δ·deg on every complete invariant curve", amfm);
  bool normals = std::all_of(bb.curves.rows.begin(), bb.curves.rows.end(), [](const tflow::CurveRow& r) { return r.normal_weights; });
  add("normal weight differences equal δ·(D·C)", normals);

  // the two flip fans
  {
    auto all = join(join(s.e_labels(), s.f_labels()), s.h_labels());
    std::set<std::set<std::string>> expect_m, expect_p;
    for (int i = 0; i <= s.type().r; ++i) {
      auto l = join(s.delta_minus_i(i), {"-v"});
      expect_m.insert(std::set<std::string>(l.begin(), l.end()));
    }
    for (int j = 0; j <= s.type().s; ++j) {
      auto l = join(s.delta_plus_j(j), {"v"});
      expect_p.insert(std::set<std::string>(l.begin(), l.end()));
    }
    auto a = join(all, {"v"}), b = join(all, {"-v"});
    expect_m.insert(std::set<std::string>(a.begin(), a.end()));
    expect_p.insert(std::set<std::string>(b.begin(), b.end()));
    add("Σ̂′_− has maximal cones δ_−^i+ℝ≥0·(−v) and Δ+ℝ≥0·v", max_label_sets(s.fan("hat_prime_minus")) == expect_m);
    add("Σ̂′_+ has maximal cones δ_+^j+ℝ≥0·v and Δ+ℝ≥0·(−v)", max_label_sets(s.fan("hat_prime_plus")) == expect_p);
    add("Σ̂′_± are not simplicial", !s.fan("hat_prime_minus").is_simplicial() && !s.fan("hat_prime_plus").is_simplicial());
  }

  // strict transform: O_{Σ−}(1) = [V(e_i)], O_{Σ+}(1) = [V(f_j)] and they are opposite
  {
    const Fan& fm = s.fan("sigma_minus");
    const Fan& fp = s.fan("sigma_plus");
    bool same_rays = fm.rays() == fp.rays();
    IntMatrix R = IntMatrix::from_rows(fm.rays(), fm.rank());
    bool ok = same_rays;
    for (const auto& e : s.e_labels())
      for (const auto& f : s.f_labels()) {
        LatticeVector a = LatticeVector::zero(fm.rays().size());
        a[*fm.ray_index(e)] += 1;
        a[*fm.ray_index(f)] += 1;
        if (!exactlat::solve_integer(R, a)) ok = false;  // V(e_i)+V(f_j) is principal
      }
    add("𝒪_{Σ−}(−1) corresponds to 𝒪_{Σ+}(1)", ok);
  }
  return out;
}

// ---------------------------------------------------------------- sweeps

SweepBounds SweepBounds::from_env() {
  SweepBounds b;
  if (const char* env = std::getenv("CSTAR_SWEEP")) {
    std::vector<int> xs;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        xs.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ParseError(std::string("CSTAR_SWEEP must be 'rs,n[,q]', got '") + env + "'");
      }
    }
    if (xs.size() < 2 || xs.size() > 3) throw ParseError(std::string("CSTAR_SWEEP must be 'rs,n[,q]', got '") + env + "'");
    b.max_r_plus_s = xs[0];
    b.max_n = xs[1];
    if (xs.size() == 3) b.max_q = xs[2];
  }
  return b;
}

std::vector<AtiyahType> sweep(const SweepBounds& b) {
  std::vector<AtiyahType> out;
  for (int rs = 2; rs <= b.max_r_plus_s; ++rs)
    for (int r = 1; r < rs; ++r)
      for (int n = rs + 1; n <= b.max_n; ++n) {
        AtiyahType t{r, rs - r, n};
        if (b.max_q >= 0 && t.q() > b.max_q) continue;
        out.push_back(t);
      }
  return out;
}

}  // namespace cstar::atiyah
