#include "cstar/homog.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cstar/errors.hpp"

namespace cstar::homog {

using exactlat::Rat;
using rootsys::OrbitPoint;

// ---------------------------------------------------------------- spaces

void HomogeneousSpace::validate() const {
  type.validate();
  if (marked.empty()) throw InvalidNode("a homogeneous space needs at least one marked node");
  for (int j : marked)
    if (j < 1 || j > type.rank) throw InvalidNode("node " + std::to_string(j) + " is not in " + type.str());
  if (!std::is_sorted(marked.begin(), marked.end()) || std::adjacent_find(marked.begin(), marked.end()) != marked.end())
    throw InvalidNode("marked nodes must be sorted and distinct");
}

std::string HomogeneousSpace::str() const {
  std::string s = type.str() + "(";
  for (std::size_t i = 0; i < marked.size(); ++i) s += (i ? "," : "") + std::to_string(marked[i]);
  return s + ")";
}

HomogeneousSpace HomogeneousSpace::parse(const std::string& text) {
  auto open = text.find('('), close = text.find(')');
  if (open == std::string::npos || close != text.size() - 1) throw ParseError("space must look like A5(1,5), got '" + text + "'");
  HomogeneousSpace h{DynkinType::parse(text.substr(0, open)), {}};
  std::stringstream ss(text.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      h.marked.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("bad node '" + item + "' in '" + text + "'");
    }
  }
  std::sort(h.marked.begin(), h.marked.end());
  h.marked.erase(std::unique(h.marked.begin(), h.marked.end()), h.marked.end());
  h.validate();
  return h;
}

std::vector<int> adjoint_marking(const DynkinType& t) {
  t.validate();
  switch (t.letter) {
    case 'A': return t.rank == 1 ? std::vector<int>{1} : std::vector<int>{1, t.rank};
    case 'B': return {t.rank == 1 ? 1 : 2};
    case 'C': return {1};
    case 'D': return {2};
    case 'E': return {t.rank == 6 ? 2 : (t.rank == 7 ? 1 : 8)};
    case 'F': return {1};
    default: return {2};  // G2
  }
}

HomogeneousSpace adjoint_space(const DynkinType& t) { return HomogeneousSpace{t, adjoint_marking(t)}; }

namespace {

bool touches(const Vec& root, const std::vector<int>& marked) {
  return std::any_of(marked.begin(), marked.end(), [&](int j) { return root[static_cast<std::size_t>(j - 1)] != 0; });
}

Vec negated(Vec v) {
  for (auto& x : v) x = -x;
  return v;
}

Vec support_weight(const RootSystem& rs, const std::vector<int>& marked) {
  Vec l(static_cast<std::size_t>(rs.rank()), 0);
  for (int j : marked) l[static_cast<std::size_t>(j - 1)] = 1;
  return l;
}

FixedPoint make_point(const RootSystem& rs, const std::vector<Vec>& base, OrbitPoint p, const rootsys::Coweight& cw) {
  FixedPoint f;
  for (Vec r : base) {
    for (int i : p.word) r = rs.reflect_root(r, i);
    long w = rs.pairing_root(r, cw);
    f.tangent.push_back(w);
    if (w == 0) ++f.zeros;
    if (w > 0) ++f.nu_plus;
    if (w < 0) ++f.nu_minus;
  }
  std::sort(f.tangent.begin(), f.tangent.end(), std::greater<>());
  f.point = std::move(p);
  return f;
}

void fill_buckets(ActionReport& r) {
  std::map<long, Bucket> by_key;
  for (const auto& p : r.points) {
    Bucket& b = by_key[p.mu];
    b.key = p.mu;
    ++b.size;
    ++b.zero_histogram[p.zeros];
    b.nu_plus = std::max(b.nu_plus, p.nu_plus);
    b.nu_minus = std::max(b.nu_minus, p.nu_minus);
    for (long w : p.tangent)
      if (w != 0 && w != 1 && w != -1) b.equalized = false;
  }
  r.buckets.clear();
  for (auto& [k, b] : by_key) r.buckets.push_back(std::move(b));
  r.bandwidth = r.buckets.empty() ? 0 : r.buckets.back().key - r.buckets.front().key;
  r.equalized = std::all_of(r.buckets.begin(), r.buckets.end(), [](const Bucket& b) { return b.equalized; });
  r.equalized_at_extremes = !r.buckets.empty() && r.buckets.front().equalized && r.buckets.back().equalized;
}

}  // namespace

std::size_t dimension(const RootSystem& rs, const std::vector<int>& marked) {
  std::size_t d = 0;
  for (const auto& r : rs.positive_roots())
    if (touches(r, marked)) ++d;
  return d;
}

std::vector<Vec> base_tangent_roots(const RootSystem& rs, const std::vector<int>& marked) {
  std::vector<Vec> out;
  for (const auto& r : rs.positive_roots())
    if (touches(r, marked)) out.push_back(negated(r));
  return out;
}

std::vector<long> tangent_weight_multiset(const RootSystem& rs, const HomogeneousSpace& h, const OrbitPoint& w,
                                          const Coweight& cw) {
  h.validate();
  return make_point(rs, base_tangent_roots(rs, h.marked), w, cw).tangent;
}

ActionReport action_report(const RootSystem& rs, const HomogeneousSpace& h, const Coweight& cw) {
  h.validate();
  if (!(rs.type() == h.type)) throw DimensionMismatch("root system " + rs.type().str() + " for space " + h.str());
  ActionReport r;
  r.space = h.str();
  r.cw = cw;
  r.dim = dimension(rs, h.marked);
  Vec start = support_weight(rs, h.marked);
  auto base = base_tangent_roots(rs, h.marked);
  // mu = -<start + offset, cw> = -<start, cw> + k with k = -<offset, cw>
  std::vector<long> ks;
  auto orbit = rootsys::weyl_orbit(rs, start);
  for (auto& p : orbit) {
    ks.push_back(-rs.pairing_root(p.offset, cw));
    r.points.push_back(make_point(rs, base, std::move(p), cw));
  }
  long kmin = *std::min_element(ks.begin(), ks.end());
  for (std::size_t i = 0; i < ks.size(); ++i) r.points[i].mu = ks[i] - kmin;
  r.shift = -rs.pairing(start, cw) + Rat(kmin);
  fill_buckets(r);
  return r;
}

// ---------------------------------------------------------------- fingerprints

std::size_t Fingerprint::points() const {
  std::size_t s = 0;
  for (const auto& [d, c] : histogram) s += c;
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + sep.size();
  }
  return out;
}

}  // namespace

Fingerprint fingerprint(const std::string& name) {
  Fingerprint f;
  if (name.empty() || name == "∅") return f;
  for (const auto& comp : split(name, "⊔")) {
    std::size_t dim = 0, points = 1;
    for (const auto& factor : split(comp, "×")) {
      HomogeneousSpace h = HomogeneousSpace::parse(factor);
      RootSystem rs(h.type);
      dim += dimension(rs, h.marked);
      points *= rootsys::weyl_orbit(rs, support_weight(rs, h.marked)).size();
    }
    f.histogram[dim] += points;
  }
  return f;
}

std::string describe(const Fingerprint& f) {
  if (f.histogram.empty()) return "∅";
  std::string s;
  for (const auto& [d, c] : f.histogram) s += (s.empty() ? "" : ", ") + std::string("dim ") + std::to_string(d) + ": " + std::to_string(c) + " points";
  return s;
}

namespace {

std::string a_space(int k, std::vector<int> marks) {
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  return HomogeneousSpace{DynkinType{'A', k}, marks}.str();
}

}  // namespace

std::optional<TableNames> table_names(const DynkinType& t, int node) {
  const int m = t.rank;
  auto is_short = [&] {
    auto s = adjoint_short_nodes(t);
    return std::find(s.begin(), s.end(), node) != s.end();
  };
  if (!is_short()) return std::nullopt;
  switch (t.letter) {
    case 'A': {
      int r = node;
      return TableNames{a_space(r - 1, {1}) + "×" + a_space(m - r, {m - r}),
                        a_space(r - 1, {1, r - 1}) + "⊔" + a_space(m - r, {1, m - r})};
    }
    case 'B': return TableNames{"B" + std::to_string(m - 1) + "(1)", "B" + std::to_string(m - 1) + "(2)"};
    case 'C': return TableNames{a_space(m - 1, {1}), "∅"};
    case 'D':
      if (node == 1) {
        if (m == 4) return TableNames{"A3(2)", "A3(1,3)"};
        return TableNames{"D" + std::to_string(m - 1) + "(1)", "D" + std::to_string(m - 1) + "(2)"};
      }
      return TableNames{a_space(m - 1, {2}), a_space(m - 1, {1, m - 1})};
    case 'E':
      if (m == 6) return TableNames{"D5(5)", "D5(2)"};
      if (m == 7) return TableNames{"E6(1)", "E6(2)"};
      return std::nullopt;
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- adjoint varieties

std::vector<int> adjoint_short_nodes(const DynkinType& t) {
  auto raw = rootsys::short_grading_nodes(t);
  auto marking = adjoint_marking(t);
  std::vector<int> out;
  for (int j : raw)
    if (std::find(marking.begin(), marking.end(), j) == marking.end()) out.push_back(j);
  return out;
}

AdjointActionReport adjoint_report(const DynkinType& t, int node) {
  RootSystem rs(t);
  rs.check_node(node);
  auto marking = adjoint_marking(t);
  if (std::find(marking.begin(), marking.end(), node) != marking.end())
    throw NodeInMarking("node " + std::to_string(node) + " is marked in the adjoint variety " + adjoint_space(t).str());

  AdjointActionReport out;
  out.type = t;
  out.node = node;
  Coweight cw = rs.fundamental_coweight(node);
  ActionReport& r = out.action;
  r.space = adjoint_space(t).str();
  r.cw = cw;
  r.dim = dimension(rs, marking);
  auto base = base_tangent_roots(rs, marking);
  const Vec& theta = rs.highest_root();
  for (auto& p : rootsys::weyl_orbit(rs, rs.labels_of_root(theta))) {
    Vec beta = theta;
    for (std::size_t k = 0; k < beta.size(); ++k) beta[k] += p.offset[k];
    long g = rs.pairing_root(beta, cw);
    FixedPoint f = make_point(rs, base, std::move(p), cw);
    f.mu = -g;
    out.M = std::max(out.M, std::labs(g));
    r.points.push_back(std::move(f));
  }
  fill_buckets(r);
  out.short_grading = out.M == 1;

  for (const auto& b : r.buckets) {
    if (b.key == -out.M) {
      out.y_pm_points = b.size;
      if (b.zero_histogram.size() == 1) out.y_pm_dim = b.zero_histogram.begin()->first;
    }
    if (b.key == 0) {
      out.y_0_points = b.size;
      out.y_0_histogram = b.zero_histogram;
    }
  }
  out.expected = table_names(t, node);
  if (out.expected && out.short_grading) {
    Fingerprint pm = fingerprint(out.expected->y_pm), zero = fingerprint(out.expected->y_0);
    Fingerprint got_pm;
    if (out.y_pm_dim) got_pm.histogram[*out.y_pm_dim] = out.y_pm_points;
    Fingerprint got_0{out.y_0_histogram};
    out.identified = got_pm == pm && got_0 == zero && r.bandwidth == 2;
  }
  return out;
}

std::vector<DynkinType> table_types() {
  std::vector<DynkinType> out;
  for (int k = 1; k <= 8; ++k) out.push_back({'A', k});
  for (int k = 3; k <= 8; ++k) out.push_back({'B', k});
  for (int k = 2; k <= 8; ++k) out.push_back({'C', k});
  for (int k = 4; k <= 8; ++k) out.push_back({'D', k});
  for (int k = 6; k <= 8; ++k) out.push_back({'E', k});
  out.push_back({'F', 4});
  out.push_back({'G', 2});
  return out;
}

std::vector<TableRow> adjoint_tables(const std::vector<DynkinType>& types) {
  std::vector<TableRow> out;
  for (const auto& t : types) {
    TableRow row;
    row.type = t.str();
    row.adjoint = adjoint_space(t).str();
    row.raw_short_nodes = rootsys::short_grading_nodes(t);
    row.short_nodes = adjoint_short_nodes(t);
    for (int j : row.short_nodes) row.rows.push_back(adjoint_report(t, j));
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------- bandwidth three

bool Bw3Certificate::passed() const {
  return !clauses.empty() && std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.ok; });
}

const Clause* Bw3Certificate::first_failure() const {
  for (const auto& c : clauses)
    if (!c.ok) return &c;
  return nullptr;
}

Bw3Certificate bw3_evaluate(const RootSystem& rs, const HomogeneousSpace& h, const Coweight& cw) {
  ActionReport r = action_report(rs, h, cw);
  Bw3Certificate c;
  c.space = h.str();
  c.coweight = cw.name;
  c.n = r.dim;
  for (const auto& b : r.buckets) c.bucket_sizes.push_back(b.size);
  auto add = [&](std::string name, bool ok, std::string detail = "") { c.clauses.push_back(Clause{std::move(name), ok, std::move(detail)}); };

  add("bandwidth 3", r.bandwidth == 3, "bandwidth " + std::to_string(r.bandwidth));
  if (r.buckets.size() < 2) return c;
  const Bucket& sink = r.buckets.front();
  const Bucket& source = r.buckets.back();
  add("sink and source are isolated points", sink.size == 1 && source.size == 1);

  auto all_equal = [&](long key, long value) {
    for (const auto& p : r.points)
      if (p.mu == key && !std::all_of(p.tangent.begin(), p.tangent.end(), [&](long w) { return w == value; })) return false;
    return true;
  };
  add("sink tangent weights all −1", all_equal(sink.key, -1));
  add("source tangent weights all +1", all_equal(source.key, 1));

  std::vector<const Bucket*> inner;
  for (std::size_t i = 1; i + 1 < r.buckets.size(); ++i) inner.push_back(&r.buckets[i]);
  add("exactly two inner values", inner.size() == 2, std::to_string(inner.size()) + " inner values");

  bool divisible = c.n % 3 == 0;
  add("dimension divisible by 3", divisible, "n = " + std::to_string(c.n));
  std::size_t expect_zero = divisible && c.n >= 3 ? 2 * c.n / 3 - 2 : 0;
  bool zeros_ok = divisible && !inner.empty();
  for (const Bucket* b : inner)
    for (const auto& [z, count] : b->zero_histogram) {
      c.inner_zero_counts.push_back(z);
      if (z != expect_zero) zeros_ok = false;
    }
  add("inner zero-weight count 2n/3 − 2", zeros_ok, "expected " + std::to_string(expect_zero));

  // Euler characteristics of the Severi varieties v2(P2), P2xP2, Gr(2,6), E6(1)
  static const std::map<std::size_t, std::size_t> severi_points{{6, 3}, {9, 9}, {15, 15}, {27, 27}};
  auto it = severi_points.find(c.n);
  bool sizes_ok = it != severi_points.end() && inner.size() == 2 && inner[0]->size == it->second && inner[1]->size == it->second;
  add("inner bucket sizes match the Severi varieties", sizes_ok);

  // -K = index * L: the canonical weights differ by index * bandwidth between source and sink
  long sum_sink = 0, sum_source = 0;
  for (const auto& p : r.points) {
    long s = 0;
    for (long w : p.tangent) s += w;
    if (p.mu == sink.key) sum_sink = s;
    if (p.mu == source.key) sum_source = s;
  }
  if (r.bandwidth != 0) {
    c.index = Rat(sum_source - sum_sink, r.bandwidth);
    c.index->canonicalize();
  }
  add("index 2n/3", divisible && c.index && *c.index == Rat(static_cast<long>(2 * c.n / 3)),
      c.index ? "index " + c.index->get_str() : "undefined");
  return c;
}

HomogeneousSpace bw3_space(const DynkinType& t) {
  if (t == DynkinType{'C', 3}) return {t, {3}};
  if (t == DynkinType{'A', 5}) return {t, {3}};
  if (t == DynkinType{'D', 6}) return {t, {6}};
  if (t == DynkinType{'E', 7}) return {t, {7}};
  throw InvalidType("bandwidth-3 certificates exist for C3, A5, D6, E7; got " + t.str());
}

Bw3Certificate bw3_certify(const DynkinType& t) {
  HomogeneousSpace h = bw3_space(t);
  RootSystem rs(t);
  Bw3Certificate c = bw3_evaluate(rs, h, rs.fundamental_coweight(h.marked.front()));
  if (const Clause* bad = c.first_failure()) throw CertificationFailure(h.str() + ": " + bad->name + " (" + bad->detail + ")");
  return c;
}

std::vector<Bw3Certificate> bw3_scan(const RootSystem& rs, const HomogeneousSpace& h) {
  std::vector<Bw3Certificate> out;
  for (int i = 1; i <= rs.rank(); ++i)
    for (const Coweight& cw : {rs.simple_coroot(i), -rs.simple_coroot(i), rs.fundamental_coweight(i), -rs.fundamental_coweight(i)})
      out.push_back(bw3_evaluate(rs, h, cw));
  return out;
}

}  // namespace cstar::homog
