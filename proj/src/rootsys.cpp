#include "cstar/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>

#include "cstar/errors.hpp"

namespace cstar::rootsys {

// ---------------------------------------------------------------- types

void DynkinType::validate() const {
  bool ok = false;
  switch (letter) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 1; break;
    case 'C': ok = rank >= 1; break;
    case 'D': ok = rank >= 3; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: break;
  }
  if (!ok) throw InadmissibleType("no simple type " + str());
}

std::string DynkinType::str() const { return std::string(1, letter) + std::to_string(rank); }

DynkinType DynkinType::parse(const std::string& text) {
  if (text.size() < 2 || !std::isalpha(static_cast<unsigned char>(text[0])))
    throw ParseError("Dynkin type must look like E7, got '" + text + "'");
  DynkinType t;
  t.letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  try {
    std::size_t used = 0;
    t.rank = std::stoi(text.substr(1), &used);
    if (used != text.size() - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ParseError("Dynkin type must look like E7, got '" + text + "'");
  }
  t.validate();
  return t;
}

Coweight Coweight::operator-() const {
  Coweight out{root_values, name.empty() ? name : (name[0] == '-' ? name.substr(1) : "-" + name)};
  for (auto& x : out.root_values) x = -x;
  return out;
}

// ---------------------------------------------------------------- construction

namespace {

std::vector<Vec> cartan_matrix(const DynkinType& t) {
  const int n = t.rank;
  std::vector<Vec> a(static_cast<std::size_t>(n), Vec(static_cast<std::size_t>(n), 0));
  auto set = [&](int i, int j, long v) { a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v; };
  auto bond = [&](int i, int j) {
    set(i, j, -1);
    set(j, i, -1);
  };
  for (int i = 1; i <= n; ++i) set(i, i, 2);
  switch (t.letter) {
    case 'A':
      for (int i = 1; i < n; ++i) bond(i, i + 1);
      break;
    case 'B':  // alpha_n short
      for (int i = 1; i < n; ++i) bond(i, i + 1);
      if (n >= 2) set(n, n - 1, -2);
      break;
    case 'C':  // alpha_n long
      for (int i = 1; i < n; ++i) bond(i, i + 1);
      if (n >= 2) set(n - 1, n, -2);
      break;
    case 'D':
      for (int i = 1; i + 1 < n - 1; ++i) bond(i, i + 1);
      bond(n - 2, n - 1);
      bond(n - 2, n);
      break;
    case 'E':
      bond(1, 3);
      bond(3, 4);
      bond(2, 4);
      for (int i = 4; i < n; ++i) bond(i, i + 1);
      break;
    case 'F':  // alpha_1, alpha_2 long
      bond(1, 2);
      bond(2, 3);
      bond(3, 4);
      set(3, 2, -2);
      break;
    case 'G':  // alpha_1 short
      set(1, 2, -3);
      set(2, 1, -1);
      break;
  }
  return a;
}

Vec add(Vec a, const Vec& b, long k) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

bool positive(const Vec& r) {
  return std::all_of(r.begin(), r.end(), [](long x) { return x >= 0; });
}

long height(const Vec& r) {
  long h = 0;
  for (long x : r) h += x;
  return h;
}

}  // namespace

RootSystem::RootSystem(DynkinType t) : type_(t) {
  type_.validate();
  cartan_ = cartan_matrix(type_);
  const std::size_t n = static_cast<std::size_t>(type_.rank);

  // d_i a_ij = d_j a_ji, propagated along the (connected) diagram
  sym_.assign(n, Rat(0));
  sym_[0] = 1;
  std::deque<std::size_t> todo{0};
  while (!todo.empty()) {
    std::size_t i = todo.front();
    todo.pop_front();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && cartan_[i][j] != 0 && sym_[j] == 0) {
        sym_[j] = sym_[i] * Rat(cartan_[i][j]) / Rat(cartan_[j][i]);
        todo.push_back(j);
      }
  }
  Rat top = *std::max_element(sym_.begin(), sym_.end());
  for (auto& d : sym_) d /= top;

  // positive roots by closing the simple roots under reflections
  std::set<Vec> seen;
  std::deque<Vec> queue;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    Vec r = queue.front();
    queue.pop_front();
    for (int j = 1; j <= type_.rank; ++j) {
      Vec s = reflect_root(r, j);
      if (positive(s) && seen.insert(s).second) queue.push_back(s);
    }
  }
  std::vector<Vec> pos(seen.begin(), seen.end());
  std::sort(pos.begin(), pos.end(), [](const Vec& a, const Vec& b) {
    long ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  roots_ = pos;
  for (const auto& r : pos) roots_.push_back(add(Vec(n, 0), r, -1));
  highest_ = pos.back();

  // inverse Cartan matrix, column by column
  exactlat::IntMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = cartan_[i][j];
  inverse_.assign(n, std::vector<Rat>(n));
  for (std::size_t j = 0; j < n; ++j) {
    auto col = exactlat::solve_rational(A, exactlat::LatticeVector::unit(n, j));
    for (std::size_t i = 0; i < n; ++i) inverse_[i][j] = (*col)[i];
  }
}

void RootSystem::check_node(int node) const {
  if (node < 1 || node > type_.rank) throw InvalidNode("node " + std::to_string(node) + " is not in " + type_.str());
}

Rat RootSystem::form(const Vec& a, const Vec& b) const {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) s += Rat(a[i] * b[j]) * sym_[i] * Rat(cartan_[i][j]);
  }
  return s;
}

std::vector<Vec> RootSystem::positive_roots() const {
  return std::vector<Vec>(roots_.begin(), roots_.begin() + static_cast<std::ptrdiff_t>(roots_.size() / 2));
}

bool RootSystem::is_long(const Vec& root) const { return squared_length(root) == 2; }

std::vector<Vec> RootSystem::long_roots() const {
  std::vector<Vec> out;
  for (const auto& r : roots_)
    if (is_long(r)) out.push_back(r);
  return out;
}

Vec RootSystem::labels_of_root(const Vec& root) const {
  const std::size_t n = root.size();
  Vec l(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) l[i] += cartan_[i][j] * root[j];
  return l;
}

Vec RootSystem::reflect_root(const Vec& root, int node) const {
  const std::size_t i = static_cast<std::size_t>(node - 1);
  long c = 0;
  for (std::size_t j = 0; j < root.size(); ++j) c += cartan_[i][j] * root[j];
  Vec out = root;
  out[i] -= c;
  return out;
}

Vec RootSystem::reflect_weight(const Vec& labels, int node) const {
  const std::size_t i = static_cast<std::size_t>(node - 1);
  long c = labels[i];
  Vec out = labels;
  // subtract c * alpha_i, whose labels are column i of the Cartan matrix
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= c * cartan_[k][i];
  return out;
}

Vec RootSystem::fundamental_weight(int node) const {
  check_node(node);
  Vec l(static_cast<std::size_t>(rank()), 0);
  l[static_cast<std::size_t>(node - 1)] = 1;
  return l;
}

Rat RootSystem::pairing(const Vec& labels, const Coweight& cw) const {
  // weight = sum_k x_k alpha_k with x = A^{-1} labels
  Rat s = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (cw.root_values[k] == 0) continue;
    Rat x = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) x += inverse_[k][i] * Rat(labels[i]);
    s += x * Rat(cw.root_values[k]);
  }
  return s;
}

long RootSystem::pairing_root(const Vec& root, const Coweight& cw) const {
  long s = 0;
  for (std::size_t k = 0; k < root.size(); ++k) s += root[k] * cw.root_values[k];
  return s;
}

Coweight RootSystem::fundamental_coweight(int node) const {
  check_node(node);
  Coweight c{Vec(static_cast<std::size_t>(rank()), 0), "ω" + std::to_string(node) + "^∨"};
  c.root_values[static_cast<std::size_t>(node - 1)] = 1;
  return c;
}

Coweight RootSystem::simple_coroot(int node) const {
  check_node(node);
  return Coweight{cartan_[static_cast<std::size_t>(node - 1)], "α" + std::to_string(node) + "^∨"};
}

Coweight RootSystem::zero_coweight() const { return Coweight{Vec(static_cast<std::size_t>(rank()), 0), "0"}; }

// ---------------------------------------------------------------- orbits and gradings

std::vector<OrbitPoint> weyl_orbit(const RootSystem& rs, const Vec& weight) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  if (weight.size() != n) throw DimensionMismatch("weight with " + std::to_string(weight.size()) + " labels in " + rs.type().str());
  std::vector<OrbitPoint> out;
  std::map<Vec, std::size_t> index;
  std::vector<std::size_t> level{0};
  out.push_back(OrbitPoint{weight, Vec(n, 0), {}});
  index[weight] = 0;
  while (!level.empty()) {
    std::map<Vec, OrbitPoint> next;  // keyed by weight, so the next level is lexicographic
    for (std::size_t p : level)
      for (int i = 1; i <= rs.rank(); ++i) {
        const OrbitPoint& cur = out[p];
        long c = cur.weight[static_cast<std::size_t>(i - 1)];
        if (c == 0) continue;
        Vec w = rs.reflect_weight(cur.weight, i);
        if (index.count(w) || next.count(w)) continue;
        OrbitPoint q{w, cur.offset, cur.word};
        q.offset[static_cast<std::size_t>(i - 1)] -= c;
        q.word.push_back(i);
        next.emplace(w, std::move(q));
      }
    level.clear();
    for (auto& [w, q] : next) {
      index[w] = out.size();
      level.push_back(out.size());
      out.push_back(std::move(q));
    }
  }
  return out;
}

Grading grading_by_node(const RootSystem& rs, int node, Convention c) {
  rs.check_node(node);
  return Grading{c == Convention::coefficient ? rs.fundamental_coweight(node) : rs.simple_coroot(node)};
}

std::vector<int> short_grading_nodes(const DynkinType& t) {
  RootSystem rs(t);
  std::vector<int> out;
  for (int j = 1; j <= t.rank; ++j) {
    Grading g = grading_by_node(rs, j, Convention::coefficient);
    if (std::all_of(rs.roots().begin(), rs.roots().end(), [&](const Vec& r) { return std::labs(g.value(rs, r)) <= 1; }))
      out.push_back(j);
  }
  return out;
}

}  // namespace cstar::rootsys
