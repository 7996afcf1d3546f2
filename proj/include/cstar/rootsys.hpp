#pragma once

#include <string>
#include <vector>

#include "cstar/exactlat.hpp"

namespace cstar::rootsys {

using exactlat::Rat;
using Vec = std::vector<long>;

struct DynkinType {
  char letter = 'A';
  int rank = 1;
  void validate() const;  // InadmissibleType
  std::string str() const;  // "E7"
  static DynkinType parse(const std::string& text);  // "E7", "c3"
  friend bool operator==(const DynkinType&, const DynkinType&) = default;
};

// Coweight given by its values on the simple roots.
struct Coweight {
  Vec root_values;
  std::string name;
  Coweight operator-() const;
};

// Realized in the simple-root basis (Bourbaki numbering, nodes 1..rank).
// Roots are coefficient vectors over the simple roots; weights are Dynkin labels.
class RootSystem {
 public:
  explicit RootSystem(DynkinType t);

  const DynkinType& type() const { return type_; }
  int rank() const { return type_.rank; }
  // cartan()[i][j] = <alpha_j, alpha_i^vee>
  const std::vector<Vec>& cartan() const { return cartan_; }
  // (alpha_i, alpha_i) / 2, long roots normalized to squared length 2
  const std::vector<Rat>& symmetrizer() const { return sym_; }

  Rat form(const Vec& a, const Vec& b) const;  // invariant form on root coordinates
  Rat squared_length(const Vec& root) const { return form(root, root); }

  // all roots: positive ones by height then lexicographically, then their negatives
  const std::vector<Vec>& roots() const { return roots_; }
  std::vector<Vec> positive_roots() const;
  std::vector<Vec> long_roots() const;
  bool is_long(const Vec& root) const;
  const Vec& highest_root() const { return highest_; }

  Vec labels_of_root(const Vec& root) const;  // <root, alpha_i^vee>
  Vec reflect_root(const Vec& root, int node) const;
  Vec reflect_weight(const Vec& labels, int node) const;
  Vec fundamental_weight(int node) const;

  // <weight, cw> for a weight in Dynkin labels
  Rat pairing(const Vec& labels, const Coweight& cw) const;
  long pairing_root(const Vec& root, const Coweight& cw) const;

  Coweight fundamental_coweight(int node) const;  // <alpha_k, .> = delta_jk
  Coweight simple_coroot(int node) const;         // <alpha_k, .> = cartan[j][k]
  Coweight zero_coweight() const;

  void check_node(int node) const;  // InvalidNode

 private:
  DynkinType type_;
  std::vector<Vec> cartan_;
  std::vector<Rat> sym_;
  std::vector<Vec> roots_;
  Vec highest_;
  std::vector<std::vector<Rat>> inverse_;  // inverse Cartan matrix
};

struct OrbitPoint {
  Vec weight;             // Dynkin labels of w(start)
  Vec offset;             // w(start) - start in root coordinates
  std::vector<int> word;  // apply these reflections to start, left to right
};

// BFS closure under simple reflections; each BFS level is visited in lexicographic order.
std::vector<OrbitPoint> weyl_orbit(const RootSystem& rs, const Vec& weight);

enum class Convention { coefficient, coroot };

struct Grading {
  Coweight cw;
  long value(const RootSystem& rs, const Vec& root) const { return rs.pairing_root(root, cw); }
};

Grading grading_by_node(const RootSystem& rs, int node, Convention c);

// nodes whose coefficient grading only takes the values -1, 0, 1 on roots
std::vector<int> short_grading_nodes(const DynkinType& t);

}  // namespace cstar::rootsys
