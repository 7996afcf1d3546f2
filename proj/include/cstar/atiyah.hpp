#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cstar/fan.hpp"
#include "cstar/tflow.hpp"

namespace cstar::atiyah {

using exactlat::LatticeVector;
using exactlat::QuotientMap;
using fan::Fan;

struct AtiyahType {
  int r = 1, s = 1, n = 3;
  int q() const { return n - 1 - r - s; }
  void validate() const;  // InvalidType
  std::string str() const;  // "r,s,n"
  static AtiyahType parse(const std::string& text);  // "1,1,3"; throws ParseError / InvalidType
};

enum class Lattice { big, flip };  // N (rank n+1) and N' = N/Zv (rank n)

struct NamedFan {
  std::string name;    // file-friendly, e.g. "hat_minus_plus"
  std::string symbol;  // human, e.g. "Σ̂_−^+"
  Lattice lattice;
  Fan fan;
};

class AtiyahSuite {
 public:
  explicit AtiyahSuite(AtiyahType t);

  const AtiyahType& type() const { return type_; }
  const LatticeVector& v() const { return v_; }
  const LatticeVector& u() const { return u_; }
  const QuotientMap& to_flip() const { return to_flip_; }

  // generator by label ("e0", "f1", "h2", "v", "-v", "u") in either lattice
  LatticeVector generator(const std::string& label, Lattice l) const;
  std::vector<std::string> e_labels() const;
  std::vector<std::string> f_labels() const;
  std::vector<std::string> h_labels() const;

  // labels of the distinguished cones
  std::vector<std::string> delta_minus() const { return f_labels(); }
  std::vector<std::string> delta_plus() const { return e_labels(); }
  std::vector<std::string> delta_zero() const { return h_labels(); }
  std::vector<std::string> delta_minus_i(int i) const;
  std::vector<std::string> delta_plus_j(int j) const;

  fan::Cone cone(const std::vector<std::string>& labels, Lattice l) const;
  Fan make_fan(const std::vector<std::vector<std::string>>& cones, Lattice l) const;

  const std::vector<NamedFan>& fans() const { return fans_; }
  const Fan& fan(const std::string& name) const;
  void replace_fan(const std::string& name, Fan f);  // for negative tests

  // the Σ_- fan with one δ_-^i removed (a deliberately broken suite)
  AtiyahSuite without_minus_cone(int i) const;

 private:
  AtiyahType type_;
  LatticeVector v_, u_;
  QuotientMap to_flip_;
  std::vector<NamedFan> fans_;
};

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
  std::optional<LatticeVector> witness;
};

struct Report {
  std::string title;
  std::vector<Check> checks;
  bool ok() const;
  const Check* first_failure() const;
};

Report verify_triangulations(const AtiyahSuite& s);
Report verify_bundle_structure(const AtiyahSuite& s);

struct BordismResult {
  Report report;
  tflow::BBReport bb;
  std::size_t sink = 0, source = 0, inner = 0;  // component indices
};

BordismResult verify_bordism(const AtiyahSuite& s);

// Degrees of V(e_i), V(f_j) on the fibre lines of the two exceptional loci
Report verify_normal_degrees(const AtiyahSuite& s);

struct SweepBounds {
  int max_r_plus_s = 5;
  int max_n = 7;
  int max_q = -1;  // no bound when negative
  static SweepBounds from_env();  // CSTAR_SWEEP="rs,n[,q]"
};

std::vector<AtiyahType> sweep(const SweepBounds& b);

}  // namespace cstar::atiyah
