#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cstar/rootsys.hpp"

namespace cstar::homog {

using rootsys::Coweight;
using rootsys::DynkinType;
using rootsys::RootSystem;
using rootsys::Vec;

// G/P for the marked nodes I (the parabolic of D \ I)
struct HomogeneousSpace {
  DynkinType type;
  std::vector<int> marked;  // sorted, nonempty
  void validate() const;     // InvalidNode
  std::string str() const;   // "A5(1,5)"
  static HomogeneousSpace parse(const std::string& text);
};

std::vector<int> adjoint_marking(const DynkinType& t);
HomogeneousSpace adjoint_space(const DynkinType& t);

// |Phi+| - |Phi+(D \ I)|
std::size_t dimension(const RootSystem& rs, const std::vector<int>& marked);

// negative roots -beta, beta positive with some marked coefficient: the tangent roots at the base point
std::vector<Vec> base_tangent_roots(const RootSystem& rs, const std::vector<int>& marked);

struct FixedPoint {
  rootsys::OrbitPoint point;
  long mu = 0;                // after the shift
  std::vector<long> tangent;  // <w(-beta), cw>, sorted descending
  std::size_t zeros = 0, nu_plus = 0, nu_minus = 0;
};

struct Bucket {
  long key = 0;
  std::size_t size = 0;
  std::map<std::size_t, std::size_t> zero_histogram;  // zero-weight count -> points
  std::size_t nu_plus = 0, nu_minus = 0;              // maxima over the bucket
  bool equalized = true;                              // nonzero weights are all +-1
};

struct ActionReport {
  std::string space;
  Coweight cw;
  std::size_t dim = 0;
  exactlat::Rat shift = 0;  // raw mu of the sink, subtracted from every value
  std::vector<FixedPoint> points;
  std::vector<Bucket> buckets;  // ascending key
  long bandwidth = 0;
  bool equalized_at_extremes = false;
  bool equalized = false;
};

// <w(-beta), cw> over the tangent roots at the base point, moved to w
std::vector<long> tangent_weight_multiset(const RootSystem& rs, const HomogeneousSpace& h,
                                          const rootsys::OrbitPoint& w, const Coweight& cw);

// mu(chi) = -<chi, cw> on the orbit of lambda_I, shifted so the sink sits at 0
ActionReport action_report(const RootSystem& rs, const HomogeneousSpace& h, const Coweight& cw);

// Named spaces are compared by (dimension, fixed points): products "X×Y" and unions "X⊔Y"
struct Fingerprint {
  std::map<std::size_t, std::size_t> histogram;  // component dimension -> fixed points
  std::size_t points() const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const std::string& name);  // "" or "∅" is empty
std::string describe(const Fingerprint& f);        // "dim 16: 27 points"

struct TableNames {
  std::string y_pm, y_0;  // y_0 is "∅" when empty
};

// expected Y± and Y0 for a short node outside the adjoint marking
std::optional<TableNames> table_names(const DynkinType& t, int node);

struct AdjointActionReport {
  DynkinType type;
  int node = 0;
  ActionReport action;  // points are the long roots, keys mu = -g (not shifted)
  long M = 0;           // max |g| over long roots
  bool short_grading = false;
  std::size_t y_pm_points = 0, y_0_points = 0;
  std::optional<std::size_t> y_pm_dim;
  std::map<std::size_t, std::size_t> y_0_histogram;
  std::optional<TableNames> expected;
  bool identified = false;  // fingerprints consistent with the expected names
};

AdjointActionReport adjoint_report(const DynkinType& t, int node);

// short nodes outside the adjoint marking
std::vector<int> adjoint_short_nodes(const DynkinType& t);

struct TableRow {
  std::string type, adjoint;
  std::vector<int> raw_short_nodes, short_nodes;
  std::vector<AdjointActionReport> rows;
};

// every simple type through E8 in the families A1-A8, B3-B8, C2-C8, D4-D8, E6-E8, F4, G2
std::vector<DynkinType> table_types();
std::vector<TableRow> adjoint_tables(const std::vector<DynkinType>& types);

struct Clause {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Bw3Certificate {
  std::string space, coweight;
  std::size_t n = 0;
  std::vector<std::size_t> bucket_sizes;
  std::vector<std::size_t> inner_zero_counts;
  std::optional<exactlat::Rat> index;
  std::vector<Clause> clauses;
  bool passed() const;
  const Clause* first_failure() const;
};

Bw3Certificate bw3_evaluate(const RootSystem& rs, const HomogeneousSpace& h, const Coweight& cw);

// the four certified spaces C3(3), A5(3), D6(6), E7(7) with the fundamental coweight of the node;
// throws CertificationFailure naming the first violated clause
Bw3Certificate bw3_certify(const DynkinType& t);
HomogeneousSpace bw3_space(const DynkinType& t);  // InvalidType outside the four

// every +-simple coroot and +-fundamental coweight
std::vector<Bw3Certificate> bw3_scan(const RootSystem& rs, const HomogeneousSpace& h);

}  // namespace cstar::homog
