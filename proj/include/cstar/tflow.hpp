#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cstar/fan.hpp"

namespace cstar::tflow {

using exactlat::Int;
using exactlat::LatticeVector;
using fan::Fan;
using fan::RaySet;
using fan::TDivisor;

// lambda^v; v must be nonzero and primitive
class OneParamSubgroup {
 public:
  explicit OneParamSubgroup(LatticeVector v);
  const LatticeVector& v() const { return v_; }

 private:
  LatticeVector v_;
};

// Cone whose orbit holds lim_{t->0} lambda^v(t) x for x in O(sigma); nullopt when no limit.
std::optional<RaySet> limit_cone(const Fan& f, const RaySet& sigma, const LatticeVector& v);

// Weights <m_i, v> for the dual basis of a smooth full-dimensional cone, sorted descending.
std::vector<Int> tangent_weights(const Fan& f, std::size_t max_cone, const LatticeVector& v);

struct FixedComponent {
  RaySet min_cone;                        // minimal cone with v in its span
  Fan component_fan;                      // star quotient at min_cone
  std::size_t dim = 0;
  std::optional<std::size_t> weight_cone;  // smooth max cone used for the weights
  std::vector<Int> tangent_weights;        // empty when no smooth max cone is available
  std::size_t nu_plus = 0, nu_minus = 0;
  std::optional<Int> mu;
};

std::vector<FixedComponent> fixed_components(const Fan& f, const OneParamSubgroup& h);

// mu(component) = -<m_sigma, v>, aligned with fixed_components(f, h)
std::vector<Int> mu_values(const Fan& f, const OneParamSubgroup& h, const TDivisor& d);

struct CurveRow {
  RaySet wall;
  std::size_t source_cone = 0, sink_cone = 0;  // max cone indices of the endpoints
  std::size_t source = 0, sink = 0;            // component indices
  bool fixed = false;                          // the curve lies in a fixed component
  Int delta = 0;                               // weight along the curve at its source end
  Int degree = 0;
  Int mu_difference = 0;                       // mu(source) - mu(sink)
  bool am_fm = true;                           // mu_difference == delta * degree
  bool normal_weights = true;                  // a_rho - b_rho == delta * (D_rho . C)
};

struct CurveTable {
  std::vector<CurveRow> rows;
  std::vector<RaySet> skipped;  // walls bounding fewer than two full-dimensional cones
};

CurveTable invariant_curve_table(const Fan& f, const OneParamSubgroup& h, const TDivisor& d);

// (D_rho . C)_rho for every complete non-fixed invariant curve (rational fans allowed)
std::vector<std::vector<exactlat::Rat>> moving_curve_classes(const Fan& f, const OneParamSubgroup& h);

struct BBReport {
  LatticeVector v;
  std::vector<FixedComponent> components;
  std::optional<std::size_t> source, sink;
  bool has_divisor = false;
  std::optional<Int> bandwidth;
  bool equalized = false;
  bool b_type = false;
  std::size_t curve_class_rank = 0;             // dim of the span of moving curve classes
  std::optional<long> bordism_rank;             // curve_class_rank - 1 for B-type actions
  std::optional<long> class_group_proxy;        // free rank of Cl - 1, when defined
  CurveTable curves;
};

BBReport bb_report(const Fan& f, const OneParamSubgroup& h, const std::optional<TDivisor>& d);

}  // namespace cstar::tflow
