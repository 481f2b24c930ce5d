#pragma once

#include "iwq/subdivision.hpp"
#include "iwq/wq.hpp"

namespace iwq {

/// One tensor-product piece of a test function's support between artificial
/// discontinuities, with the weighted rules restricted to it. Applying rule0
/// to a trial v integrates v * B_i over exactly this element range.
struct RuleSegment {
  Index elem_begin = 0;  // element range [begin, end) on the coarse axis mesh
  Index elem_end = 0;
  WeightedRule rule0;
  WeightedRule rule1;  // present only when built for stiffness
};

/// Univariate (discontinuous) weighted quadrature for one parametric axis.
/// With an empty gamma list this reduces to the plain WQ rules; otherwise the
/// rules are built on the C^{-1}-refined basis and mapped back through the
/// subdivision matrix, so every segment integrates its element range exactly.
struct AxisRules {
  UnivariateBasis basis;
  PointLayout layout;
  std::vector<double> gammas;                            // sorted, strictly interior breakpoints
  std::vector<std::vector<RuleSegment>> per_function;    // ascending segments per test function

  // Trial tables at the layout points: first active index and the p+1 values
  // of B and B' per point, flattened row-major.
  std::vector<Index> active_first;
  std::vector<double> trial_val;   // num_points x (p+1)
  std::vector<double> trial_der;

  Index point_element(Index point_id) const;
};

/// Builds the per-function rule segments for one axis. Gammas must be interior
/// breakpoints of the basis; elements adjacent to a gamma receive all p+1
/// Gauss points (nested points). with_derivatives additionally builds the
/// alpha = 1 rules per segment via the degree-(p-1) combination applied to
/// each sub-basis of the split at the gammas.
AxisRules build_axis_rules(const UnivariateBasis& basis, std::vector<double> gammas, Purpose purpose,
                           bool with_derivatives);

/// Per-function rules with the points of flagged elements dropped (the
/// cut-side replacement step). Segments fully inside flagged elements vanish.
std::vector<WeightedRule> retained_rules(const AxisRules& rules, const std::vector<bool>& drop_element,
                                         int alpha);

/// Maximal number of quadrature points of an equally sized admissible box:
/// prod_d (p_d+1) * 2 + prod_d n_q^i * (h_b - 2).
Index box_point_bound(const std::vector<int>& degrees, int nqi, int h_b, int dim);

}  // namespace iwq
