#pragma once

#include <functional>
#include <iosfwd>

#include "iwq/gauss.hpp"
#include "iwq/knot_vector.hpp"

namespace iwq {

/// Per-element weighted-quadrature point sets; every point is one of the p+1
/// Gauss points of its element (bitwise, as constructed). No element-boundary
/// points.
struct PointLayout {
  Purpose purpose = Purpose::stiffness;
  std::vector<double> points;      // ascending global coordinates
  std::vector<Index> elem_first;   // CSR offsets per element, size num_elements+1

  Index num_points() const { return static_cast<Index>(points.size()); }
  Index num_elements() const { return static_cast<Index>(elem_first.size()) - 1; }
  Index points_in_element(Index e) const { return elem_first[static_cast<std::size_t>(e + 1)] - elem_first[static_cast<std::size_t>(e)]; }
};

/// Interior elements carry 2 (mass) or 3 (stiffness) points: the outermost
/// Gauss points of the (p+1)-point rule plus the middle one when the count is
/// odd. Elements adjacent to a C^{-1} breakpoint (including the open ends) and
/// elements listed in force_full carry all p+1 points.
PointLayout wq_point_layout(const UnivariateBasis& basis, Purpose purpose,
                            const std::vector<Index>& force_full = {});

/// Quadrature rule tailored to one test function and derivative order: the
/// weights absorb B^(alpha)_i, so applying the rule to a trial function v
/// yields  sum_k v(x_k) w_k  ~=  int v * B^(alpha)_i du.
struct WeightedRule {
  Index test_index = -1;
  int alpha = 0;
  std::vector<Index> point_ids;  // indices into a PointLayout, ascending
  std::vector<double> weights;

  double apply(const PointLayout& layout, const std::function<double(double)>& v) const;
  double weight_sum() const;
};

/// Least-norm exactness solve: for each test function T_i the rule satisfies
///   sum_k B*_j(x_k) w_k = int B*_j T_i du
/// for every target function B*_j overlapping supp(T_i). Throws
/// std::runtime_error naming the test function if a system is rank-deficient.
std::vector<WeightedRule> solve_rules(const UnivariateBasis& test_basis, const UnivariateBasis& target_basis,
                                      const PointLayout& layout);

/// Target space for a layout purpose: S^p_{r-1} for stiffness rules, the test
/// space itself for mass rules (whose 2-point interior layout supports it).
UnivariateBasis wq_target_space(const UnivariateBasis& test_basis, Purpose purpose);

/// alpha = 0 rules for the test basis on the given layout.
std::vector<WeightedRule> solve_wq_weights(const UnivariateBasis& test_basis, const PointLayout& layout);

/// alpha = 1 rules as a linear combination of the degree-(p-1) rules:
///   Q^(1)_{i,p} = a_i Q^(0)_{i-1,p-1} - b_i Q^(0)_{i,p-1}
/// in the trimmed-knot-vector indexing of derivative_basis(). rules_pm1 must
/// be solved on the same layout for the degree-(p-1) test space.
std::vector<WeightedRule> wq_derivative_rule(const UnivariateBasis& test_basis,
                                             const std::vector<WeightedRule>& rules_pm1);

/// Max over all (test, target) pairs of |quadrature - exact| / (1 + |exact|),
/// exact values from element-wise Gauss at degree-2p exactness.
double exactness_report(const std::vector<WeightedRule>& rules, const UnivariateBasis& test_basis,
                        const UnivariateBasis& target_basis, const PointLayout& layout);

/// int_lo^hi A_i^{(da)} B_j^{(db)} du by element-wise Gauss of the given order
/// over the union breakpoint grid. Independent of the weighted-quadrature
/// path; also serves as the dense oracle in tests.
double pairing_integral(const UnivariateBasis& A, Index i, int da, const UnivariateBasis& B, Index j,
                        int db, double lo, double hi, int order);

/// int_lo^hi B_i^{(deriv)} du, element-wise Gauss.
double function_integral(const UnivariateBasis& basis, Index i, int deriv, double lo, double hi, int order);

/// JSON rule document; doubles serialize with shortest round-trip so re-import
/// is bit-faithful.
struct RuleDocument {
  int degree = 0;
  std::vector<double> knots;
  Purpose purpose = Purpose::stiffness;
  std::vector<double> points;
  std::vector<WeightedRule> rules;
};

void export_rules_json(std::ostream& os, const RuleDocument& doc);
RuleDocument import_rules_json(std::istream& is);

}  // namespace iwq
