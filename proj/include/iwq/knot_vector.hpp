#pragma once

#include <vector>

#include "iwq/types.hpp"

namespace iwq {

/// Non-decreasing knot sequence with a degree. Open (clamped) knot vectors
/// carry the end values with multiplicity degree+1.
class KnotVector {
 public:
  KnotVector() = default;
  KnotVector(std::vector<double> knots, int degree);

  /// Uniform open knot vector on [a,b] with num_elements spans.
  static KnotVector uniform_open(int degree, int num_elements, double a = 0.0, double b = 1.0);

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }
  double operator[](Index i) const { return knots_[static_cast<std::size_t>(i)]; }
  Index num_knots() const { return static_cast<Index>(knots_.size()); }
  /// Number of B-splines defined by this vector.
  Index num_functions() const { return num_knots() - degree_ - 1; }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }
  bool is_open() const;

  /// Index s with knots[s] <= u < knots[s+1]; the right domain endpoint maps
  /// to the last nonempty span. Throws std::domain_error outside [front,back].
  Index find_span(double u) const;

  /// Multiplicity of the value u in the sequence (exact comparison).
  int multiplicity(double u) const;

  /// Distinct knot values and their multiplicities.
  void breakpoints(std::vector<double>& values, std::vector<int>& mults) const;

 private:
  std::vector<double> knots_;
  int degree_ = 0;
};

/// Univariate B-spline basis over a knot vector: evaluation with derivatives,
/// support queries, element (nonempty span) bookkeeping.
class UnivariateBasis {
 public:
  UnivariateBasis() = default;
  explicit UnivariateBasis(KnotVector kv);

  const KnotVector& kv() const { return kv_; }
  int degree() const { return kv_.degree(); }
  Index num_functions() const { return kv_.num_functions(); }

  Index num_elements() const { return static_cast<Index>(element_span_.size()); }
  /// Span index of element e (nonempty spans only, ascending).
  Index element_span(Index e) const { return element_span_[static_cast<std::size_t>(e)]; }
  double element_lo(Index e) const { return kv_[element_span(e)]; }
  double element_hi(Index e) const { return kv_[element_span(e) + 1]; }
  /// Element containing u (right endpoint maps to the last element).
  Index element_of(double u) const;

  /// Breakpoint values (distinct knots) and per-breakpoint regularity
  /// r = degree - multiplicity. Interior C^{-1} breakpoints have r = -1.
  const std::vector<double>& breakpoint_values() const { return bp_values_; }
  const std::vector<int>& regularities() const { return regularity_; }

  /// Support of function i as [knots[i], knots[i+p+1]].
  double support_lo(Index i) const { return kv_[i]; }
  double support_hi(Index i) const { return kv_[i + degree() + 1]; }
  /// Element range [first, last) covered by supp(B_i).
  std::pair<Index, Index> support_elements(Index i) const;
  /// Functions with support overlapping element e: first index + count p+1.
  Index first_function_on_element(Index e) const { return element_span(e) - degree(); }

  /// Evaluates the p+1 active functions and derivatives up to max_deriv at u.
  /// Returns the index of the first active function; values[k][j] holds
  /// B^(k)_{first+j}(u). Throws std::domain_error outside the domain.
  Index eval(double u, int max_deriv, std::vector<std::vector<double>>& values) const;

  /// Single-function evaluation (zero outside support). Convenience for tests
  /// and small dense oracles; assembly uses eval().
  double value(Index i, double u, int deriv = 0) const;

  /// Coefficients of the degree-(p-1) representation of the first derivative:
  /// B'_{i,p} = a_i B_{i-1}' ... expressed on the trimmed knot vector, see
  /// derivative_basis().
  struct DerivCoeffs {
    std::vector<double> a;  // a[i] multiplies lower-degree function i-1
    std::vector<double> b;  // b[i] multiplies lower-degree function i
  };

 private:
  KnotVector kv_;
  std::vector<Index> element_span_;
  std::vector<double> bp_values_;
  std::vector<int> regularity_;
};

/// Degree-(p-1) basis on the same breakpoints (one copy of each end knot
/// dropped) and coefficients such that
///   B^(1)_{i,p} = a_i * L_{i-1} - b_i * L_i
/// where L_j are the functions of the returned basis. Zero-length spans give
/// coefficient 0. Throws std::invalid_argument for p = 0.
std::pair<UnivariateBasis, UnivariateBasis::DerivCoeffs> derivative_basis(const UnivariateBasis& basis);

/// Target space for weighted-quadrature exactness: same degree, regularity
/// reduced by one at interior breakpoints (multiplicity raised, capped at p+1).
UnivariateBasis reduce_regularity(const UnivariateBasis& basis);

/// Tensor-product basis; flat indexing is lexicographic with axis 1 fastest.
class TensorBasis {
 public:
  TensorBasis() = default;
  TensorBasis(std::vector<UnivariateBasis> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const UnivariateBasis& axis(int d) const { return axes_[static_cast<std::size_t>(d)]; }
  Index num_functions() const { return fn_indexer_.size(); }
  const GridIndexer& function_indexer() const { return fn_indexer_; }
  const GridIndexer& element_indexer() const { return el_indexer_; }

  /// B_{i}(x) = prod_d B_{i_d}(x_d).
  double value(const std::array<Index, 3>& mi, const Vec3& x) const;

 private:
  std::vector<UnivariateBasis> axes_;
  GridIndexer fn_indexer_;
  GridIndexer el_indexer_;
};

}  // namespace iwq
