#pragma once

#include "iwq/knot_vector.hpp"

namespace iwq {

/// Sparse coarse-to-refined coefficient map from knot insertion. Row i of the
/// matrix gives the refined coefficient i as an affine combination of coarse
/// coefficients; row sums are 1 and entries lie in [0,1].
class SubdivisionMatrix {
 public:
  SubdivisionMatrix() = default;
  static SubdivisionMatrix identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

  struct Entry {
    Index col;
    double value;
  };
  const std::vector<Entry>& row(Index i) const { return data_[static_cast<std::size_t>(i)]; }

  /// Refined coefficients from coarse ones.
  std::vector<double> apply(const std::vector<double>& coarse) const;

  /// this := single * this (compose another single-insertion step on top).
  void compose_left(const SubdivisionMatrix& single);

  /// Column access: the refined expansion of coarse function j.
  std::vector<Entry> column(Index j) const;

  static SubdivisionMatrix single_insertion(const KnotVector& kv, double u_hat);

 private:
  Index rows_ = 0, cols_ = 0;
  std::vector<std::vector<Entry>> data_;  // per refined row
};

/// Inserts u_hat until it reaches target_multiplicity. Returns the refined
/// basis and the accumulated subdivision matrix. u_hat must lie strictly
/// inside the domain and target_multiplicity must not exceed p+1.
std::pair<UnivariateBasis, SubdivisionMatrix> insert_knot(const UnivariateBasis& basis, double u_hat,
                                                          int target_multiplicity);

/// Inserts each value of gammas to multiplicity p+1 (C^{-1}), composing the
/// subdivision matrices.
std::pair<UnivariateBasis, SubdivisionMatrix> insert_discontinuities(const UnivariateBasis& basis,
                                                                     const std::vector<double>& gammas);

/// Splits an open knot vector that is C^{-1} at the given interior breakpoints
/// into per-segment open knot vectors. Returns one basis per segment plus the
/// offset of each segment's first function in the unsplit basis.
std::vector<std::pair<UnivariateBasis, Index>> split_at_discontinuities(const UnivariateBasis& basis,
                                                                        const std::vector<double>& gammas);

}  // namespace iwq
