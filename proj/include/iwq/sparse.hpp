#pragma once

#include <Eigen/Sparse>
#include <iosfwd>

#include "iwq/types.hpp"

namespace iwq {

struct CsrMatrix {
  Index rows = 0, cols = 0;
  std::vector<Index> row_ptr;
  std::vector<Index> col_idx;
  std::vector<double> values;

  Index nnz() const { return static_cast<Index>(values.size()); }
  Eigen::SparseMatrix<double> to_eigen() const;
  void write_matrix_market(std::ostream& os) const;
  double frobenius() const;
  /// ||A - B||_F / max(||A||_F, ||B||_F); matrices may have different patterns.
  static double relative_difference(const CsrMatrix& a, const CsrMatrix& b);
  /// ||A - A^T||_F / ||A||_F.
  double asymmetry() const;
};

CsrMatrix csr_from_eigen(const Eigen::SparseMatrix<double>& m);

/// Coordinate-format staging with deterministic merge: entries are tagged by
/// their source unit (element or test function), and duplicates are summed in
/// (row, col, tag) order, so the result is bit-stable regardless of how the
/// staging buffers were filled across threads.
class SparseBuilder {
 public:
  SparseBuilder(Index rows, Index cols, int num_buffers);

  void add(int buffer, Index row, Index col, double value, Index tag);
  CsrMatrix finish();

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }

 private:
  struct Entry {
    Index row, col, tag;
    double value;
  };
  Index rows_, cols_;
  std::vector<std::vector<Entry>> buffers_;
};

}  // namespace iwq
