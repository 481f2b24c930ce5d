#pragma once

#include <Eigen/Sparse>

#include "iwq/mesh.hpp"

namespace iwq {

/// Per-axis strong Dirichlet flags on the bounding-box faces: drop the basis
/// layer on the lo/hi face of each flagged axis before extension.
struct DirichletFaces {
  std::array<bool, 3> lo{false, false, false};
  std::array<bool, 3> hi{false, false, false};
};

/// Extended-B-spline extraction: stable shape functions N_i = sum_j C_ij B_j.
/// Inner functions (>= 1 fully interior element in the support) map to unit
/// rows; outer functions are absorbed into the nearest (p+1)^dim box of inner
/// functions with tensor-Lagrange coefficients in the Greville nodes.
struct ExtractionMatrix {
  Eigen::SparseMatrix<double> C;        // num_stable x num_background
  std::vector<Index> stable_functions;  // background index per row
  std::vector<std::uint8_t> dropped;    // per background fn: removed by a Dirichlet face

  Index rows() const { return C.rows(); }
  Index cols() const { return C.cols(); }
};

ExtractionMatrix build_extraction(const TensorBasis& basis, const CartesianMesh& mesh,
                                  const std::vector<ElementClass>& classes, const DirichletFaces& bc);

/// Greville abscissa of function i: the average of knots i+1 .. i+p.
double greville(const UnivariateBasis& basis, Index i);

}  // namespace iwq
