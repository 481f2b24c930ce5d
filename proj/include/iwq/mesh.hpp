#pragma once

#include "iwq/knot_vector.hpp"
#include "iwq/level_set.hpp"

namespace iwq {

enum class ElementClass : std::uint8_t { interior, cut, exterior };

/// Tensor-product background mesh spanned by the basis breakpoints.
struct CartesianMesh {
  int dim = 0;
  std::array<std::vector<double>, 3> bounds;  // per axis: element boundaries, ascending
  GridIndexer indexer;

  static CartesianMesh from_basis(const TensorBasis& basis);

  Index num_elements() const { return indexer.size(); }
  double lo(int d, Index e) const { return bounds[static_cast<std::size_t>(d)][static_cast<std::size_t>(e)]; }
  double hi(int d, Index e) const { return bounds[static_cast<std::size_t>(d)][static_cast<std::size_t>(e + 1)]; }
  Index num_elements_on_axis(int d) const { return indexer.extent[static_cast<std::size_t>(d)]; }

  void element_box(Index flat, Vec3& lo_out, Vec3& hi_out) const;
  double element_volume(Index flat) const;
};

/// Per-element interior/cut/exterior against the level set: each element is
/// sampled on a (p+2)^dim tensor grid plus its corners; mixed signs or an
/// exact zero make it cut.
std::vector<ElementClass> classify_elements(const LevelSet& ls, const CartesianMesh& mesh, int degree);

}  // namespace iwq
