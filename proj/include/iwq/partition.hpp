#pragma once

#include <iosfwd>

#include "iwq/mesh.hpp"

namespace iwq {

enum class FunctionClass : std::uint8_t { exterior, interior, cut, gauss };

/// Element-aligned box partition of the background mesh. Admissible boxes
/// contain only interior elements; the facets between admissible and
/// inadmissible (or out-of-mesh) boxes form the interface that guides the
/// placement of artificial discontinuities.
struct BoxPartition {
  int h_b = 3;
  std::array<int, 3> shift{0, 0, 0};  // per direction, in [0, h_b-1)
  std::array<Index, 3> boxes_per_axis{1, 1, 1};
  std::vector<bool> admissible;      // per box, lexicographic (axis 1 fastest)
  std::vector<bool> element_in_wq;   // per element: inside an admissible box
  Index gauss_element_count = 0;     // interior elements in inadmissible boxes

  struct Facet {
    int axis;           // facet normal direction
    Index boundary;     // element-boundary index on that axis (facet at bounds[axis][boundary])
    std::array<Index, 3> lo;  // transverse element range [lo, hi) per axis (axis itself ignored)
    std::array<Index, 3> hi;
  };
  std::vector<Facet> facets;

  Index box_of_element(const std::array<Index, 3>& el, int dim) const;
};

/// Enumerates the (h_b-1)^dim shifts and returns the partition with the
/// fewest Gauss elements (ties: lexicographically smallest shift).
BoxPartition global_box_partition(const CartesianMesh& mesh, const std::vector<ElementClass>& classes,
                                  int h_b);

/// Function classification against the partition per the global strategy,
/// with the per-function artificial discontinuities.
struct FunctionClassification {
  std::vector<FunctionClass> cls;
  /// For cut functions: per axis, the facet coordinates crossing the open
  /// support interior, extended across the support (breakpoint indices on the
  /// axis, i.e. element boundaries).
  std::vector<std::array<std::vector<Index>, 3>> gammas;

  std::array<Index, 4> counts() const;  // exterior, interior, cut, gauss
};

FunctionClassification classify_functions_global(const TensorBasis& basis, const CartesianMesh& mesh,
                                                 const std::vector<ElementClass>& classes,
                                                 const BoxPartition& partition);

/// Function classification in the plain (individual) sense: exterior /
/// interior / cut from the support's element classes alone.
std::vector<FunctionClass> classify_functions_plain(const TensorBasis& basis, const CartesianMesh& mesh,
                                                    const std::vector<ElementClass>& classes);

/// Individual gamma placement for one cut function: at most one breakpoint
/// per direction, chosen to maximize the element count of the cut-free
/// tensor-product quadrant set. Ties prefer gammas closest to the support
/// center, then the smaller coordinate.
struct IndividualPlacement {
  std::array<Index, 3> gamma_boundary{-1, -1, -1};  // element-boundary index per axis, -1 = none
  /// Retained quadrants as element ranges [lo, hi) per axis.
  std::vector<std::array<std::pair<Index, Index>, 3>> regions;
  /// Interior support elements outside every retained quadrant (flat ids).
  std::vector<Index> gauss_elements;
  Index wq_element_count = 0;
};

IndividualPlacement individual_placement(const TensorBasis& basis, const CartesianMesh& mesh,
                                         const std::vector<ElementClass>& classes,
                                         const std::array<Index, 3>& fn);

/// Diagnostic JSON: boxes, admissibility, interface facets, function classes
/// and per-class counts.
void dump_classification_json(std::ostream& os, const CartesianMesh& mesh, const BoxPartition& partition,
                              const FunctionClassification& fc);

}  // namespace iwq
