#pragma once

#include "iwq/level_set.hpp"
#include "iwq/mesh.hpp"

namespace iwq {

/// Quadrature over the valid part of a trimmed box: points with phi < 0 and
/// positive mapped weights.
struct CutQuadrature {
  std::vector<Vec3> points;
  std::vector<double> weights;
  int depth_used = 0;

  double weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

/// Adaptive 2^dim-tree rule on box [lo,hi]: subcells entirely inside receive a
/// full tensor Gauss rule, entirely-outside subcells are dropped, mixed ones
/// recurse. At max_depth the Gauss points of a mixed leaf are kept iff
/// phi < 0 there, with unmodified mapped weights. Sign uniformity of a subcell
/// is decided on a 3^dim sample grid.
CutQuadrature cut_cell_quadrature(const LevelSet& ls, const Vec3& lo, const Vec3& hi, int dim,
                                  int gauss_order, int max_depth);

/// Streaming variant: emits (point, weight) pairs without materializing the
/// rule. Used by the assembly loops on fine subdivisions.
void cut_cell_quadrature_foreach(const LevelSet& ls, const Vec3& lo, const Vec3& hi, int dim,
                                 int gauss_order, int max_depth,
                                 const std::function<void(const Vec3&, double)>& emit);

/// Same adaptive scheme restricted to an axis-aligned face of the bounding
/// box: face_axis is the fixed axis, face_coord its coordinate. Uncut faces
/// yield a plain tensor Gauss rule.
CutQuadrature face_quadrature(const LevelSet& ls, int face_axis, double face_coord, const Vec3& lo,
                              const Vec3& hi, int dim, int gauss_order, int max_depth);

}  // namespace iwq
