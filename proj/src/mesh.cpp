#include "iwq/mesh.hpp"

namespace iwq {

CartesianMesh CartesianMesh::from_basis(const TensorBasis& basis) {
  CartesianMesh mesh;
  mesh.dim = basis.dim();
  std::array<Index, 3> ext{1, 1, 1};
  for (int d = 0; d < mesh.dim; ++d) {
    const auto& ax = basis.axis(d);
    auto& b = mesh.bounds[static_cast<std::size_t>(d)];
    b.push_back(ax.element_lo(0));
    for (Index e = 0; e < ax.num_elements(); ++e) b.push_back(ax.element_hi(e));
    ext[static_cast<std::size_t>(d)] = ax.num_elements();
  }
  mesh.indexer = GridIndexer(ext, mesh.dim);
  return mesh;
}

void CartesianMesh::element_box(Index flat, Vec3& lo_out, Vec3& hi_out) const {
  const auto mi = indexer.unflat(flat);
  lo_out = {0, 0, 0};
  hi_out = {0, 0, 0};
  for (int d = 0; d < dim; ++d) {
    lo_out[static_cast<std::size_t>(d)] = lo(d, mi[static_cast<std::size_t>(d)]);
    hi_out[static_cast<std::size_t>(d)] = hi(d, mi[static_cast<std::size_t>(d)]);
  }
}

double CartesianMesh::element_volume(Index flat) const {
  Vec3 a, b;
  element_box(flat, a, b);
  double v = 1.0;
  for (int d = 0; d < dim; ++d) v *= b[static_cast<std::size_t>(d)] - a[static_cast<std::size_t>(d)];
  return v;
}

std::vector<ElementClass> classify_elements(const LevelSet& ls, const CartesianMesh& mesh, int degree) {
  const Index ne = mesh.num_elements();
  std::vector<ElementClass> out(static_cast<std::size_t>(ne));
  const int ns = degree + 2;

#pragma omp parallel for schedule(static)
  for (Index e = 0; e < ne; ++e) {
    Vec3 lo, hi;
    mesh.element_box(e, lo, hi);

    bool has_neg = false, has_pos = false, has_zero = false;
    auto sample = [&](const Vec3& x) {
      const double v = ls.phi(x);
      if (v < 0.0)
        has_neg = true;
      else if (v > 0.0)
        has_pos = true;
      else
        has_zero = true;
    };

    // Corners.
    const int ncorner = 1 << mesh.dim;
    for (int c = 0; c < ncorner; ++c) {
      Vec3 x{0, 0, 0};
      for (int d = 0; d < mesh.dim; ++d)
        x[static_cast<std::size_t>(d)] = (c >> d) & 1 ? hi[static_cast<std::size_t>(d)] : lo[static_cast<std::size_t>(d)];
      sample(x);
    }
    // Interior tensor grid, (p+2)^dim points.
    std::array<Index, 3> g{0, 0, 0};
    GridIndexer gi({ns, ns, ns}, mesh.dim);
    for (Index k = 0; k < gi.size(); ++k) {
      g = gi.unflat(k);
      Vec3 x{0, 0, 0};
      for (int d = 0; d < mesh.dim; ++d) {
        const double t = (g[static_cast<std::size_t>(d)] + 0.5) / ns;
        x[static_cast<std::size_t>(d)] =
            lo[static_cast<std::size_t>(d)] + t * (hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)]);
      }
      sample(x);
    }

    if (has_zero || (has_neg && has_pos))
      out[static_cast<std::size_t>(e)] = ElementClass::cut;
    else if (has_neg)
      out[static_cast<std::size_t>(e)] = ElementClass::interior;
    else
      out[static_cast<std::size_t>(e)] = ElementClass::exterior;
  }
  return out;
}

}  // namespace iwq
