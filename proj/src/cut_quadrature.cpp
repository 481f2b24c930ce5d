#include "iwq/cut_quadrature.hpp"

#include "iwq/gauss.hpp"

namespace iwq {

namespace {

enum class BoxSign { negative, positive, mixed };

// Sign of phi over a box, decided on the 3^k tensor grid of the active axes
// (corners, edge/face midpoints, center). Any zero counts as mixed.
BoxSign box_sign(const LevelSet& ls, const Vec3& lo, const Vec3& hi, const std::vector<int>& axes,
                 const Vec3& base) {
  bool neg = false, pos = false;
  const int k = static_cast<int>(axes.size());
  int total = 1;
  for (int d = 0; d < k; ++d) total *= 3;
  for (int s = 0; s < total; ++s) {
    Vec3 x = base;
    int rem = s;
    for (int d = 0; d < k; ++d) {
      const int t = rem % 3;
      rem /= 3;
      const std::size_t a = static_cast<std::size_t>(axes[static_cast<std::size_t>(d)]);
      x[a] = t == 0 ? lo[a] : (t == 1 ? 0.5 * (lo[a] + hi[a]) : hi[a]);
    }
    const double v = ls.phi(x);
    if (v < 0.0)
      neg = true;
    else if (v > 0.0)
      pos = true;
    else
      return BoxSign::mixed;
    if (neg && pos) return BoxSign::mixed;
  }
  return neg ? BoxSign::negative : BoxSign::positive;
}

struct Worker {
  const LevelSet& ls;
  std::vector<int> axes;  // active (subdivided) axes
  Vec3 base;              // coordinates of inactive axes
  const GaussRule gauss;
  int max_depth;
  const std::function<void(const Vec3&, double)>& emit;

  void full_rule(const Vec3& lo, const Vec3& hi) const {
    const int k = static_cast<int>(axes.size());
    const int q = gauss.order;
    std::array<std::vector<double>, 3> x, w;
    for (int d = 0; d < k; ++d) {
      const std::size_t a = static_cast<std::size_t>(axes[static_cast<std::size_t>(d)]);
      gauss.mapped(lo[a], hi[a], x[static_cast<std::size_t>(d)], w[static_cast<std::size_t>(d)]);
    }
    int total = 1;
    for (int d = 0; d < k; ++d) total *= q;
    for (int s = 0; s < total; ++s) {
      Vec3 p = base;
      double weight = 1.0;
      int rem = s;
      for (int d = 0; d < k; ++d) {
        const int t = rem % q;
        rem /= q;
        p[static_cast<std::size_t>(axes[static_cast<std::size_t>(d)])] = x[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
        weight *= w[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
      }
      emit(p, weight);
    }
  }

  void leaf_rule(const Vec3& lo, const Vec3& hi) const {
    const int k = static_cast<int>(axes.size());
    const int q = gauss.order;
    std::array<std::vector<double>, 3> x, w;
    for (int d = 0; d < k; ++d) {
      const std::size_t a = static_cast<std::size_t>(axes[static_cast<std::size_t>(d)]);
      gauss.mapped(lo[a], hi[a], x[static_cast<std::size_t>(d)], w[static_cast<std::size_t>(d)]);
    }
    int total = 1;
    for (int d = 0; d < k; ++d) total *= q;
    for (int s = 0; s < total; ++s) {
      Vec3 p = base;
      double weight = 1.0;
      int rem = s;
      for (int d = 0; d < k; ++d) {
        const int t = rem % q;
        rem /= q;
        p[static_cast<std::size_t>(axes[static_cast<std::size_t>(d)])] = x[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
        weight *= w[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
      }
      if (ls.phi(p) < 0.0) emit(p, weight);
    }
  }

  void recurse(Vec3 lo, Vec3 hi, int depth) const {
    switch (box_sign(ls, lo, hi, axes, base)) {
      case BoxSign::positive:
        return;
      case BoxSign::negative:
        full_rule(lo, hi);
        return;
      case BoxSign::mixed:
        break;
    }
    if (depth >= max_depth) {
      leaf_rule(lo, hi);
      return;
    }
    const int k = static_cast<int>(axes.size());
    const int children = 1 << k;
    for (int c = 0; c < children; ++c) {
      Vec3 clo = lo, chi = hi;
      for (int d = 0; d < k; ++d) {
        const std::size_t a = static_cast<std::size_t>(axes[static_cast<std::size_t>(d)]);
        const double mid = 0.5 * (lo[a] + hi[a]);
        if ((c >> d) & 1)
          clo[a] = mid;
        else
          chi[a] = mid;
      }
      recurse(clo, chi, depth + 1);
    }
  }
};

}  // namespace

void cut_cell_quadrature_foreach(const LevelSet& ls, const Vec3& lo, const Vec3& hi, int dim,
                                 int gauss_order, int max_depth,
                                 const std::function<void(const Vec3&, double)>& emit) {
  if (max_depth < 1) throw std::invalid_argument("cut_cell_quadrature: max_depth must be >= 1");
  std::vector<int> axes;
  for (int d = 0; d < dim; ++d) axes.push_back(d);
  Worker w{ls, axes, lo, gauss_legendre(gauss_order), max_depth, emit};
  w.recurse(lo, hi, 0);
}

CutQuadrature cut_cell_quadrature(const LevelSet& ls, const Vec3& lo, const Vec3& hi, int dim,
                                  int gauss_order, int max_depth) {
  CutQuadrature rule;
  rule.depth_used = max_depth;
  cut_cell_quadrature_foreach(ls, lo, hi, dim, gauss_order, max_depth, [&](const Vec3& p, double w) {
    rule.points.push_back(p);
    rule.weights.push_back(w);
  });
  return rule;
}

CutQuadrature face_quadrature(const LevelSet& ls, int face_axis, double face_coord, const Vec3& lo,
                              const Vec3& hi, int dim, int gauss_order, int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("face_quadrature: max_depth must be >= 1");
  CutQuadrature rule;
  rule.depth_used = max_depth;
  std::vector<int> axes;
  for (int d = 0; d < dim; ++d)
    if (d != face_axis) axes.push_back(d);
  Vec3 base = lo;
  base[static_cast<std::size_t>(face_axis)] = face_coord;
  const std::function<void(const Vec3&, double)> emit = [&](const Vec3& p, double w) {
    rule.points.push_back(p);
    rule.weights.push_back(w);
  };
  Worker w{ls, axes, base, gauss_legendre(gauss_order), max_depth, emit};
  Vec3 flo = lo, fhi = hi;
  flo[static_cast<std::size_t>(face_axis)] = face_coord;
  fhi[static_cast<std::size_t>(face_axis)] = face_coord;
  w.recurse(flo, fhi, 0);
  return rule;
}

}  // namespace iwq
