#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwq {

using Index = std::int64_t;

/// Point in parameter/physical space; unused trailing components are zero.
using Vec3 = std::array<double, 3>;

enum class Purpose { mass, stiffness };
enum class Form { mass, stiffness };
enum class Strategy { element, row_individual, row_global, pointloop };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::element: return "element";
    case Strategy::row_individual: return "row-individual";
    case Strategy::row_global: return "row-global";
    case Strategy::pointloop: return "pointloop";
  }
  return "?";
}

/// Multi-index over a tensor grid, axis 1 fastest in the flat ordering.
struct GridIndexer {
  std::array<Index, 3> extent{1, 1, 1};
  int dim = 0;

  GridIndexer() = default;
  GridIndexer(std::array<Index, 3> ext, int d) : extent(ext), dim(d) {}

  Index size() const {
    Index n = 1;
    for (int d = 0; d < dim; ++d) n *= extent[d];
    return n;
  }
  Index flat(const std::array<Index, 3>& m) const {
    Index f = 0;
    for (int d = dim - 1; d >= 0; --d) f = f * extent[d] + m[d];
    return f;
  }
  std::array<Index, 3> unflat(Index f) const {
    std::array<Index, 3> m{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      m[d] = f % extent[d];
      f /= extent[d];
    }
    return m;
  }
};

}  // namespace iwq
