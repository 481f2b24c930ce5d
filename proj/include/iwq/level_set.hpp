#pragma once

#include <functional>

#include "iwq/types.hpp"

namespace iwq {

/// Implicit boundary description. The valid domain is { x : phi(x) < 0 }.
struct LevelSet {
  std::function<double(const Vec3&)> phi;
  std::function<Vec3(const Vec3&)> grad;

  bool inside(const Vec3& x) const { return phi(x) < 0.0; }

  /// Everything valid (no boundary anywhere).
  static LevelSet none() {
    return {[](const Vec3&) { return -1.0; }, [](const Vec3&) { return Vec3{0, 0, 0}; }};
  }

  /// phi = -x^2 - y^2 + r^2: cuts a cylinder of radius r about the z-axis out
  /// of the valid domain (the hole-in-plate boundary for r = 1).
  static LevelSet cylinder(double r) {
    return {[r](const Vec3& x) { return -x[0] * x[0] - x[1] * x[1] + r * r; },
            [](const Vec3& x) { return Vec3{-2.0 * x[0], -2.0 * x[1], 0.0}; }};
  }

  /// phi = -x^2 - y^2 - z^2 + r^2: spherical cavity of radius r at the origin.
  static LevelSet sphere(double r) {
    return {[r](const Vec3& x) { return -x[0] * x[0] - x[1] * x[1] - x[2] * x[2] + r * r; },
            [](const Vec3& x) { return Vec3{-2.0 * x[0], -2.0 * x[1], -2.0 * x[2]}; }};
  }

  /// 2D circle cutout about the origin (toy meshes).
  static LevelSet circle(double r) { return cylinder(r); }
};

}  // namespace iwq
