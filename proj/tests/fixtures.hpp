#pragma once

#include <cmath>

#include "skinlab/skin.hpp"
#include "skinlab/surface.hpp"

// Shared small meshes, built once per test binary.
namespace fixtures {

using namespace skinlab;

inline const DiscreteHypersurface& flat() {
  static const DiscreteHypersurface h = generate_hyperplane(2.0, 10);
  return h;
}

inline const DiscreteHypersurface& catenoid() {
  static const DiscreteHypersurface h = generate_catenoid(3.0, 16);
  return h;
}

// Coarse (3,3) cone under the brute-force oracle cap: 8 rings x 24^2 = 4608.
inline const DiscreteHypersurface& cone_coarse() {
  static const DiscreteHypersurface h = generate_lawson_cone(3, 3, 0.05, 4.0, 24, 8);
  return h;
}

// Radially fine (3,3) cone (ring ratio ~1.06), still under the oracle cap:
// 77 rings x 64 = 4928.
inline const DiscreteHypersurface& cone_fine() {
  static const DiscreteHypersurface h = generate_lawson_cone(3, 3, 0.05, 4.0, 8, 77);
  return h;
}

// Small (1,2) cone for cheap structural tests: rings x (8 x 12) vertices.
inline const DiscreteHypersurface& cone_small() {
  static const DiscreteHypersurface h = generate_lawson_cone(1, 2, 0.1, 2.0, 8, 10);
  return h;
}

// Flat patch with one curvature spike: two-candidate max-min test case.
inline DiscreteHypersurface flat_with_spike(double spike) {
  DiscreteHypersurface h = generate_hyperplane(2.0, 10);
  const int center = (10 / 2) * 11 + 10 / 2;
  h.a_norm[center] = spike;
  h.kind = "loaded";
  return h;
}

}  // namespace fixtures
