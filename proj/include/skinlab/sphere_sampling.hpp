#pragma once

#include <vector>

#include "skinlab/types.hpp"

namespace skinlab {

// Deterministic quasi-uniform sample of the unit sphere S^p together with a
// neighbor graph whose edge lengths are great-circle arcs. For p >= 2 the
// requested resolution is snapped to the nearest supported symmetric
// configuration (icosphere subdivisions for p = 2, regular 4-polytope vertex
// shells for p = 3, the cross polytope above). All configurations are
// vertex-transitive or near-transitive, so product-cone cross sections stay
// homogeneous.
struct SphereSample {
  int p = 1;                        // sphere dimension
  std::vector<double> points;       // flattened, (p+1) doubles per point
  std::vector<Edge> edges;          // len = great-circle arc on the unit sphere
  int count = 0;

  const double* point(int i) const { return points.data() + static_cast<size_t>(i) * (p + 1); }
};

SphereSample sample_sphere(int p, int angular_res);

}  // namespace skinlab
