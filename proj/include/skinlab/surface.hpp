#pragma once

#include <vector>

#include "skinlab/graph.hpp"
#include "skinlab/types.hpp"

namespace skinlab {

// Truncated Lawson cone over S^p(a) x S^q(b) in R^{p+q+2}, radial samples
// geometric between r_min and r_max. The singular tip is excised below r_min;
// the inner ring carries offset r_min (exact distance to the tip along rays),
// the outer ring is the truncation boundary. a_norm(v) = kappa/r(v) with
// kappa produced by the curvature oracle at radius 1.
DiscreteHypersurface generate_lawson_cone(int p, int q, double r_min, double r_max,
                                          int angular_res, int radial_res);

// Cross section S^p(a) x S^q(b) of the cone at radius 1, with the intrinsic
// product metric; a_norm is the (constant) cone value at radius 1.
DiscreteHypersurface generate_link(int p, int q, int angular_res);

// Flat square patch (totally geodesic): a_norm = 0, no singular set.
// 8-neighbor connectivity so grid diagonals are exact.
DiscreteHypersurface generate_hyperplane(double extent, int res);

// Catenoid |v| <= height/2; regular non-flat smoke-test surface (not area
// minimizing globally). a_norm per ring from the curvature oracle.
DiscreteHypersurface generate_catenoid(double height, int res);

DiscreteHypersurface scale_surface(const DiscreteHypersurface& h, double lambda);

// Cached adjacency for a surface (rebuilt on demand).
const Adjacency& surface_adjacency(const DiscreteHypersurface& h);

// Exact multi-source shortest-path distances on the edge graph.
ScalarField geodesic_distance(const DiscreteHypersurface& h, const std::vector<int>& sources);

// Per-vertex min over proxies of (graph distance + offset); +inf everywhere
// when the surface is regular.
ScalarField dist_to_sigma(const DiscreteHypersurface& h);

struct ConnectivityReport {
  bool connected = false;
  std::vector<int> component_sizes;  // descending
};

ConnectivityReport check_connectivity(const DiscreteHypersurface& h,
                                      const std::vector<int>& exclude);

// kappa(p,q): |A| of the unit-radius cross section, from the oracle.
double lawson_kappa(int p, int q);

// Ring/angular layout helpers for cone meshes (vertex id = ring*ring_size+j).
struct ConeLayout {
  int rings = 0;
  int ring_size = 0;
  std::vector<double> radii;
};
ConeLayout cone_layout(const DiscreteHypersurface& h);

// Generator parameters recovered from a cone mesh (for regeneration at
// matched or refined resolutions). Returns false for non-cone meshes.
struct ConeParams {
  int p = 0, q = 0, angular_res = 0, radial_res = 0;
  double r_min = 0.0, r_max = 0.0;
};
bool recover_cone_params(const DiscreteHypersurface& h, ConeParams& out);

}  // namespace skinlab
