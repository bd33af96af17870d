#pragma once

#include <vector>

#include "skinlab/cover.hpp"
#include "skinlab/surface.hpp"
#include "skinlab/types.hpp"

namespace skinlab {

// Discrete metric skin transform: on a finite metric graph the tube-membership
// supremum reduces to
//     <A>_alpha(x) = max_y min(a_norm(y), alpha / d(x,y)),
// the y = x term contributing a_norm(x). Computed in reciprocal form
//     delta(x) = min_y max(1/a_norm(y), d(x,y)/alpha)
// by a label-setting sweep over (delta value, tail length) states in
// increasing (value, tail, vertex) order, with dominated states pruned; the
// enumeration covers the full Pareto frontier, so the sweep is exact and is
// certified against brute_force_skin_oracle in the test suite. A final
// relaxation pass enforces the 1/alpha edge-Lipschitz bound of delta under
// floating-point rounding.
SkinField metric_skin_transform(const DiscreteHypersurface& h, double alpha);

// Independent O(V^2) oracle: per-source Dijkstra plus the direct max-min.
SkinField brute_force_skin_oracle(const DiscreteHypersurface& h, double alpha,
                                  int vertex_cap = 5000);

// r_H(p) = sup { r > 0 : r^2 |A|^2 <= 1 on B_r(p) }. On a finite graph the
// sup over ball radii evaluates to min_y max(d(p,y), 1/a_norm(y)), which is
// the alpha = 1 skin transform in reciprocal form; both are computed by the
// same sweep, so the identity delta_{<A>_1} = r_H holds bitwise.
ScalarField regularity_scale(const DiscreteHypersurface& h);

// Axioms: S1 trivial gauge, S2 dominance + scaling anticommutation,
// S4 measured edge-Lipschitz constant of delta, S5 self-similarity residual
// on cone meshes (regenerated at matched radii). S3 is the Hardy constant,
// delegated to the spectral module and cross-referenced in the notes.
AxiomReport verify_axioms(const DiscreteHypersurface& h, const SkinField& skin);

SkinField convex_combine(const SkinField& a, const SkinField& b, double c);

// Values of a cone skin field on the radius-1 cross section, copied to the
// matching link mesh. The cone grid need not contain radius 1 exactly: the
// nearest ring is used and values are moved to radius 1 by the cone's exact
// scaling self-similarity.
SkinField restrict_to_link(const DiscreteHypersurface& cone, const SkinField& cone_skin,
                           const DiscreteHypersurface& link);

struct SmoothingReport {
  SkinField field;       // provenance Smoothed, delta = delta*
  double c1 = 0.0;       // min delta*/delta
  double c2 = 0.0;       // max delta*/delta
  double c3 = 0.0;       // max discrete gradient ratio |delta*(u)-delta*(v)|/len
};

// Whitney smoothing delta*(x) = sum_p delta(p) Phi_p(x) over cover centers,
// bump profile: 1 inside Theta(p), quintic C^2 falloff, 0 beyond 2 Theta(p).
SmoothingReport whitney_smooth(const DiscreteHypersurface& h, const SkinField& skin,
                               const BallCover& cover);

struct SublevelSets {
  std::vector<int> e_set;  // delta >= a (super-level set E(a))
  std::vector<int> i_set;  // delta <  a
};

// Partition of the non-excluded vertices by the delta threshold.
SublevelSets sublevel_sets(const DiscreteHypersurface& h, const SkinField& skin, double a);

// Edge-measured Lipschitz constant of a per-vertex field (pairs with both
// values infinite contribute zero).
double measured_lipschitz(const DiscreteHypersurface& h, const std::vector<double>& f);

}  // namespace skinlab
