#pragma once

#include <optional>
#include <vector>

#include "skinlab/cover.hpp"
#include "skinlab/skin.hpp"
#include "skinlab/surface.hpp"
#include "skinlab/types.hpp"

namespace skinlab {

enum class CurveMethod { Pipeline, ConstrainedSearch };

struct UniformCurveCertificate {
  int p = -1;
  int q = -1;
  std::vector<int> path;    // vertex polyline from p to q
  double length = 0.0;
  double c_quasi = 0.0;     // length / d(p,q)
  double c_cone = 0.0;      // max over interior z of l_min(z) / delta(z)
  double c = 0.0;           // max of the two
  CurveMethod method = CurveMethod::ConstrainedSearch;
};

// Exact evaluation of both uniformity conditions on a stored polyline. The
// second overload takes the precomputed endpoint graph distance (sweep loops
// already hold it).
UniformCurveCertificate certify_constant(const DiscreteHypersurface& h, const SkinField& skin,
                                         const std::vector<int>& path);
UniformCurveCertificate certify_constant(const DiscreteHypersurface& h, const SkinField& skin,
                                         const std::vector<int>& path, double endpoint_distance);

// Deterministic representative of E(2^-k t) in the dyadic annulus
// B_{2^{-k+1}}(x) \ B_{2^{-k}}(x): maximal delta, ties by index. Sigma-proxy
// and outer-boundary vertices are not eligible. Throws when the annulus is
// empty (caller shrinks the k-range).
int annulus_sample(const DiscreteHypersurface& h, const SkinField& skin, int x, int k, double t);

struct PipelineCurve {
  UniformCurveCertificate certificate;    // from p0 to x
  std::vector<double> segment_lengths;    // per dyadic level
  double tau_prime = 0.0;                 // achieved tube parameter
  int levels = 0;
};

// Dyadic chain from p0 (in the unit annulus of x after normalizing) down
// to x: level-k waypoints sampled in annuli of radii d(x,p0) * 2^-k, joined
// by shortest paths constrained to E(tau' * 2^-k). The largest feasible tau'
// is found exactly from per-segment maximin (bottleneck) path values; t caps
// the waypoint threshold at level 0.
PipelineCurve pipeline_curve(const DiscreteHypersurface& h, const SkinField& skin, int x, int p0,
                             double t);

// Skin uniform curve between p and q. Pipeline: a common start point chosen
// in the intersection of the scaled unit annuli, two pipelines composed.
// Constrained search: shortest paths within E(s) swept over delta quantiles
// (plus the pipeline curve as one more feasible candidate), minimal c wins.
// Sigma-proxy vertices are allowed only as endpoints. A caller that already
// holds the pair's pipeline certificate can pass it to avoid recomputation.
UniformCurveCertificate skin_uniform_curve(const DiscreteHypersurface& h, const SkinField& skin,
                                           int p, int q, CurveMethod method,
                                           const UniformCurveCertificate* pipeline_hint = nullptr);

struct BlowUpReport {
  std::vector<double> lambdas;
  std::vector<double> deviations;  // max certificate drift per lambda
  double max_deviation = 0.0;
};

// Certified c values for matched vertex pairs across regenerated scalings of
// a cone mesh.
BlowUpReport blow_up_invariance_check(const DiscreteHypersurface& cone, const SkinField& skin,
                                      const std::vector<double>& lambdas, int pair_count = 12);

// Radial projection of a cone polyline onto the link mesh (consecutive
// duplicates collapsed).
std::vector<int> project_curve_to_link(const DiscreteHypersurface& cone,
                                       const std::vector<int>& path,
                                       const DiscreteHypersurface& link);

struct LinkSpace {
  double a = 0.0;
  std::vector<int> e_set;                       // E(a)
  std::vector<UniformCurveCertificate> curves;  // the selected arcs
  double worst_c = 0.0;
  bool all_pairs = false;
  int hub = -1;                                 // hub vertex in spanner mode
};

// Deterministic spanner link space over E(a): all pairs when small, otherwise
// a hub star rooted at the max-delta vertex (the shared-threshold sweep keeps
// this O(#thresholds) graph sweeps).
LinkSpace build_link_space(const DiscreteHypersurface& h, const SkinField& skin, double a,
                           long long pair_budget);

// Union of all curve traces with E(a).
std::vector<int> arc_hull(const LinkSpace& links);

struct SkinDomain {
  double a = 0.0;
  double worst_link_c = 0.0;
  std::vector<int> cover_centers;   // indices into the cover arrays
  std::vector<int> members;         // union of doubled balls
  std::vector<int> hull;            // the arc hull that seeded the selection
  double xi = 0.0;
};

// Bubbled arc hull: doubled balls of the QT cover around every ball meeting
// the arc hull.
SkinDomain bubbled_hull(const DiscreteHypersurface& h, const SkinField& skin,
                        const BallCover& qt_cover, const LinkSpace& links);

struct DomainReport {
  double iota = kInf;               // smallest feasible iota: E(iota*a) inside the domain
  double kappa = kInf;              // certified curve constant inside the domain
  bool hull_sandwich = false;       // E(a) subset arc subset E(alpha' a)
  bool bubble_sandwich = false;     // U_{xi alpha' a / 4}(arc) subset B subset E(alpha' a / 4)
  bool connected = false;
  bool pass = false;
  double alpha_prime = 0.0;
  int pairs_checked = 0;
};

// Exhaustive vertex-scan inclusion checks plus curve construction inside the
// member subgraph for sampled pairs.
DomainReport verify_domain(const DiscreteHypersurface& h, const SkinField& skin,
                           const SkinDomain& domain, int pair_budget);

}  // namespace skinlab
