#pragma once

#include <optional>
#include <vector>

#include "skinlab/surface.hpp"
#include "skinlab/types.hpp"

namespace skinlab {

struct CoverStats {
  int families = 0;
  int covering_max = 0;                 // max covering number at rho = 1
  std::vector<int> covering_hist;       // histogram of covering numbers at rho = 1
  int exclusion_violations = 0;         // symmetric center-exclusion failures (reported, see notes)
  int uncovered = 0;                    // non-excluded vertices in no accepted ball
};

// Skin adapted cover: closed balls of radius Theta(p) = xi * delta(p) around
// a greedily selected center set, sorted into families whose 10 Theta-balls
// are pairwise disjoint.
struct BallCover {
  std::string surface_id;
  std::string skin_id;
  double xi = 0.0;
  std::vector<int> centers;
  std::vector<double> theta;            // per center
  std::vector<int> family;              // per center, 1-based
  std::optional<double> qt_margin;      // certified transversality margin
  CoverStats stats;

  int center_count() const { return static_cast<int>(centers.size()); }
};

// Greedy induction over vertices sorted by (delta ascending, index): skip a
// candidate inside an accepted closed Theta-ball, otherwise accept it into the
// smallest family whose accepted centers all sit at distance
// > 10 Theta(center) + 10 Theta(candidate). Outer-boundary vertices are
// excluded. The neighborhood Q of the continuum statement is existential; the
// construction runs on all non-excluded vertices and reports (rather than
// hides) any invariant failures in stats.
// Requires 0 < xi <= xi0 < 1/(1000 * L) with L the certified Lipschitz
// constant of delta (no constraint when L = 0). Rejects totally geodesic
// fields (delta = +inf) with a distinct error.
BallCover build_skin_cover(const DiscreteHypersurface& h, const SkinField& skin, double xi);

// For each vertex z, the number of centers x with z in B_{rho Theta(x)}(x).
std::vector<int> covering_number_stats(const DiscreteHypersurface& h, const BallCover& cover,
                                       double rho);

// Shell conditions for a center pair at graph distance d with S = Theta(p) +
// Theta(q): a pair violates quantitative transversality for margin tau when
// d lands in the band ((2 - tau) S, (2 + tau) S].
struct QtViolation {
  int p = -1;
  int q = -1;
  double distance = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
};

struct QtReport {
  bool pass = false;
  double min_slack = kInf;              // distance to the nearest band over all pairs
  std::optional<QtViolation> worst;
  int pairs_scanned = 0;
};

QtReport verify_qt(const DiscreteHypersurface& h, const BallCover& cover, double tau);

// Family-by-family perturbation: centers violating the shell conditions
// against already-fixed centers are moved to the first admissible vertex in
// (distance, index) order within the replacement budget eps * Theta(p).
// eps_factor <= 0 selects the default 1/(10^4 * families). Returns the cover
// with qt_margin = the largest tau <= tau_target passing the exhaustive scan.
BallCover qt_perturb(const DiscreteHypersurface& h, const SkinField& skin,
                     const BallCover& cover, double tau_target, int sample_budget,
                     double eps_factor = 0.0);

struct TubeOpeningPair {
  int p = -1;
  int q = -1;
  double omega = 0.0;                   // largest tube factor staying inside the union
};

struct TubeOpeningReport {
  std::vector<TubeOpeningPair> pairs;   // one entry per intersecting doubled pair
  double min_omega = kInf;              // +inf when vacuous (no intersecting pairs)
  bool vacuous = true;
};

// For each pair with intersecting doubled balls, the largest omega such that
// the omega*Theta(p)-tube around the shortest center path stays inside
// B_{2 Theta(p)}(p) u B_{2 Theta(q)}(q).
TubeOpeningReport tube_opening_check(const DiscreteHypersurface& h, const BallCover& cover);

// Exact cover invariants (coverage, family disjointness at 10 Theta, center
// exclusion); used after build and after perturbation.
struct CoverCheck {
  bool coverage = false;
  bool family_disjoint = false;
  bool center_exclusion = false;
  bool pass() const { return coverage && family_disjoint && center_exclusion; }
};

CoverCheck verify_cover(const DiscreteHypersurface& h, const BallCover& cover);

}  // namespace skinlab
