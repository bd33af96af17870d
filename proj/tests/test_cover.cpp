#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "skinlab/cover.hpp"
#include "skinlab/skin.hpp"
#include "skinlab/surface.hpp"

using namespace skinlab;

namespace {

// Synthetic constant-delta field (measured Lipschitz constant 0, so any xi is
// admissible); exercises covers whose balls span several mesh cells.
SkinField constant_field(const DiscreteHypersurface& h, double delta0) {
  SkinField f;
  f.alpha = 1.0;
  f.delta.assign(h.vertex_count(), delta0);
  f.values.assign(h.vertex_count(), 1.0 / delta0);
  f.lipschitz_bound = 0.0;
  return f;
}

// Path graph with unit spacing, constant delta; used for planted QT cases.
DiscreteHypersurface path_graph(int n) {
  DiscreteHypersurface h;
  h.kind = "loaded";
  h.dim = 3;
  h.positions.resize(static_cast<size_t>(n) * 3, 0.0);
  for (int i = 0; i < n; ++i) h.positions[3 * i] = i;
  h.a_norm.assign(n, 0.1);
  for (int i = 0; i + 1 < n; ++i) h.edges.push_back({i, i + 1, 1.0});
  return h;
}

}  // namespace

TEST_CASE("organic cone cover: exact invariants, bounded families") {
  const auto& h = fixtures::cone_coarse();
  const SkinField skin = metric_skin_transform(h, 1.0);
  const double xi = 0.8 / (1000.0 * skin.lipschitz_bound);
  const BallCover cover = build_skin_cover(h, skin, xi);

  CHECK(cover.stats.uncovered == 0);
  CHECK(cover.stats.exclusion_violations == 0);
  CHECK(cover.stats.families <= 64);
  CHECK(cover.stats.covering_max <= 64);
  const CoverCheck check = verify_cover(h, cover);
  CHECK(check.coverage);
  CHECK(check.family_disjoint);
  CHECK(check.center_exclusion);

  // Theta = xi * delta exactly, radii decay toward the singular ring.
  for (int c = 0; c < cover.center_count(); ++c)
    CHECK(cover.theta[c] == xi * skin.delta[cover.centers[c]]);

  // Determinism: a second run yields the identical cover.
  const BallCover again = build_skin_cover(h, skin, xi);
  CHECK(again.centers == cover.centers);
  CHECK(again.family == cover.family);
  CHECK(again.stats.covering_max == cover.stats.covering_max);
  CHECK(again.stats.families == cover.stats.families);
}

TEST_CASE("flat patch with constant delta: uniform packing, every vertex covered") {
  const DiscreteHypersurface h = generate_hyperplane(2.0, 10);
  const SkinField skin = constant_field(h, 0.6);
  const BallCover cover = build_skin_cover(h, skin, 0.5);  // Theta = 0.3
  CHECK(cover.stats.uncovered == 0);
  CHECK(verify_cover(h, cover).pass());
  CHECK(cover.center_count() >= 4);
  // Constant delta means constant radii.
  for (double t : cover.theta) CHECK(t == doctest::Approx(0.3));
}

TEST_CASE("covering_number_stats: rho behavior") {
  const DiscreteHypersurface h = generate_hyperplane(2.0, 10);
  const SkinField skin = constant_field(h, 0.6);
  const BallCover cover = build_skin_cover(h, skin, 0.5);

  const std::vector<int> tiny = covering_number_stats(h, cover, 1e-6);
  for (int v = 0; v < h.vertex_count(); ++v) CHECK(tiny[v] <= 1);

  const std::vector<int> at1 = covering_number_stats(h, cover, 1.0);
  const std::vector<char> excluded = h.excluded_mask();
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v]) CHECK(at1[v] >= 1);

  const std::vector<int> at10 = covering_number_stats(h, cover, 10.0);
  const int max10 = *std::max_element(at10.begin(), at10.end());
  CHECK(max10 <= cover.center_count());
  CHECK(max10 >= 1);
}

TEST_CASE("covering number stable across cone refinement") {
  const SkinField s1 = metric_skin_transform(fixtures::cone_coarse(), 1.0);
  const DiscreteHypersurface fine = generate_lawson_cone(3, 3, 0.05, 4.0, 24, 16);
  const SkinField s2 = metric_skin_transform(fine, 1.0);
  const BallCover c1 =
      build_skin_cover(fixtures::cone_coarse(), s1, 0.8 / (1000.0 * s1.lipschitz_bound));
  const BallCover c2 = build_skin_cover(fine, s2, 0.8 / (1000.0 * s2.lipschitz_bound));
  CHECK(c1.stats.covering_max == c2.stats.covering_max);
}

TEST_CASE("build errors: totally geodesic field and xi out of range") {
  const DiscreteHypersurface& flat = fixtures::flat();
  const SkinField geod = metric_skin_transform(flat, 1.0);
  CHECK_THROWS_WITH_AS(build_skin_cover(flat, geod, 1e-4),
                       doctest::Contains("totally geodesic"), InvalidArgument);
  const auto& cone = fixtures::cone_small();
  const SkinField skin = metric_skin_transform(cone, 1.0);
  CHECK_THROWS_AS(build_skin_cover(cone, skin, 1.0), InvalidArgument);
  CHECK_THROWS_AS(build_skin_cover(cone, skin, 0.0), InvalidArgument);
}

TEST_CASE("verify_qt: planted shell pair fails, vacuous pass when disjoint") {
  const DiscreteHypersurface h = path_graph(12);
  const SkinField skin = constant_field(h, 10.0);
  BallCover cover;
  cover.xi = 0.05;  // Theta = 0.5
  cover.centers = {0, 2};
  cover.theta = {0.5, 0.5};
  cover.family = {1, 2};
  // d = 2, S = 1: the tau = 0.1 band is (1.9, 2.1] -> violation.
  const QtReport bad = verify_qt(h, cover, 0.1);
  CHECK(!bad.pass);
  REQUIRE(bad.worst.has_value());
  CHECK(bad.worst->distance == doctest::Approx(2.0));

  BallCover far;
  far.xi = 0.05;
  far.centers = {0, 11};
  far.theta = {0.5, 0.5};
  far.family = {1, 2};
  CHECK(verify_qt(h, far, 0.1).pass);  // d = 11 far beyond any band: vacuous
}

TEST_CASE("qt_perturb: planted violation is repaired, idempotent afterwards") {
  const DiscreteHypersurface h = path_graph(12);
  const SkinField skin = constant_field(h, 10.0);
  BallCover cover;
  cover.xi = 0.05;
  cover.centers = {0, 2};
  cover.theta = {0.5, 0.5};
  cover.family = {1, 2};

  const BallCover fixed = qt_perturb(h, skin, cover, 0.1, 100, /*eps_factor=*/4.0);
  REQUIRE(fixed.qt_margin.has_value());
  CHECK(*fixed.qt_margin == doctest::Approx(0.1));
  CHECK(verify_qt(h, fixed, 0.1).pass);
  CHECK(fixed.centers != cover.centers);  // one center moved

  // Idempotence: already QT at tau_target -> unchanged.
  const BallCover again = qt_perturb(h, skin, fixed, 0.1, 100, 4.0);
  CHECK(again.centers == fixed.centers);
  CHECK(*again.qt_margin == doctest::Approx(0.1));
}

TEST_CASE("qt_perturb on the organic cone cover: no violations, full margin") {
  const auto& h = fixtures::cone_coarse();
  const SkinField skin = metric_skin_transform(h, 1.0);
  const BallCover cover = build_skin_cover(h, skin, 0.8 / (1000.0 * skin.lipschitz_bound));
  const BallCover qt = qt_perturb(h, skin, cover, 0.05, 100);
  REQUIRE(qt.qt_margin.has_value());
  CHECK(*qt.qt_margin == doctest::Approx(0.05));
  CHECK(qt.centers == cover.centers);  // nothing to move
  CHECK(verify_cover(h, qt).pass());
}

TEST_CASE("tube openings: planar two-disk value and vacuous cases") {
  const DiscreteHypersurface h = generate_hyperplane(2.0, 20);  // spacing 0.1
  const SkinField skin = constant_field(h, 1.0);
  // Two centers five grid steps apart in the middle of the patch.
  const int n = 21;
  const int a = 10 * n + 8, b = 10 * n + 13;
  BallCover cover;
  cover.xi = 0.35;
  cover.centers = {a, b};
  cover.theta = {0.35, 0.35};
  cover.family = {1, 2};
  cover.qt_margin = 0.05;

  const TubeOpeningReport rep = tube_opening_check(h, cover);
  REQUIRE(!rep.vacuous);
  REQUIRE(rep.pairs.size() == 1);
  // Analytic two-disk opening: sqrt(R^2 - (d/2)^2) / Theta with R = 2 Theta.
  const double expect = std::sqrt(0.7 * 0.7 - 0.25 * 0.25) / 0.35;
  CHECK(rep.min_omega == doctest::Approx(expect).epsilon(0.2));
  CHECK(rep.min_omega > 0.0);

  BallCover far = cover;
  far.centers = {0, h.vertex_count() - 1};
  const TubeOpeningReport rep2 = tube_opening_check(h, far);
  CHECK(rep2.vacuous);
  CHECK(rep2.min_omega == kInf);

  BallCover uncertified = cover;
  uncertified.qt_margin.reset();
  CHECK_THROWS_AS(tube_opening_check(h, uncertified), InvalidArgument);
}

TEST_CASE("whitney smoothing: sandwich constants and covering-number bound") {
  // Constant-delta flat patch: delta* / delta is exactly the bump sum.
  const DiscreteHypersurface h = generate_hyperplane(2.0, 10);
  const SkinField skin = constant_field(h, 0.6);
  const BallCover cover = build_skin_cover(h, skin, 0.5);
  const SmoothingReport rep = whitney_smooth(h, skin, cover);
  CHECK(rep.c1 > 0.0);
  CHECK(rep.c1 <= rep.c2);
  CHECK(rep.c2 < kInf);
  CHECK(rep.c1 >= 1.0 - 1e-12);  // the covering ball contributes a full bump
  const std::vector<int> at2 = covering_number_stats(h, cover, 2.0);
  const int max2 = *std::max_element(at2.begin(), at2.end());
  CHECK(rep.c2 <= double(max2) + 1e-12);
  CHECK(rep.c3 < kInf);
  CHECK(rep.field.provenance == Provenance::Smoothed);
}

TEST_CASE("whitney smoothing on the cone: sandwich and exact scaling") {
  const auto& h = fixtures::cone_coarse();
  const SkinField skin = metric_skin_transform(h, 1.0);
  const BallCover cover = build_skin_cover(h, skin, 0.8 / (1000.0 * skin.lipschitz_bound));
  const SmoothingReport rep = whitney_smooth(h, skin, cover);
  CHECK(rep.c1 > 0.0);
  CHECK(rep.c2 >= rep.c1);
  CHECK(rep.c2 / rep.c1 <= double(std::max(cover.stats.covering_max, 1)) + 1e-9);

  // Matched centers under scaling: delta* scales exactly by lambda.
  const double lambda = 2.0;
  const DiscreteHypersurface hs = scale_surface(h, lambda);
  SkinField skins = skin;
  for (auto& v : skins.values) v /= lambda;
  for (auto& d : skins.delta) d *= lambda;
  BallCover covers = cover;
  for (auto& t : covers.theta) t *= lambda;
  const SmoothingReport reps = whitney_smooth(hs, skins, covers);
  for (int v = 0; v < h.vertex_count(); ++v)
    CHECK(reps.field.delta[v] == doctest::Approx(lambda * rep.field.delta[v]).epsilon(1e-12));
}

TEST_CASE("whitney smoothing rejects non-covering center sets") {
  const DiscreteHypersurface h = generate_hyperplane(2.0, 10);
  const SkinField skin = constant_field(h, 0.6);
  BallCover partial;
  partial.xi = 0.5;
  partial.centers = {0};
  partial.theta = {0.3};
  partial.family = {1};
  CHECK_THROWS_AS(whitney_smooth(h, skin, partial), ComputeError);
}
