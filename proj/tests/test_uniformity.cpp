#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "skinlab/cover.hpp"
#include "skinlab/uniformity.hpp"

using namespace skinlab;

namespace {

const DiscreteHypersurface& cone() { return fixtures::cone_fine(); }

const SkinField& cone_skin() {
  static const SkinField f = metric_skin_transform(cone(), 1.0);
  return f;
}

const BallCover& cone_qt_cover() {
  static const BallCover c = [] {
    const double xi = 0.8 / (1000.0 * cone_skin().lipschitz_bound);
    return qt_perturb(cone(), cone_skin(), build_skin_cover(cone(), cone_skin(), xi), 0.05, 100);
  }();
  return c;
}

double max_delta_interior(const DiscreteHypersurface& h, const SkinField& f) {
  const std::vector<char> excluded = h.excluded_mask();
  double m = 0.0;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v] && f.delta[v] != kInf) m = std::max(m, f.delta[v]);
  return m;
}

// Shared across the link-space / hull / domain cases (hub spanner is the
// expensive part).
const LinkSpace& cone_links() {
  static const LinkSpace l = build_link_space(
      cone(), cone_skin(), max_delta_interior(cone(), cone_skin()) * 0.1, 10000);
  return l;
}

}  // namespace

TEST_CASE("certify_constant: neighbors, planted detour, re-verification") {
  const DiscreteHypersurface& flat = fixtures::flat();
  const SkinField skin = metric_skin_transform(flat, 1.0);
  const int u = 0, v = 11;  // axis neighbors on the 11x11 grid
  const UniformCurveCertificate direct = certify_constant(flat, skin, {u, v});
  CHECK(direct.c_quasi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(direct.c_cone == 0.0);  // delta = +inf on flat patches
  CHECK(direct.c == doctest::Approx(1.0).epsilon(1e-12));

  // Detour via the adjacent column: length h + sqrt(2) h over distance h.
  const UniformCurveCertificate detour = certify_constant(flat, skin, {u, 1, v});
  CHECK(detour.c_quasi == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-12));

  // Stored certificates re-verify exactly.
  const UniformCurveCertificate again = certify_constant(flat, skin, detour.path);
  CHECK(again.c == doctest::Approx(detour.c).epsilon(1e-12));
  CHECK(again.length == doctest::Approx(detour.length).epsilon(1e-12));

  CHECK_THROWS_AS(certify_constant(flat, skin, {0, 57}), InvalidArgument);  // not an edge
}

TEST_CASE("annulus_sample: flat treats +inf delta as maximal; cone distances check out") {
  const DiscreteHypersurface& flat = fixtures::flat();
  const SkinField fskin = metric_skin_transform(flat, 1.0);
  const int center = 5 * 11 + 5;
  const int s = annulus_sample(flat, fskin, center, 1, 0.1);
  CHECK(fskin.delta[s] == kInf);

  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const ConeLayout layout = cone_layout(h);
  const int x = 40 * layout.ring_size;
  for (int k = 0; k <= 2; ++k) {
    const int v = annulus_sample(h, skin, x, k, skin.delta[x] / 4.0);
    const ScalarField d = geodesic_distance(h, {x});
    CHECK(d.values[v] >= std::ldexp(1.0, -k));
    CHECK(d.values[v] < std::ldexp(1.0, -k + 1));
  }
  CHECK_THROWS_AS(annulus_sample(h, skin, x, 40, 0.01), ComputeError);  // below mesh scale
}

TEST_CASE("pipeline: flat patch degenerates to a near-geodesic") {
  const DiscreteHypersurface flat = generate_hyperplane(2.0, 16);
  const SkinField skin = metric_skin_transform(flat, 1.0);
  const int x = 8 * 17 + 8;
  const int p0 = annulus_sample(flat, skin, x, 0, 0.0);
  const PipelineCurve pipe = pipeline_curve(flat, skin, x, p0, 1.0);
  CHECK(pipe.certificate.c_quasi <= 1.3);
  CHECK(pipe.certificate.c_cone == 0.0);
}

TEST_CASE("pipeline on the cone: geometric decay of segment lengths") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const ConeLayout layout = cone_layout(h);
  const int x = 4 * layout.ring_size + 2;  // near the inner ring
  const ScalarField d = geodesic_distance(h, {x});
  int p0 = -1;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (d.values[v] >= 1.0 && d.values[v] < 2.0 && (p0 == -1 || skin.delta[v] > skin.delta[p0]))
      p0 = v;
  REQUIRE(p0 != -1);
  const PipelineCurve pipe = pipeline_curve(h, skin, x, p0, skin.delta[p0] / 2.0);
  REQUIRE(pipe.levels >= 4);
  CHECK(pipe.tau_prime > 0.0);
  // Mean dyadic decay of segment lengths.
  double slope = 0.0;
  int counted = 0;
  for (size_t k = 0; k + 1 < pipe.segment_lengths.size(); ++k) {
    if (pipe.segment_lengths[k] <= 0.0 || pipe.segment_lengths[k + 1] <= 0.0) continue;
    slope += std::log2(pipe.segment_lengths[k] / pipe.segment_lengths[k + 1]);
    ++counted;
  }
  REQUIRE(counted > 0);
  CHECK(slope / counted >= 0.4);
  CHECK(pipe.certificate.c < kInf);
}

TEST_CASE("skin uniform curves: methods agree on dominance, singular endpoints work") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const ConeLayout layout = cone_layout(h);

  // Antipodal-ish pair on a middle cross section.
  const int p = 40 * layout.ring_size + 0;
  const int q = 40 * layout.ring_size + layout.ring_size / 2;
  const UniformCurveCertificate pipe = skin_uniform_curve(h, skin, p, q, CurveMethod::Pipeline);
  const UniformCurveCertificate cs =
      skin_uniform_curve(h, skin, p, q, CurveMethod::ConstrainedSearch);
  CHECK(pipe.c < kInf);
  CHECK(cs.c < kInf);
  CHECK(cs.c <= pipe.c + 1e-9);  // the pipeline is a feasible candidate

  // Singular endpoint: start on the sigma-proxy ring; interior avoids proxies.
  const int sp = 0;
  const UniformCurveCertificate sing =
      skin_uniform_curve(h, skin, sp, q, CurveMethod::ConstrainedSearch);
  CHECK(sing.c < kInf);
  const std::vector<char> proxy = h.sigma_proxy_mask();
  for (size_t i = 1; i + 1 < sing.path.size(); ++i) CHECK(!proxy[sing.path[i]]);

  CHECK_THROWS_AS(skin_uniform_curve(h, skin, p, p, CurveMethod::Pipeline), InvalidArgument);
}

TEST_CASE("flat neighbors: constrained search returns the unit certificate") {
  const DiscreteHypersurface& flat = fixtures::flat();
  const SkinField skin = metric_skin_transform(flat, 1.0);
  const UniformCurveCertificate c = skin_uniform_curve(flat, skin, 0, 11,
                                                       CurveMethod::ConstrainedSearch);
  CHECK(c.c == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("blow-up invariance: identical at lambda = 1, tiny drift across scalings") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const BlowUpReport unit = blow_up_invariance_check(h, skin, {1.0}, 4);
  CHECK(unit.max_deviation == 0.0);
  const BlowUpReport rep = blow_up_invariance_check(h, skin, {2.0, 4.0, 8.0}, 4);
  CHECK(rep.max_deviation <= 1e-6);
}

TEST_CASE("link projection of cone curves certifies a finite constant") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const DiscreteHypersurface link = generate_link(3, 3, 8);
  const SkinField lskin = restrict_to_link(h, skin, link);
  const ConeLayout layout = cone_layout(h);
  const UniformCurveCertificate cc = skin_uniform_curve(
      h, skin, 40 * layout.ring_size + 1, 44 * layout.ring_size + layout.ring_size / 2,
      CurveMethod::ConstrainedSearch);
  const std::vector<int> lpath = project_curve_to_link(h, cc.path, link);
  REQUIRE(lpath.size() >= 2);
  const UniformCurveCertificate lc = certify_constant(link, lskin, lpath);
  CHECK(lc.c < kInf);
  CHECK(lc.c > 0.0);
}

TEST_CASE("link spaces: trivial cases and the hub spanner on the cone") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const double dmax = max_delta_interior(h, skin);

  // All-pairs mode on a small surface (catenoid rings near the ends).
  {
    const auto& cat = fixtures::catenoid();
    const SkinField cskin = metric_skin_transform(cat, 1.0);
    const double cmax = max_delta_interior(cat, cskin);
    const LinkSpace small = build_link_space(cat, cskin, cmax * 0.999, 100000);
    CHECK(small.all_pairs);
    if (small.e_set.size() >= 2) CHECK(!small.curves.empty());
    CHECK(small.worst_c < kInf);
  }

  // A tenth of the maximum: many members, hub mode.
  const LinkSpace& big = cone_links();
  CHECK(!big.all_pairs);
  CHECK(big.hub >= 0);
  CHECK(big.worst_c < kInf);
  CHECK(big.curves.size() == big.e_set.size() - 1);

  // Prop-style interior bound: curve interiors stay in E(alpha' a).
  const double alpha_prime = 1.0 / (skin.lipschitz_bound * big.worst_c + 1.0);
  const double floor_delta = alpha_prime * big.a;
  for (const auto& cert : big.curves)
    for (size_t i = 1; i + 1 < cert.path.size(); ++i)
      CHECK(skin.delta[cert.path[i]] >= floor_delta * (1.0 - 1e-12));

  CHECK_THROWS_AS(build_link_space(h, skin, dmax * 10.0, 1000), ComputeError);  // empty E(a)
}

TEST_CASE("arc hull contains E(a) and respects the delta floor") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const LinkSpace& links = cone_links();
  const std::vector<int> hull = arc_hull(links);
  std::vector<char> in_hull(h.vertex_count(), 0);
  for (int v : hull) in_hull[v] = 1;
  for (int v : links.e_set) CHECK(in_hull[v]);
  const double alpha_prime = 1.0 / (skin.lipschitz_bound * links.worst_c + 1.0);
  for (int v : hull) CHECK(skin.delta[v] >= alpha_prime * links.a * (1.0 - 1e-12));
}

TEST_CASE("bubbled hull: sandwich inclusions, connectivity, kappa certified") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const LinkSpace& links = cone_links();
  const SkinDomain dom = bubbled_hull(h, skin, cone_qt_cover(), links);
  CHECK(!dom.members.empty());
  CHECK(dom.members.size() >= dom.hull.size());

  const DomainReport rep = verify_domain(h, skin, dom, 16);
  CHECK(rep.hull_sandwich);
  CHECK(rep.bubble_sandwich);
  CHECK(rep.connected);
  CHECK(rep.kappa < kInf);
  CHECK(rep.iota >= 1.0);
  CHECK(rep.pass);
}

TEST_CASE("verify_domain: planted hole raises the disconnection error") {
  const auto& h = cone();
  const SkinField& skin = cone_skin();
  const ConeLayout layout = cone_layout(h);
  SkinDomain broken;
  broken.a = 0.1;
  broken.worst_link_c = 1.0;
  broken.xi = cone_qt_cover().xi;
  // Two clumps separated by several missing rings.
  for (int i = 30; i <= 31; ++i)
    for (int j = 0; j < layout.ring_size; ++j) broken.members.push_back(i * layout.ring_size + j);
  for (int i = 50; i <= 51; ++i)
    for (int j = 0; j < layout.ring_size; ++j) broken.members.push_back(i * layout.ring_size + j);
  broken.hull = broken.members;
  CHECK_THROWS_AS(verify_domain(h, skin, broken, 4), ComputeError);
}
