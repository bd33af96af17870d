#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "skinlab/skin.hpp"
#include "skinlab/surface.hpp"

using namespace skinlab;

namespace {

// The closed-form tolerance needs the discrete balance point well resolved
// (ring ratio <= 1.06); cone_fine provides that under the brute-force cap.
const DiscreteHypersurface& cone_mid() { return fixtures::cone_fine(); }

double max_rel_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double gap = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == kInf && b[i] == kInf) continue;
    const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-300});
    gap = std::max(gap, std::abs(a[i] - b[i]) / scale);
  }
  return gap;
}

// Independent regularity-scale oracle: sweep over sorted candidate radii of
// the ball-supremum definition.
double ball_sweep_regularity(const DiscreteHypersurface& h, int p) {
  const ScalarField d = geodesic_distance(h, {p});
  std::vector<int> order(h.vertex_count());
  for (int i = 0; i < h.vertex_count(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d.values[a] < d.values[b]; });
  double best = 0.0, running_max_a = 0.0;
  for (size_t k = 0; k < order.size(); ++k) {
    running_max_a = std::max(running_max_a, h.a_norm[order[k]]);
    const double cap = running_max_a > 0.0 ? 1.0 / running_max_a : kInf;
    const double next = k + 1 < order.size() ? d.values[order[k + 1]] : kInf;
    if (cap >= d.values[order[k]]) best = std::max(best, std::min(cap, next));
  }
  return best;
}

}  // namespace

TEST_CASE("oracle equivalence: fast sweep equals brute force to 1e-12") {
  for (const DiscreteHypersurface* h :
       {&fixtures::flat(), &fixtures::catenoid(), &fixtures::cone_small()}) {
    for (double alpha : {0.25, 1.0, 4.0}) {
      const SkinField fast = metric_skin_transform(*h, alpha);
      const SkinField brute = brute_force_skin_oracle(*h, alpha);
      CHECK(max_rel_gap(fast.delta, brute.delta) <= 1e-12);
      CHECK(max_rel_gap(fast.values, brute.values) <= 1e-12);
    }
  }
  {
    const SkinField fast = metric_skin_transform(cone_mid(), 1.0);
    const SkinField brute = brute_force_skin_oracle(cone_mid(), 1.0);
    CHECK(max_rel_gap(fast.delta, brute.delta) <= 1e-12);
  }
  const DiscreteHypersurface spike = fixtures::flat_with_spike(5.0);
  const SkinField fast = metric_skin_transform(spike, 1.0);
  const SkinField brute = brute_force_skin_oracle(spike, 1.0);
  CHECK(max_rel_gap(fast.delta, brute.delta) <= 1e-12);
}

TEST_CASE("hyperplane: transform vanishes, delta = +inf (S1)") {
  const SkinField f = metric_skin_transform(fixtures::flat(), 1.0);
  for (int v = 0; v < f.vertex_count(); ++v) {
    CHECK(f.values[v] == 0.0);
    CHECK(f.delta[v] == kInf);
  }
}

TEST_CASE("spike on flat patch: two-candidate max-min") {
  const double spike = 5.0;
  const DiscreteHypersurface h = fixtures::flat_with_spike(spike);
  const int sv = (10 / 2) * 11 + 10 / 2;
  const ScalarField d = geodesic_distance(h, {sv});
  const SkinField f = metric_skin_transform(h, 1.0);
  for (int v = 0; v < h.vertex_count(); ++v) {
    const double expect = v == sv ? spike : std::min(spike, 1.0 / d.values[v]);
    CHECK(f.values[v] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("regularity scale: bitwise identity with the alpha = 1 transform") {
  for (const DiscreteHypersurface* h :
       {&fixtures::flat(), &fixtures::catenoid(), &fixtures::cone_small()}) {
    const ScalarField r = regularity_scale(*h);
    const SkinField f = metric_skin_transform(*h, 1.0);
    for (int v = 0; v < h->vertex_count(); ++v) {
      const bool same = r.values[v] == f.delta[v];  // bitwise for finite and inf
      CHECK(same);
    }
  }
}

TEST_CASE("regularity scale: agrees with the ball-radius sweep oracle") {
  const DiscreteHypersurface& h = fixtures::cone_small();
  const ScalarField r = regularity_scale(h);
  for (int v = 0; v < h.vertex_count(); v += 7)
    CHECK(r.values[v] == doctest::Approx(ball_sweep_regularity(h, v)).epsilon(1e-12));
  // Constant a_norm: r_H = 1/c everywhere.
  const DiscreteHypersurface link = generate_link(3, 3, 8);
  const ScalarField rl = regularity_scale(link);
  for (double x : rl.values) CHECK(x == doctest::Approx(1.0 / link.a_norm[0]).epsilon(1e-12));
}

TEST_CASE("cone closed form: value * r / (alpha + kappa) within 5% on interior vertices") {
  const DiscreteHypersurface& h = cone_mid();
  const double kappa = lawson_kappa(3, 3);
  const ConeLayout layout = cone_layout(h);
  const double g = layout.radii[1] / layout.radii[0];
  for (double alpha : {0.5, 1.0, 2.0}) {
    const SkinField f = metric_skin_transform(h, alpha);
    double worst = 0.0;
    for (int i = 0; i < layout.rings - 1; ++i) {
      const double r = layout.radii[i];
      if (kappa * r / (alpha + kappa) < layout.radii[0] * g) continue;  // truncated optimum
      for (int j = 0; j < layout.ring_size; ++j) {
        const int v = i * layout.ring_size + j;
        worst = std::max(worst, std::abs(f.values[v] * r / (alpha + kappa) - 1.0));
      }
    }
    CHECK(worst <= 0.05);
  }
}

TEST_CASE("Lipschitz: |delta(u)-delta(v)| <= len/alpha exactly on every edge") {
  for (double alpha : {0.5, 1.0, 3.0}) {
    for (const DiscreteHypersurface* hp : {&fixtures::cone_small(), &fixtures::catenoid()}) {
      const SkinField f = metric_skin_transform(*hp, alpha);
      for (const Edge& e : hp->edges) {
        const double hi = std::max(f.delta[e.u], f.delta[e.v]);
        const double lo = std::min(f.delta[e.u], f.delta[e.v]);
        CHECK(hi <= lo + e.len / alpha);
      }
      CHECK(f.lipschitz_bound <= 1.0 / alpha * (1 + 1e-12));
    }
    // Tight case: pure distance growth from a spike.
    const DiscreteHypersurface spike = fixtures::flat_with_spike(50.0);
    const SkinField f = metric_skin_transform(spike, alpha);
    for (const Edge& e : spike.edges) {
      const double hi = std::max(f.delta[e.u], f.delta[e.v]);
      const double lo = std::min(f.delta[e.u], f.delta[e.v]);
      CHECK(hi <= lo + e.len / alpha);
    }
  }
}

TEST_CASE("monotonicity in alpha is exact; interpolation limits hold") {
  const DiscreteHypersurface& h = cone_mid();
  const std::vector<double> alphas{0.01, 0.1, 1.0, 10.0, 100.0};
  std::vector<SkinField> fields;
  for (double a : alphas) fields.push_back(metric_skin_transform(h, a));
  for (size_t i = 0; i + 1 < fields.size(); ++i)
    for (int v = 0; v < h.vertex_count(); ++v)
      CHECK(fields[i + 1].values[v] >= fields[i].values[v]);

  const ConeLayout layout = cone_layout(h);
  const double g = layout.radii[1] / layout.radii[0];
  const double kappa = lawson_kappa(3, 3);

  // alpha -> 0: transform approaches a_norm on interior vertices.
  {
    const SkinField& f = fields.front();
    double worst = 0.0;
    for (int i = 1; i < layout.rings - 1; ++i)
      for (int j = 0; j < layout.ring_size; ++j) {
        const int v = i * layout.ring_size + j;
        worst = std::max(worst, std::abs(f.values[v] - h.a_norm[v]) / h.a_norm[v]);
      }
    CHECK(worst <= 0.05);
  }
  // alpha -> inf: transform * dist / alpha approaches 1 where the balance
  // radius is meshed (r >= r_min (alpha+kappa)/kappa, one ring of margin).
  {
    const double alpha = alphas.back();
    const SkinField& f = fields.back();
    const ScalarField dist = dist_to_sigma(h);
    double worst = 0.0;
    int counted = 0;
    for (int i = 0; i < layout.rings - 1; ++i) {
      if (kappa * layout.radii[i] / (alpha + kappa) < layout.radii[0] * g) continue;
      for (int j = 0; j < layout.ring_size; ++j) {
        const int v = i * layout.ring_size + j;
        worst = std::max(worst, std::abs(f.values[v] * dist.values[v] / alpha - 1.0));
        ++counted;
      }
    }
    REQUIRE(counted > 0);
    CHECK(worst <= 0.05);
  }
}

TEST_CASE("growth: <A>_alpha >= alpha / dist(.,Sigma) for alpha <= kappa") {
  const DiscreteHypersurface& h = fixtures::cone_small();
  const ScalarField dist = dist_to_sigma(h);
  const SkinField f = metric_skin_transform(h, 1.0);
  for (int v = 0; v < h.vertex_count(); ++v)
    CHECK(f.values[v] * dist.values[v] >= 1.0 - 1e-12);
}

TEST_CASE("anticommutation: transform(scale(H,lambda)) = transform(H)/lambda") {
  const DiscreteHypersurface& h = fixtures::cone_small();
  const SkinField base = metric_skin_transform(h, 1.0);
  for (double lambda : {0.5, 2.0, 8.0}) {
    const SkinField scaled = metric_skin_transform(scale_surface(h, lambda), 1.0);
    double worst = 0.0;
    for (int v = 0; v < h.vertex_count(); ++v)
      worst = std::max(worst,
                       std::abs(lambda * scaled.values[v] - base.values[v]) / base.values[v]);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("verify_axioms: cone passes, injected dominance fault fails S2") {
  const DiscreteHypersurface& h = fixtures::cone_small();
  const SkinField f = metric_skin_transform(h, 1.0);
  const AxiomReport rep = verify_axioms(h, f);
  CHECK(rep.s1_pass);
  CHECK(rep.s2_pass);
  CHECK(rep.s4_lipschitz_constant <= 1.0 + 1e-12);
  CHECK(rep.s5_scaling_residual <= 1e-9);

  SkinField bad = f;
  bad.values[5] = h.a_norm[5] * 0.5;  // violate dominance
  bad.provenance = Provenance::Combined;
  const AxiomReport rep2 = verify_axioms(h, bad);
  CHECK(!rep2.s2_pass);

  const SkinField flat = metric_skin_transform(fixtures::flat(), 1.0);
  const AxiomReport rep3 = verify_axioms(fixtures::flat(), flat);
  CHECK(rep3.s1_pass);
  CHECK(rep3.notes.find("+inf") != std::string::npos);
}

TEST_CASE("convex_combine: identity at c=1, dominance, empirical Lipschitz") {
  const DiscreteHypersurface& h = fixtures::cone_small();
  const SkinField f1 = metric_skin_transform(h, 1.0);
  SkinField f2 = metric_skin_transform(h, 1.0);
  for (auto& v : f2.values) v *= 1.5;  // another dominating field
  for (auto& d : f2.delta) d /= 1.5;

  const SkinField id = convex_combine(f1, f2, 1.0);
  for (int v = 0; v < h.vertex_count(); ++v)
    CHECK(id.values[v] == doctest::Approx(f1.values[v]).epsilon(1e-15));

  const SkinField mix = convex_combine(f1, f2, 0.3);
  for (int v = 0; v < h.vertex_count(); ++v) CHECK(mix.values[v] >= h.a_norm[v]);
  // Checked, not assumed: combination Lipschitz within max of constituents.
  const double l1 = measured_lipschitz(h, f1.delta);
  const double l2 = measured_lipschitz(h, f2.delta);
  CHECK(measured_lipschitz(h, mix.delta) <= std::max(l1, l2) * (1 + 1e-9));

  SkinField other = f1;
  other.alpha = 2.0;
  CHECK_THROWS_AS(convex_combine(f1, other, 0.5), InvalidArgument);
}

TEST_CASE("restrict_to_link: dominance, constancy, differs from rebuilt transform") {
  const DiscreteHypersurface& cone = cone_mid();
  const DiscreteHypersurface link = generate_link(3, 3, 8);
  const SkinField cone_skin = metric_skin_transform(cone, 1.0);
  const SkinField restricted = restrict_to_link(cone, cone_skin, link);

  for (int v = 0; v < link.vertex_count(); ++v) CHECK(restricted.values[v] >= link.a_norm[v]);
  for (int v = 1; v < link.vertex_count(); ++v)
    CHECK(restricted.values[v] == doctest::Approx(restricted.values[0]).epsilon(1e-9));

  const SkinField rebuilt = metric_skin_transform(link, 1.0);
  double gap = 0.0;
  for (int v = 0; v < link.vertex_count(); ++v)
    gap = std::max(gap, std::abs(rebuilt.values[v] - restricted.values[v]));
  CHECK(gap > 0.1);  // the two constructions genuinely differ

  const DiscreteHypersurface wrong = generate_link(1, 2, 8);
  CHECK_THROWS_AS(restrict_to_link(cone, cone_skin, wrong), InvalidArgument);
}

TEST_CASE("sublevel sets: threshold partition and cone closed form") {
  const DiscreteHypersurface& h = cone_mid();
  const SkinField f = metric_skin_transform(h, 1.0);
  double dmax = 0.0, dmin = kInf;
  const std::vector<char> excluded = h.excluded_mask();
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (excluded[v]) continue;
    dmax = std::max(dmax, f.delta[v]);
    dmin = std::min(dmin, f.delta[v]);
  }
  CHECK(sublevel_sets(h, f, dmax * 1.01).e_set.empty());
  CHECK(sublevel_sets(h, f, dmin * 0.99).i_set.empty());

  const double kappa = lawson_kappa(3, 3);
  const double a = 0.1;
  const SublevelSets s = sublevel_sets(h, f, a);
  for (int v : s.e_set) CHECK(h.radius(v) >= (1.0 + kappa) * a * 0.9);
  for (int v : s.i_set) CHECK(h.radius(v) <= (1.0 + kappa) * a * 1.1);
}

TEST_CASE("brute force oracle: cap enforcement") {
  CHECK_THROWS_AS(brute_force_skin_oracle(cone_mid(), 1.0, 100), InvalidArgument);
  CHECK_THROWS_AS(metric_skin_transform(fixtures::flat(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(metric_skin_transform(fixtures::flat(), -2.0), InvalidArgument);
}
