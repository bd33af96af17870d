#include "skinlab/skin.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "skinlab/sphere_sampling.hpp"
#include "skinlab/util.hpp"

namespace skinlab {

namespace {

std::vector<double> reciprocal_a(const DiscreteHypersurface& h) {
  std::vector<double> da(h.vertex_count());
  for (int v = 0; v < h.vertex_count(); ++v)
    da[v] = h.a_norm[v] > 0.0 ? 1.0 / h.a_norm[v] : kInf;
  return da;
}

struct SweepState {
  double value;
  double tail;
  int vertex;
};

struct SweepOrder {
  bool operator()(const SweepState& a, const SweepState& b) const {
    if (a.value != b.value) return a.value > b.value;
    if (a.tail != b.tail) return a.tail > b.tail;
    return a.vertex > b.vertex;
  }
};

// Exact sweep for delta(x) = min_y max(da(y), d(x,y)/alpha); see header.
std::vector<double> sweep_delta(const DiscreteHypersurface& h, double alpha) {
  const Adjacency& adj = surface_adjacency(h);
  const int n = h.vertex_count();
  const std::vector<double> da = reciprocal_a(h);

  std::priority_queue<SweepState, std::vector<SweepState>, SweepOrder> pq;
  for (int v = 0; v < n; ++v) pq.push({da[v], 0.0, v});

  std::vector<double> delta(n, kInf);
  // Settled Pareto states per vertex: value ascending, tail strictly descending.
  std::vector<std::vector<std::pair<double, double>>> settled(n);

  auto dominated = [&](int v, double value, double tail) {
    const auto& fr = settled[v];
    for (auto it = fr.rbegin(); it != fr.rend(); ++it) {
      if (it->second > tail) return false;  // tails below this are all larger
      if (it->first <= value) return true;
    }
    return false;
  };

  while (!pq.empty()) {
    const SweepState s = pq.top();
    pq.pop();
    if (dominated(s.vertex, s.value, s.tail)) continue;
    if (settled[s.vertex].empty()) delta[s.vertex] = s.value;
    settled[s.vertex].emplace_back(s.value, s.tail);
    for (int i = adj.head[s.vertex]; i < adj.head[s.vertex + 1]; ++i) {
      const int w = adj.nbr[i];
      const double tail = s.tail + adj.len[i];
      const double value = std::max(s.value, tail / alpha);
      if (!dominated(w, value, tail)) pq.push({value, tail, w});
    }
  }
  return delta;
}

// Enforce |delta(u) - delta(v)| <= len/alpha in double arithmetic (the sweep
// guarantees it in exact arithmetic; summation rounding can leave a few-ulp
// excess on tight edges).
void lipschitz_clamp(const DiscreteHypersurface& h, double alpha, std::vector<double>& delta) {
  bool changed = true;
  int guard = 0;
  while (changed && guard++ <= h.vertex_count()) {
    changed = false;
    for (const Edge& e : h.edges) {
      const double step = e.len / alpha;
      if (delta[e.u] == kInf && delta[e.v] == kInf) continue;
      const double bu = delta[e.v] + step;
      if (delta[e.u] > bu) {
        delta[e.u] = bu;
        changed = true;
      }
      const double bv = delta[e.u] + step;
      if (delta[e.v] > bv) {
        delta[e.v] = bv;
        changed = true;
      }
    }
  }
}

SkinField finalize_field(const DiscreteHypersurface& h, double alpha,
                         std::vector<double>&& delta, Provenance prov) {
  SkinField f;
  f.alpha = alpha;
  f.provenance = prov;
  f.delta = std::move(delta);
  f.values.resize(f.delta.size());
  for (size_t v = 0; v < f.delta.size(); ++v) {
    // Dominance over a_norm holds exactly in real arithmetic; the max keeps it
    // exact through the reciprocal rounding.
    f.values[v] = f.delta[v] == kInf ? 0.0 : std::max(1.0 / f.delta[v], h.a_norm[v]);
  }
  f.lipschitz_bound = measured_lipschitz(h, f.delta);
  return f;
}

}  // namespace

double measured_lipschitz(const DiscreteHypersurface& h, const std::vector<double>& f) {
  double worst = 0.0;
  for (const Edge& e : h.edges) {
    const double a = f[e.u], b = f[e.v];
    if (a == kInf && b == kInf) continue;
    if (a == kInf || b == kInf) return kInf;
    worst = std::max(worst, std::abs(a - b) / e.len);
  }
  return worst;
}

SkinField metric_skin_transform(const DiscreteHypersurface& h, double alpha) {
  if (!(alpha > 0.0)) throw InvalidArgument("metric_skin_transform: alpha must be positive");
  std::vector<double> delta = sweep_delta(h, alpha);
  lipschitz_clamp(h, alpha, delta);
  return finalize_field(h, alpha, std::move(delta), Provenance::Exact);
}

SkinField brute_force_skin_oracle(const DiscreteHypersurface& h, double alpha, int vertex_cap) {
  if (!(alpha > 0.0)) throw InvalidArgument("brute_force_skin_oracle: alpha must be positive");
  const int n = h.vertex_count();
  if (n > vertex_cap) {
    std::ostringstream os;
    os << "brute_force_skin_oracle: " << n << " vertices exceeds cap " << vertex_cap;
    throw InvalidArgument(os.str());
  }
  const Adjacency& adj = surface_adjacency(h);
  const std::vector<double> da = reciprocal_a(h);
  const int chunks = worker_count();
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, kInf));
  parallel_chunks(n, chunks, [&](int chunk, int begin, int end) {
    std::vector<double>& mine = partial[chunk];
    for (int y = begin; y < end; ++y) {
      const std::vector<double> d = dijkstra(adj, {y});
      for (int x = 0; x < n; ++x)
        mine[x] = std::min(mine[x], std::max(da[y], d[x] / alpha));
    }
  });
  std::vector<double> delta(n, kInf);
  for (const auto& part : partial)
    for (int x = 0; x < n; ++x) delta[x] = std::min(delta[x], part[x]);
  return finalize_field(h, alpha, std::move(delta), Provenance::Oracle);
}

ScalarField regularity_scale(const DiscreteHypersurface& h) {
  // Same engine as the alpha = 1 transform, including the clamp pass, so the
  // identity with delta_{<A>_1} is bitwise.
  std::vector<double> delta = sweep_delta(h, 1.0);
  lipschitz_clamp(h, 1.0, delta);
  ScalarField f;
  f.name = "regularity_scale";
  f.values = std::move(delta);
  return f;
}

AxiomReport verify_axioms(const DiscreteHypersurface& h, const SkinField& skin) {
  AxiomReport rep;
  std::ostringstream notes;
  const int n = h.vertex_count();

  const bool geodesic = *std::max_element(h.a_norm.begin(), h.a_norm.end()) == 0.0;
  bool s1 = true;
  if (geodesic) {
    for (double v : skin.values) s1 = s1 && v == 0.0;
    notes << "totally geodesic: delta = +inf everywhere; ";
  } else {
    for (double v : skin.values) s1 = s1 && v > 0.0;
  }
  rep.s1_pass = s1;

  bool dominance = true;
  for (int v = 0; v < n; ++v) dominance = dominance && skin.values[v] >= h.a_norm[v];

  rep.s4_lipschitz_constant = skin.lipschitz_bound;

  double scaling_residual = 0.0;
  if (!geodesic && skin.provenance == Provenance::Exact) {
    const DiscreteHypersurface hs = scale_surface(h, 2.0);
    const SkinField ss = metric_skin_transform(hs, skin.alpha);
    for (int v = 0; v < n; ++v) {
      if (skin.values[v] == 0.0) continue;
      scaling_residual =
          std::max(scaling_residual, std::abs(2.0 * ss.values[v] - skin.values[v]) / skin.values[v]);
    }
  } else if (skin.provenance != Provenance::Exact) {
    notes << "anticommutation checked for exact provenance only; ";
  }
  rep.s2_scaling_residual = scaling_residual;
  rep.s2_pass = dominance && scaling_residual <= 1e-9;

  ConeParams cp;
  if (skin.provenance == Provenance::Exact && recover_cone_params(h, cp)) {
    const double lambda = 2.0;
    const DiscreteHypersurface regen = generate_lawson_cone(
        cp.p, cp.q, lambda * cp.r_min, lambda * cp.r_max, cp.angular_res, cp.radial_res);
    const SkinField ss = metric_skin_transform(regen, skin.alpha);
    double res = 0.0;
    for (int v = 0; v < n; ++v) {
      if (skin.values[v] == 0.0) continue;
      res = std::max(res, std::abs(lambda * ss.values[v] - skin.values[v]) / skin.values[v]);
    }
    rep.s5_scaling_residual = res;
  } else {
    notes << "S5 self-similarity proxy requires an exact cone field; skipped; ";
  }

  notes << "S3 (Hardy tightness) is certified by spectral.hardy_constant";
  rep.notes = notes.str();
  return rep;
}

SkinField convex_combine(const SkinField& a, const SkinField& b, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw InvalidArgument("convex_combine: c must be in (0,1]");
  if (a.vertex_count() != b.vertex_count() ||
      (!a.surface_id.empty() && !b.surface_id.empty() && a.surface_id != b.surface_id))
    throw InvalidArgument("convex_combine: mismatched surfaces");
  if (a.alpha != b.alpha) throw InvalidArgument("convex_combine: mismatched alpha policy");
  SkinField f;
  f.surface_id = a.surface_id;
  f.alpha = a.alpha;
  f.provenance = Provenance::Combined;
  f.combine_c = c;
  const int n = a.vertex_count();
  f.values.resize(n);
  f.delta.resize(n);
  for (int v = 0; v < n; ++v) {
    f.values[v] = c * a.values[v] + (1.0 - c) * b.values[v];
    f.delta[v] = f.values[v] > 0.0 ? 1.0 / f.values[v] : kInf;
  }
  f.lipschitz_bound = kInf;  // caller certifies against a surface, see combine_lipschitz
  return f;
}

SkinField restrict_to_link(const DiscreteHypersurface& cone, const SkinField& cone_skin,
                           const DiscreteHypersurface& link) {
  ConeParams cp;
  if (!recover_cone_params(cone, cp)) throw InvalidArgument("restrict_to_link: not a cone mesh");
  std::ostringstream expect;
  expect << "link(" << cp.p << "," << cp.q << ")";
  if (link.kind != expect.str()) throw InvalidArgument("restrict_to_link: mismatched generators");
  const ConeLayout layout = cone_layout(cone);
  if (layout.ring_size != link.vertex_count())
    throw InvalidArgument("restrict_to_link: mismatched angular resolution");

  int best_ring = 0;
  double best_gap = kInf;
  for (int i = 0; i < layout.rings; ++i) {
    const double gap = std::abs(std::log(layout.radii[i]));
    if (gap < best_gap) {
      best_gap = gap;
      best_ring = i;
    }
  }
  const double r0 = layout.radii[best_ring];

  SkinField f;
  f.alpha = cone_skin.alpha;
  f.provenance = Provenance::Restricted;
  f.values.resize(layout.ring_size);
  f.delta.resize(layout.ring_size);
  for (int j = 0; j < layout.ring_size; ++j) {
    // Move the nearest cross section to radius 1 by exact cone self-similarity.
    f.values[j] = cone_skin.values[best_ring * layout.ring_size + j] * r0;
    f.delta[j] = f.values[j] > 0.0 ? 1.0 / f.values[j] : kInf;
  }
  f.lipschitz_bound = measured_lipschitz(link, f.delta);
  return f;
}

SmoothingReport whitney_smooth(const DiscreteHypersurface& h, const SkinField& skin,
                               const BallCover& cover) {
  const int n = h.vertex_count();
  const Adjacency& adj = surface_adjacency(h);
  std::vector<double> dstar(n, 0.0);

  for (int c = 0; c < cover.center_count(); ++c) {
    const int p = cover.centers[c];
    const double theta = cover.theta[c];
    DijkstraOptions opts;
    opts.radius = 2.0 * theta;
    const std::vector<double> d = dijkstra(adj, {p}, opts);
    const double dp = skin.delta[p];
    for (int v = 0; v < n; ++v) {
      if (d[v] == kInf) continue;
      double w = 1.0;
      if (d[v] > theta) {
        const double s = (d[v] - theta) / theta;
        w = 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);  // quintic C^2 cutoff
      }
      dstar[v] += dp * w;
    }
  }

  const std::vector<char> excluded = h.excluded_mask();
  SmoothingReport rep;
  rep.c1 = kInf;
  rep.c2 = 0.0;
  for (int v = 0; v < n; ++v) {
    if (excluded[v]) continue;
    if (dstar[v] <= 0.0)
      throw ComputeError("whitney_smooth: cover does not cover vertex " + std::to_string(v));
    const double ratio = dstar[v] / skin.delta[v];
    rep.c1 = std::min(rep.c1, ratio);
    rep.c2 = std::max(rep.c2, ratio);
  }
  rep.c3 = measured_lipschitz(h, dstar);

  SkinField f;
  f.surface_id = skin.surface_id;
  f.alpha = skin.alpha;
  f.provenance = Provenance::Smoothed;
  f.delta = std::move(dstar);
  f.values.resize(n);
  for (int v = 0; v < n; ++v) f.values[v] = f.delta[v] > 0.0 ? 1.0 / f.delta[v] : 0.0;
  f.lipschitz_bound = rep.c3;
  rep.field = std::move(f);
  return rep;
}

SublevelSets sublevel_sets(const DiscreteHypersurface& h, const SkinField& skin, double a) {
  if (!(a > 0.0)) throw InvalidArgument("sublevel_sets: a must be positive");
  const std::vector<char> excluded = h.excluded_mask();
  SublevelSets s;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (excluded[v]) continue;
    (skin.delta[v] >= a ? s.e_set : s.i_set).push_back(v);
  }
  return s;
}

std::string provenance_tag(Provenance p, double combine_c) {
  switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::Oracle: return "oracle";
    case Provenance::Smoothed: return "smoothed";
    case Provenance::Combined: {
      std::ostringstream os;
      os << "combined(" << combine_c << ")";
      return os.str();
    }
    case Provenance::Restricted: return "restricted";
  }
  return "exact";
}

}  // namespace skinlab
