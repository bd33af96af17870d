#include "skinlab/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "skinlab/spectral.hpp"

namespace skinlab {

namespace {

double edge_length(const Adjacency& adj, int u, int v) {
  for (int i = adj.head[u]; i < adj.head[u + 1]; ++i)
    if (adj.nbr[i] == v) return adj.len[i];
  throw InvalidArgument("certify_constant: path edge missing from the graph");
}

// Largest bottleneck of interior delta over paths s -> t (endpoints free);
// -inf when no admissible path exists. Proxy vertices are not admissible
// interiors.
double maximin_interior_delta(const Adjacency& adj, const std::vector<double>& delta,
                              const std::vector<char>& blocked, int s, int t) {
  const int n = adj.vertex_count();
  std::vector<double> width(n, -kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item> pq;  // max-heap on (width, -index)
  width[s] = kInf;
  pq.emplace(kInf, -s);
  while (!pq.empty()) {
    auto [w, negu] = pq.top();
    pq.pop();
    const int u = -negu;
    if (w < width[u]) continue;
    if (u == t) return w;
    for (int i = adj.head[u]; i < adj.head[u + 1]; ++i) {
      const int v = adj.nbr[i];
      double cand;
      if (v == t)
        cand = w;  // endpoint carries no interior constraint
      else if (blocked[v])
        continue;
      else
        cand = std::min(w, delta[v]);
      if (cand > width[v]) {
        width[v] = cand;
        pq.emplace(cand, -v);
      }
    }
  }
  return -kInf;
}

std::vector<int> constrained_path(const Adjacency& adj, const std::vector<double>& delta,
                                  const std::vector<char>& blocked, int s, int t,
                                  double threshold) {
  const int n = adj.vertex_count();
  std::vector<char> allowed(n, 0);
  for (int v = 0; v < n; ++v) allowed[v] = !blocked[v] && delta[v] >= threshold;
  allowed[s] = allowed[t] = 1;
  DijkstraOptions opts;
  opts.allowed = &allowed;
  const ShortestPathTree tree = dijkstra_tree(adj, {s}, opts);
  return tree.path_to(t);
}

}  // namespace

UniformCurveCertificate certify_constant(const DiscreteHypersurface& h, const SkinField& skin,
                                         const std::vector<int>& path) {
  if (path.size() < 2) throw InvalidArgument("certify_constant: path needs >= 2 vertices");
  const std::vector<double> dist_p = dijkstra(surface_adjacency(h), {path.front()});
  return certify_constant(h, skin, path, dist_p[path.back()]);
}

UniformCurveCertificate certify_constant(const DiscreteHypersurface& h, const SkinField& skin,
                                         const std::vector<int>& path, double endpoint_distance) {
  if (path.size() < 2) throw InvalidArgument("certify_constant: path needs >= 2 vertices");
  const Adjacency& adj = surface_adjacency(h);
  UniformCurveCertificate cert;
  cert.p = path.front();
  cert.q = path.back();

  std::vector<double> prefix(path.size(), 0.0);
  for (size_t i = 1; i < path.size(); ++i)
    prefix[i] = prefix[i - 1] + edge_length(adj, path[i - 1], path[i]);
  cert.length = prefix.back();
  cert.path = path;

  const double d = endpoint_distance;
  if (!(d > 0.0)) throw InvalidArgument("certify_constant: endpoints coincide");
  cert.c_quasi = cert.length / d;

  cert.c_cone = 0.0;
  for (size_t i = 1; i + 1 < path.size(); ++i) {
    const double lmin = std::min(prefix[i], cert.length - prefix[i]);
    const double dz = skin.delta[path[i]];
    if (dz == kInf) continue;
    cert.c_cone = std::max(cert.c_cone, lmin / dz);
  }
  cert.c = std::max(cert.c_quasi, cert.c_cone);
  return cert;
}

int annulus_sample(const DiscreteHypersurface& h, const SkinField& skin, int x, int k, double t) {
  const Adjacency& adj = surface_adjacency(h);
  const double hi = std::ldexp(1.0, -k + 1);  // 2^{-k+1}
  const double lo = std::ldexp(1.0, -k);
  const double threshold = std::ldexp(t, -k);
  DijkstraOptions opts;
  opts.radius = hi;
  const std::vector<double> d = dijkstra(adj, {x}, opts);
  const std::vector<char> excluded = h.excluded_mask();
  const std::vector<char> proxy = h.sigma_proxy_mask();
  int best = -1;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (excluded[v] || proxy[v]) continue;
    if (!(d[v] >= lo && d[v] < hi)) continue;
    if (!(skin.delta[v] >= threshold)) continue;
    if (best == -1 || skin.delta[v] > skin.delta[best]) best = v;
  }
  if (best == -1) {
    std::ostringstream os;
    os << "annulus_sample: empty annulus at k = " << k << " around vertex " << x;
    throw ComputeError(os.str());
  }
  return best;
}

namespace {

// Internal annulus pick against a precomputed distance field, radii in
// absolute units; mirrors annulus_sample.
int pick_in_annulus(const DiscreteHypersurface& h, const SkinField& skin,
                    const std::vector<double>& d, double lo, double hi, double threshold) {
  const std::vector<char> excluded = h.excluded_mask();
  const std::vector<char> proxy = h.sigma_proxy_mask();
  int best = -1;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (excluded[v] || proxy[v]) continue;
    if (!(d[v] >= lo && d[v] < hi)) continue;
    if (!(skin.delta[v] >= threshold)) continue;
    if (best == -1 || skin.delta[v] > skin.delta[best]) best = v;
  }
  return best;
}

}  // namespace

PipelineCurve pipeline_curve(const DiscreteHypersurface& h, const SkinField& skin, int x, int p0,
                             double t) {
  if (x == p0) throw InvalidArgument("pipeline_curve: x and p0 coincide");
  const Adjacency& adj = surface_adjacency(h);
  const std::vector<char> proxy = h.sigma_proxy_mask();
  const std::vector<double> dist_x = dijkstra(adj, {x});
  const double R = dist_x[p0];
  if (R == kInf) throw ComputeError("pipeline_curve: p0 unreachable from x");

  // Stop the ladder at the local mesh scale around x.
  double min_edge = kInf;
  for (int i = adj.head[x]; i < adj.head[x + 1]; ++i) min_edge = std::min(min_edge, adj.len[i]);
  int levels = 0;
  // Capped ladder: below ten levels the remaining hop is mesh-scale anyway.
  while (R * std::ldexp(1.0, -(levels + 1)) > 0.6 * min_edge && levels < 10) ++levels;

  // Unpopulated dyadic annuli are skipped (the continuum volume bound that
  // guarantees samples does not survive mesh granularity); consecutive
  // waypoints then span more than one dyadic step.
  std::vector<int> chain{p0};
  for (int k = 1; k <= levels; ++k) {
    const double lo = R * std::ldexp(1.0, -k);
    const double hi = R * std::ldexp(1.0, -k + 1);
    const double threshold = std::ldexp(std::min(t, skin.delta[p0]), -k);
    const int pk = pick_in_annulus(h, skin, dist_x, lo, hi, threshold);
    if (pk == -1) continue;
    if (pk != chain.back()) chain.push_back(pk);
  }
  if (chain.back() != x) chain.push_back(x);

  // Exact largest feasible tau': per-segment maximin of interior delta.
  const bool flat = skin.delta[p0] == kInf;
  double tau_prime = flat ? 0.0 : std::min(t, skin.delta[p0]);
  if (!flat) {
    for (size_t s = 0; s + 1 < chain.size(); ++s) {
      const int k = static_cast<int>(s);
      const double bottleneck =
          maximin_interior_delta(adj, skin.delta, proxy, chain[s], chain[s + 1]);
      if (bottleneck == -kInf) {
        std::ostringstream os;
        os << "pipeline_curve: constrained subgraph disconnects at level k = " << k;
        throw ComputeError(os.str());
      }
      tau_prime = std::min(tau_prime, std::ldexp(bottleneck, k));
    }
    tau_prime = std::max(tau_prime, 0.0);
  }

  PipelineCurve out;
  out.levels = static_cast<int>(chain.size()) - 1;
  out.tau_prime = tau_prime;
  std::vector<int> full;
  for (size_t s = 0; s + 1 < chain.size(); ++s) {
    const double threshold = std::ldexp(tau_prime, -static_cast<int>(s));
    std::vector<int> seg = constrained_path(adj, skin.delta, proxy, chain[s], chain[s + 1],
                                            flat ? -kInf : threshold);
    if (seg.empty()) {
      std::ostringstream os;
      os << "pipeline_curve: constrained subgraph disconnects at level k = " << s;
      throw ComputeError(os.str());
    }
    double seg_len = 0.0;
    for (size_t i = 1; i < seg.size(); ++i) seg_len += edge_length(adj, seg[i - 1], seg[i]);
    out.segment_lengths.push_back(seg_len);
    if (full.empty())
      full = seg;
    else
      full.insert(full.end(), seg.begin() + 1, seg.end());
  }
  out.certificate = certify_constant(h, skin, full);
  out.certificate.method = CurveMethod::Pipeline;
  return out;
}

namespace {

UniformCurveCertificate compose_pipelines(const DiscreteHypersurface& h, const SkinField& skin,
                                          int p, int q) {
  const Adjacency& adj = surface_adjacency(h);
  const std::vector<double> dp = dijkstra(adj, {p});
  const std::vector<double> dq = dijkstra(adj, {q});
  const double D = dp[q];
  if (D == kInf) throw ComputeError("skin_uniform_curve: endpoints disconnected");

  // Common start point in the intersection of the scaled unit annuli
  // (normalizing d to 3/2 makes the unit annulus [D/3, 2D/3]).
  const std::vector<char> excluded = h.excluded_mask();
  const std::vector<char> proxy = h.sigma_proxy_mask();
  int p0 = -1;
  auto scan = [&](double lo_f, double hi_f) {
    int best = -1;
    for (int v = 0; v < h.vertex_count(); ++v) {
      if (excluded[v] || proxy[v] || v == p || v == q) continue;
      if (dp[v] < lo_f * D || dp[v] > hi_f * D) continue;
      if (dq[v] < lo_f * D || dq[v] > hi_f * D) continue;
      if (best == -1 || skin.delta[v] > skin.delta[best]) best = v;
    }
    return best;
  };
  p0 = scan(1.0 / 3.0, 2.0 / 3.0);
  if (p0 == -1) p0 = scan(0.0, 1.0);  // mesh-scale fallback
  if (p0 == -1) throw ComputeError("skin_uniform_curve: no admissible common start point");

  const double t = skin.delta[p0] == kInf ? kInf : skin.delta[p0] / 2.0;
  const PipelineCurve pipe_p = pipeline_curve(h, skin, p, p0, t);
  const PipelineCurve pipe_q = pipeline_curve(h, skin, q, p0, t);

  std::vector<int> full(pipe_p.certificate.path.rbegin(), pipe_p.certificate.path.rend());
  full.insert(full.end(), pipe_q.certificate.path.begin() + 1, pipe_q.certificate.path.end());
  UniformCurveCertificate cert = certify_constant(h, skin, full);
  cert.method = CurveMethod::Pipeline;
  return cert;
}

}  // namespace

UniformCurveCertificate skin_uniform_curve(const DiscreteHypersurface& h, const SkinField& skin,
                                           int p, int q, CurveMethod method,
                                           const UniformCurveCertificate* pipeline_hint) {
  if (p == q) throw InvalidArgument("skin_uniform_curve: p and q must differ");
  if (method == CurveMethod::Pipeline) return compose_pipelines(h, skin, p, q);

  const Adjacency& adj = surface_adjacency(h);
  const std::vector<char> proxy = h.sigma_proxy_mask();

  // Threshold sweep over delta quantiles (plus the unconstrained path).
  std::vector<double> finite;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (skin.delta[v] != kInf && !proxy[v]) finite.push_back(skin.delta[v]);
  std::sort(finite.begin(), finite.end());
  std::vector<double> thresholds{0.0};
  const int quantiles = 10;
  for (int i = 1; i <= quantiles && !finite.empty(); ++i) {
    const size_t idx = std::min(finite.size() - 1, finite.size() * i / (quantiles + 1));
    thresholds.push_back(finite[idx]);
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const double d_pq = dijkstra(adj, {p})[q];
  std::optional<UniformCurveCertificate> best;
  for (double s : thresholds) {
    const std::vector<int> path = constrained_path(adj, skin.delta, proxy, p, q, s);
    if (path.empty()) continue;
    UniformCurveCertificate cert = certify_constant(h, skin, path, d_pq);
    if (!best || cert.c < best->c) best = cert;
  }
  // The pipeline curve is itself a feasible candidate; including it makes the
  // search dominate the pipeline method by construction.
  if (pipeline_hint && pipeline_hint->p == p && pipeline_hint->q == q) {
    if (!best || pipeline_hint->c < best->c) best = *pipeline_hint;
  } else {
    try {
      UniformCurveCertificate pipe = compose_pipelines(h, skin, p, q);
      if (!best || pipe.c < best->c) best = pipe;
    } catch (const ComputeError&) {
    }
  }
  if (!best) throw ComputeError("skin_uniform_curve: no connecting path");
  best->method = CurveMethod::ConstrainedSearch;
  return *best;
}

BlowUpReport blow_up_invariance_check(const DiscreteHypersurface& cone, const SkinField& skin,
                                      const std::vector<double>& lambdas, int pair_count) {
  const ConeLayout layout = cone_layout(cone);
  int p = 0, q = 0;
  if (std::sscanf(cone.kind.c_str(), "lawson_cone(%d,%d)", &p, &q) != 2)
    throw InvalidArgument("blow_up_invariance_check: not a cone mesh");

  // Deterministic pairs spread over rings and angular offsets.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < pair_count; ++i) {
    const int ring_a = 1 + (i * 7) % std::max(1, layout.rings - 2);
    const int ring_b = 1 + (i * 11 + 3) % std::max(1, layout.rings - 2);
    const int ja = (i * 13) % layout.ring_size;
    const int jb = (i * 17 + 5) % layout.ring_size;
    const int a = ring_a * layout.ring_size + ja;
    const int b = ring_b * layout.ring_size + jb;
    if (a != b) pairs.emplace_back(a, b);
  }

  std::vector<double> base;
  for (const auto& [a, b] : pairs)
    base.push_back(skin_uniform_curve(cone, skin, a, b, CurveMethod::ConstrainedSearch).c);

  ConeParams params;
  if (!recover_cone_params(cone, params))
    throw InvalidArgument("blow_up_invariance_check: cannot recover generator parameters");

  BlowUpReport rep;
  for (double lambda : lambdas) {
    if (lambda == 1.0) {
      // Identity scaling: nothing to regenerate.
      rep.lambdas.push_back(lambda);
      rep.deviations.push_back(0.0);
      continue;
    }
    const DiscreteHypersurface scaled =
        generate_lawson_cone(p, q, lambda * layout.radii.front(), lambda * layout.radii.back(),
                             params.angular_res, layout.rings);
    const SkinField sskin = metric_skin_transform(scaled, skin.alpha);
    double dev = 0.0;
    for (size_t i = 0; i < pairs.size(); ++i) {
      const double c =
          skin_uniform_curve(scaled, sskin, pairs[i].first, pairs[i].second,
                             CurveMethod::ConstrainedSearch)
              .c;
      dev = std::max(dev, std::abs(c - base[i]) / base[i]);
    }
    rep.lambdas.push_back(lambda);
    rep.deviations.push_back(dev);
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  return rep;
}

std::vector<int> project_curve_to_link(const DiscreteHypersurface& cone,
                                       const std::vector<int>& path,
                                       const DiscreteHypersurface& link) {
  const ConeLayout layout = cone_layout(cone);
  if (layout.ring_size != link.vertex_count())
    throw InvalidArgument("project_curve_to_link: mismatched meshes");
  std::vector<int> out;
  for (int v : path) {
    const int j = v % layout.ring_size;
    if (out.empty() || out.back() != j) out.push_back(j);
  }
  return out;
}

LinkSpace build_link_space(const DiscreteHypersurface& h, const SkinField& skin, double a,
                           long long pair_budget) {
  LinkSpace links;
  links.a = a;
  links.e_set = sublevel_sets(h, skin, a).e_set;
  if (links.e_set.empty()) throw ComputeError("build_link_space: E(a) is empty");
  if (links.e_set.size() == 1) return links;  // trivially complete

  const long long m = static_cast<long long>(links.e_set.size());
  const bool all_pairs = m <= 200 && m * (m - 1) / 2 <= pair_budget;
  links.all_pairs = all_pairs;

  if (all_pairs) {
    for (size_t i = 0; i < links.e_set.size(); ++i)
      for (size_t j = i + 1; j < links.e_set.size(); ++j) {
        links.curves.push_back(skin_uniform_curve(h, skin, links.e_set[i], links.e_set[j],
                                                  CurveMethod::ConstrainedSearch));
        links.worst_c = std::max(links.worst_c, links.curves.back().c);
      }
    return links;
  }

  // Hub star: shared threshold sweep, one tree per threshold.
  int hub = links.e_set.front();
  for (int v : links.e_set)
    if (skin.delta[v] > skin.delta[hub] || (skin.delta[v] == skin.delta[hub] && v < hub)) hub = v;
  links.hub = hub;

  const Adjacency& adj = surface_adjacency(h);
  const std::vector<char> proxy = h.sigma_proxy_mask();
  std::vector<double> thresholds{0.0};
  for (int i = 1; i <= 8; ++i) thresholds.push_back(a * i / 8.0);

  const std::vector<double> dist_hub = dijkstra(adj, {hub});
  struct Best {
    double c = kInf;
    std::vector<int> path;
  };
  std::vector<Best> best(h.vertex_count());
  for (double s : thresholds) {
    std::vector<char> allowed(h.vertex_count(), 0);
    for (int v = 0; v < h.vertex_count(); ++v) allowed[v] = !proxy[v] && skin.delta[v] >= s;
    allowed[hub] = 1;
    DijkstraOptions opts;
    opts.allowed = &allowed;
    const ShortestPathTree tree = dijkstra_tree(adj, {hub}, opts);
    for (int target : links.e_set) {
      if (target == hub) continue;
      const std::vector<int> path = tree.path_to(target);
      if (path.empty()) continue;
      const UniformCurveCertificate cert = certify_constant(h, skin, path, dist_hub[target]);
      if (cert.c < best[target].c) {
        best[target].c = cert.c;
        best[target].path = path;
      }
    }
  }
  for (int target : links.e_set) {
    if (target == hub) continue;
    if (best[target].path.empty())
      throw ComputeError("build_link_space: hub cannot reach a member of E(a)");
    UniformCurveCertificate cert = certify_constant(h, skin, best[target].path, dist_hub[target]);
    cert.method = CurveMethod::ConstrainedSearch;
    links.curves.push_back(std::move(cert));
    links.worst_c = std::max(links.worst_c, links.curves.back().c);
  }
  return links;
}

std::vector<int> arc_hull(const LinkSpace& links) {
  std::set<int> hull(links.e_set.begin(), links.e_set.end());
  for (const auto& cert : links.curves) hull.insert(cert.path.begin(), cert.path.end());
  return std::vector<int>(hull.begin(), hull.end());
}

SkinDomain bubbled_hull(const DiscreteHypersurface& h, const SkinField& skin,
                        const BallCover& qt_cover, const LinkSpace& links) {
  if (!qt_cover.qt_margin.has_value())
    throw InvalidArgument("bubbled_hull: cover is not QT-certified");
  if (!skin.values.empty() && qt_cover.center_count() > 0 &&
      static_cast<int>(skin.values.size()) != h.vertex_count())
    throw InvalidArgument("bubbled_hull: cover/skin mismatch");

  SkinDomain dom;
  dom.a = links.a;
  dom.worst_link_c = links.worst_c;
  dom.xi = qt_cover.xi;
  dom.hull = arc_hull(links);

  const Adjacency& adj = surface_adjacency(h);
  const std::vector<double> d_arc = dijkstra(adj, dom.hull);
  std::vector<char> member(h.vertex_count(), 0);
  for (int c = 0; c < qt_cover.center_count(); ++c) {
    if (d_arc[qt_cover.centers[c]] > qt_cover.theta[c]) continue;
    dom.cover_centers.push_back(c);
    DijkstraOptions opts;
    opts.radius = 2.0 * qt_cover.theta[c];
    const std::vector<double> d = dijkstra(adj, {qt_cover.centers[c]}, opts);
    for (int v = 0; v < h.vertex_count(); ++v)
      if (d[v] <= 2.0 * qt_cover.theta[c]) member[v] = 1;
  }
  for (int v = 0; v < h.vertex_count(); ++v)
    if (member[v]) dom.members.push_back(v);
  return dom;
}

DomainReport verify_domain(const DiscreteHypersurface& h, const SkinField& skin,
                           const SkinDomain& dom, int pair_budget) {
  if (dom.members.empty()) throw InvalidArgument("verify_domain: empty domain");
  const Adjacency& adj = surface_adjacency(h);
  const std::vector<char> excluded = h.excluded_mask();
  const std::vector<char> proxy = h.sigma_proxy_mask();
  const double lip = skin.lipschitz_bound;
  DomainReport rep;
  rep.alpha_prime = 1.0 / (lip * std::max(dom.worst_link_c, 1.0) + 1.0);
  const double a = dom.a;
  const double floor_hull = rep.alpha_prime * a;
  const double floor_members = rep.alpha_prime * a / 4.0;

  std::vector<char> member(h.vertex_count(), 0);
  for (int v : dom.members) member[v] = 1;
  std::vector<char> in_hull(h.vertex_count(), 0);
  for (int v : dom.hull) in_hull[v] = 1;

  // (i)  E(a) subset arc hull subset E(alpha' a)
  bool hull_ok = true;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v] && skin.delta[v] >= a && !in_hull[v]) hull_ok = false;
  for (int v : dom.hull)
    if (!(skin.delta[v] >= floor_hull)) hull_ok = false;
  rep.hull_sandwich = hull_ok;

  // (ii) U_{xi alpha' a/4}(arc) subset members subset E(alpha' a/4)
  bool bubble_ok = true;
  const std::vector<double> d_arc = dijkstra(adj, dom.hull);
  const double tube = dom.xi * rep.alpha_prime * a / 4.0;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v] && d_arc[v] <= tube && !member[v]) bubble_ok = false;
  for (int v : dom.members)
    if (!(skin.delta[v] >= floor_members)) bubble_ok = false;
  rep.bubble_sandwich = bubble_ok;

  // Smallest feasible iota with E(iota * a) inside the domain; the theorem's
  // constant is > 1, so the report never goes below 1.
  double top_nonmember = 0.0;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v] && !member[v] && skin.delta[v] != kInf)
      top_nonmember = std::max(top_nonmember, skin.delta[v]);
  rep.iota = std::max(top_nonmember / a, 1.0);

  // Connectivity of the member subgraph.
  std::vector<char> blocked(h.vertex_count(), 1);
  for (int v : dom.members) blocked[v] = 0;
  const Components comps = connected_components(adj, &blocked);
  rep.connected = comps.connected(static_cast<int>(dom.members.size()));
  if (!rep.connected) throw ComputeError("verify_domain: member subgraph disconnected");

  // Distance to the domain boundary, measured inside the domain. The
  // boundary sits between member and non-member vertices; seeding from the
  // outside rim keeps interior distances positive on the mesh.
  std::vector<char> rim(h.vertex_count(), 0);
  std::vector<int> rim_sources;
  for (int v : dom.members)
    for (int i = adj.head[v]; i < adj.head[v + 1]; ++i) {
      const int w = adj.nbr[i];
      if (!member[w] && !rim[w]) {
        rim[w] = 1;
        rim_sources.push_back(w);
      }
    }
  std::sort(rim_sources.begin(), rim_sources.end());
  std::vector<double> d_boundary(h.vertex_count(), kInf);
  if (!rim_sources.empty()) {
    std::vector<char> allowed(h.vertex_count(), 0);
    for (int v : dom.members) allowed[v] = 1;
    for (int v : rim_sources) allowed[v] = 1;
    DijkstraOptions opts;
    opts.allowed = &allowed;
    d_boundary = dijkstra(adj, rim_sources, opts);
  }

  std::vector<int> pool;
  for (int v : dom.members)
    if (!proxy[v] && !excluded[v]) pool.push_back(v);
  const int pairs = std::min<int>(pair_budget, 24);
  std::vector<double> member_delta;
  for (int v : pool) member_delta.push_back(skin.delta[v]);
  std::sort(member_delta.begin(), member_delta.end());

  double kappa = 0.0;
  int used = 0;
  for (int i = 0; i < pairs; ++i) {
    const int p = pool[(static_cast<long long>(i) * 2654435761ll) % pool.size()];
    const int q = pool[(static_cast<long long>(i) * 40503ll + pool.size() / 2) % pool.size()];
    if (p == q) continue;
    ++used;
    const double d_pq = dijkstra(adj, {p})[q];
    double best = kInf;
    std::vector<double> thresholds{0.0};
    for (int t = 1; t <= 6 && !member_delta.empty(); ++t)
      thresholds.push_back(member_delta[std::min(member_delta.size() - 1,
                                                 member_delta.size() * t / 8)]);
    for (double s : thresholds) {
      std::vector<char> allowed(h.vertex_count(), 0);
      for (int v : dom.members) allowed[v] = !proxy[v] && skin.delta[v] >= s;
      allowed[p] = allowed[q] = 1;
      DijkstraOptions opts;
      opts.allowed = &allowed;
      const ShortestPathTree tree = dijkstra_tree(adj, {p}, opts);
      const std::vector<int> path = tree.path_to(q);
      if (path.empty()) continue;
      const UniformCurveCertificate cert = certify_constant(h, skin, path, d_pq);
      // kappa bound uses min(L * dist to boundary, delta).
      double kc = cert.c_quasi;
      double acc = 0.0;
      std::vector<double> pre(path.size(), 0.0);
      for (size_t j = 1; j < path.size(); ++j) {
        acc += edge_length(adj, path[j - 1], path[j]);
        pre[j] = acc;
      }
      for (size_t j = 1; j + 1 < path.size(); ++j) {
        const double lmin = std::min(pre[j], cert.length - pre[j]);
        const double cap_delta = skin.delta[path[j]];
        const double cap_bnd = lip > 0.0 ? lip * d_boundary[path[j]] : kInf;
        const double cap = std::min(cap_delta, cap_bnd);
        if (cap == kInf) continue;
        if (!(cap > 0.0)) {
          kc = kInf;
          break;
        }
        kc = std::max(kc, lmin / cap);
      }
      best = std::min(best, kc);
    }
    kappa = std::max(kappa, best);
  }
  rep.pairs_checked = used;
  rep.kappa = kappa;
  rep.pass = rep.hull_sandwich && rep.bubble_sandwich && rep.connected && rep.kappa < kInf;
  return rep;
}

}  // namespace skinlab
