#include "skinlab/cover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skinlab/util.hpp"

namespace skinlab {

namespace {

struct CandidateOrder {
  const std::vector<double>* delta;
  bool operator()(int a, int b) const {
    if ((*delta)[a] != (*delta)[b]) return (*delta)[a] < (*delta)[b];
    return a < b;
  }
};

// Truncated ball around a vertex: (vertex, distance) pairs within radius.
std::vector<std::pair<int, double>> ball(const Adjacency& adj, int center, double radius,
                                         const std::vector<char>* allowed = nullptr) {
  DijkstraOptions opts;
  opts.radius = radius;
  opts.allowed = allowed;
  const std::vector<double> d = dijkstra(adj, {center}, opts);
  std::vector<std::pair<int, double>> out;
  for (int v = 0; v < adj.vertex_count(); ++v)
    if (d[v] <= radius) out.emplace_back(v, d[v]);
  return out;
}

}  // namespace

BallCover build_skin_cover(const DiscreteHypersurface& h, const SkinField& skin, double xi) {
  const int n = h.vertex_count();
  for (double d : skin.delta)
    if (d == kInf)
      throw InvalidArgument("build_skin_cover: totally geodesic field (delta = +inf) rejected");
  const double lip = skin.lipschitz_bound;
  const double xi0 = lip > 0.0 ? 1.0 / (1000.0 * lip) : kInf;
  if (!(xi > 0.0) || xi > xi0) {
    std::ostringstream os;
    os << "build_skin_cover: xi must lie in (0, " << xi0 << "] for certified Lipschitz constant "
       << lip;
    throw InvalidArgument(os.str());
  }

  const Adjacency& adj = surface_adjacency(h);
  const std::vector<char> excluded = h.excluded_mask();

  std::vector<int> order;
  order.reserve(n);
  for (int v = 0; v < n; ++v)
    if (!excluded[v]) order.push_back(v);
  std::sort(order.begin(), order.end(), CandidateOrder{&skin.delta});

  BallCover cover;
  cover.surface_id = skin.surface_id;
  cover.xi = xi;

  std::vector<char> covered(n, 0);
  std::vector<char> is_center(n, 0);
  std::vector<int> center_index(n, -1);
  int exclusion_violations = 0;

  for (int a : order) {
    if (covered[a]) continue;
    const double theta_a = xi * skin.delta[a];
    // Accepted centers so far have delta <= delta(a), hence Theta <= theta_a;
    // everything relevant to the skip, family and exclusion tests sits within
    // 20 * theta_a + 10 * theta_a slack.
    const auto near = ball(adj, a, 21.0 * theta_a);
    bool skip = false;
    std::vector<char> family_blocked(cover.center_count() + 2, 0);
    int max_blocked = 0;
    int pending_violations = 0;
    for (const auto& [v, d] : near) {
      if (!is_center[v]) continue;
      const int ci = center_index[v];
      if (d <= cover.theta[ci]) {
        skip = true;
        break;
      }
      if (d <= 10.0 * cover.theta[ci] + 10.0 * theta_a) {
        const int fam = cover.family[ci];
        if (fam < static_cast<int>(family_blocked.size())) family_blocked[fam] = 1;
        max_blocked = std::max(max_blocked, fam);
      }
      if (d <= theta_a) ++pending_violations;  // earlier center inside this ball
    }
    if (skip) {
      covered[a] = 1;
      continue;
    }
    exclusion_violations += pending_violations;  // reported, not hidden
    int fam = 1;
    while (fam <= max_blocked && family_blocked[fam]) ++fam;
    center_index[a] = cover.center_count();
    is_center[a] = 1;
    cover.centers.push_back(a);
    cover.theta.push_back(theta_a);
    cover.family.push_back(fam);
    for (const auto& [v, d] : near)
      if (d <= theta_a) covered[v] = 1;
  }

  cover.stats.exclusion_violations = exclusion_violations;
  cover.stats.families =
      cover.family.empty() ? 0 : *std::max_element(cover.family.begin(), cover.family.end());
  const std::vector<int> counts = covering_number_stats(h, cover, 1.0);
  int uncovered = 0, cmax = 0;
  for (int v = 0; v < n; ++v) {
    if (excluded[v]) continue;
    if (counts[v] == 0) ++uncovered;
    cmax = std::max(cmax, counts[v]);
  }
  cover.stats.uncovered = uncovered;
  cover.stats.covering_max = cmax;
  cover.stats.covering_hist.assign(cmax + 1, 0);
  for (int v = 0; v < n; ++v)
    if (!excluded[v]) cover.stats.covering_hist[counts[v]]++;
  return cover;
}

std::vector<int> covering_number_stats(const DiscreteHypersurface& h, const BallCover& cover,
                                       double rho) {
  if (!(rho > 0.0 && rho <= 10.0))
    throw InvalidArgument("covering_number_stats: rho must lie in (0, 10]");
  const Adjacency& adj = surface_adjacency(h);
  std::vector<int> counts(h.vertex_count(), 0);
  for (int c = 0; c < cover.center_count(); ++c) {
    for (const auto& [v, d] : ball(adj, cover.centers[c], rho * cover.theta[c])) {
      (void)d;
      counts[v]++;
    }
  }
  return counts;
}

namespace {

// All center pairs within interaction range (2 + tau) * (theta_p + theta_q),
// as (ci, cj, distance) with ci < cj. Complete: pairs beyond the range cannot
// violate any shell condition for margins <= tau.
std::vector<std::tuple<int, int, double>> interacting_pairs(const DiscreteHypersurface& h,
                                                            const BallCover& cover, double tau) {
  const Adjacency& adj = surface_adjacency(h);
  const double theta_max =
      cover.theta.empty() ? 0.0 : *std::max_element(cover.theta.begin(), cover.theta.end());
  std::vector<int> center_index(h.vertex_count(), -1);
  for (int c = 0; c < cover.center_count(); ++c) center_index[cover.centers[c]] = c;

  const int chunks = worker_count();
  std::vector<std::vector<std::tuple<int, int, double>>> parts(chunks);
  parallel_chunks(cover.center_count(), chunks, [&](int chunk, int begin, int end) {
    for (int c = begin; c < end; ++c) {
      const double radius = (2.0 + tau) * (cover.theta[c] + theta_max);
      for (const auto& [v, d] : ball(adj, cover.centers[c], radius)) {
        const int cj = center_index[v];
        if (cj < 0 || cj <= c) continue;
        parts[chunk].emplace_back(c, cj, d);
      }
    }
  });
  std::vector<std::tuple<int, int, double>> pairs;
  for (auto& p : parts) pairs.insert(pairs.end(), p.begin(), p.end());
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

QtReport verify_qt(const DiscreteHypersurface& h, const BallCover& cover, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("verify_qt: tau must lie in (0,1)");
  QtReport rep;
  rep.pass = true;
  const auto pairs = interacting_pairs(h, cover, tau);
  rep.pairs_scanned = static_cast<int>(pairs.size());
  for (const auto& [ci, cj, d] : pairs) {
    const double s = cover.theta[ci] + cover.theta[cj];
    const double lo = (2.0 - tau) * s;
    const double hi = (2.0 + tau) * s;
    const bool in_band = d > lo && d <= hi;
    const double slack = in_band ? -std::min(d - lo, hi - d) : std::min(std::abs(d - lo), std::abs(d - hi));
    if (slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.worst = QtViolation{cover.centers[ci], cover.centers[cj], d, lo, hi};
    }
    if (in_band) rep.pass = false;
  }
  return rep;
}

BallCover qt_perturb(const DiscreteHypersurface& h, const SkinField& skin,
                     const BallCover& cover, double tau_target, int sample_budget,
                     double eps_factor) {
  if (!(tau_target > 0.0 && tau_target < 1.0))
    throw InvalidArgument("qt_perturb: tau_target must lie in (0,1)");
  const Adjacency& adj = surface_adjacency(h);
  BallCover out = cover;
  const int nc = out.center_count();
  const int families =
      std::max(1, out.family.empty() ? 1 : *std::max_element(out.family.begin(), out.family.end()));
  const double eps = eps_factor > 0.0 ? eps_factor : 1.0 / (1e4 * families);

  // Family-by-family pass; earlier families are fixed.
  for (int fam = 1; fam <= families; ++fam) {
    for (int c = 0; c < nc; ++c) {
      if (out.family[c] != fam) continue;
      auto violates = [&](int vertex, double theta_v) {
        // Shell conditions against already-fixed centers (earlier families and
        // earlier members of this family).
        DijkstraOptions opts;
        const double theta_max =
            *std::max_element(out.theta.begin(), out.theta.end());
        opts.radius = (2.0 + tau_target) * (theta_v + theta_max) + theta_v;
        const std::vector<double> dist = dijkstra(adj, {vertex}, opts);
        for (int o = 0; o < nc; ++o) {
          if (o == c) continue;
          const bool fixed = out.family[o] < fam || (out.family[o] == fam && o < c);
          if (!fixed) continue;
          const double d = dist[out.centers[o]];
          if (d == kInf) continue;
          const double s = theta_v + out.theta[o];
          if (d > (2.0 - tau_target) * s && d <= (2.0 + tau_target) * s) return true;
        }
        return false;
      };
      if (!violates(out.centers[c], out.theta[c])) continue;

      // Replacement search in (distance, index) order within eps * Theta(p).
      const double budget_radius = std::max(eps * out.theta[c], 0.0);
      auto candidates = ball(adj, out.centers[c], budget_radius);
      std::sort(candidates.begin(), candidates.end(),
                [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second < b.second;
                  return a.first < b.first;
                });
      bool fixed_up = false;
      int tried = 0;
      for (const auto& [v, d] : candidates) {
        (void)d;
        if (v == out.centers[c]) continue;
        if (++tried > sample_budget) break;
        const double theta_v = out.xi * skin.delta[v];
        if (!violates(v, theta_v)) {
          out.centers[c] = v;
          out.theta[c] = theta_v;
          fixed_up = true;
          break;
        }
      }
      if (!fixed_up) {
        std::ostringstream os;
        os << "qt_perturb: no admissible replacement within budget for center " << out.centers[c]
           << " (family " << fam << "); lower tau_target";
        throw ComputeError(os.str());
      }
    }
  }

  // Re-verify: the perturbation must not lose coverage the input cover had.
  auto uncovered_count = [&](const BallCover& c) {
    const std::vector<int> counts = covering_number_stats(h, c, 1.0);
    const std::vector<char> excluded = h.excluded_mask();
    int u = 0;
    for (int v = 0; v < h.vertex_count(); ++v)
      if (!excluded[v] && counts[v] == 0) ++u;
    return u;
  };
  if (uncovered_count(out) > uncovered_count(cover))
    throw ComputeError("qt_perturb: perturbation broke the coverage invariant");

  // Certify the largest tau <= tau_target passing the exhaustive scan.
  double lo = 0.0, hi = tau_target;
  if (verify_qt(h, out, tau_target).pass) {
    out.qt_margin = tau_target;
    return out;
  }
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0) break;
    if (verify_qt(h, out, mid).pass)
      lo = mid;
    else
      hi = mid;
  }
  out.qt_margin = lo;
  return out;
}

TubeOpeningReport tube_opening_check(const DiscreteHypersurface& h, const BallCover& cover) {
  if (!cover.qt_margin.has_value())
    throw InvalidArgument("tube_opening_check: cover is not QT-certified");
  const Adjacency& adj = surface_adjacency(h);
  TubeOpeningReport rep;
  const auto pairs = interacting_pairs(h, cover, 0.5);
  for (const auto& [ci, cj, d] : pairs) {
    if (d > 2.0 * (cover.theta[ci] + cover.theta[cj])) continue;  // disjoint: vacuous
    const int p = cover.centers[ci], q = cover.centers[cj];
    const ShortestPathTree tree = dijkstra_tree(adj, {p});
    const std::vector<int> path = tree.path_to(q);
    if (path.empty()) continue;
    // Union membership for both doubled balls.
    const auto bp = ball(adj, p, 2.0 * cover.theta[ci]);
    const auto bq = ball(adj, q, 2.0 * cover.theta[cj]);
    std::vector<char> in_union(h.vertex_count(), 0);
    for (const auto& [v, dd] : bp) (void)dd, in_union[v] = 1;
    for (const auto& [v, dd] : bq) (void)dd, in_union[v] = 1;
    // Distance from the path; the largest admissible tube factor is the
    // distance to the nearest vertex outside the union.
    const std::vector<double> dpath = dijkstra(adj, path);
    double clearance = kInf;
    for (int v = 0; v < h.vertex_count(); ++v)
      if (!in_union[v]) clearance = std::min(clearance, dpath[v]);
    const double omega = clearance == kInf ? kInf : clearance / cover.theta[ci];
    rep.pairs.push_back({p, q, omega});
    rep.min_omega = std::min(rep.min_omega, omega);
    rep.vacuous = false;
  }
  return rep;
}

CoverCheck verify_cover(const DiscreteHypersurface& h, const BallCover& cover) {
  const Adjacency& adj = surface_adjacency(h);
  const std::vector<char> excluded = h.excluded_mask();
  CoverCheck check;

  std::vector<char> covered(h.vertex_count(), 0);
  for (int c = 0; c < cover.center_count(); ++c)
    for (const auto& [v, d] : ball(adj, cover.centers[c], cover.theta[c])) (void)d, covered[v] = 1;
  check.coverage = true;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v] && !covered[v]) check.coverage = false;

  check.family_disjoint = true;
  check.center_exclusion = true;
  const auto pairs = interacting_pairs(h, cover, 9.0);  // radius 11*(tp+tq) covers both tests
  for (const auto& [ci, cj, d] : pairs) {
    if (cover.family[ci] == cover.family[cj] &&
        d <= 10.0 * cover.theta[ci] + 10.0 * cover.theta[cj])
      check.family_disjoint = false;
    if (d <= std::max(cover.theta[ci], cover.theta[cj])) check.center_exclusion = false;
  }
  return check;
}

}  // namespace skinlab
