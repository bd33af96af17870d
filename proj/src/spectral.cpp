#include "skinlab/spectral.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>

namespace skinlab {

namespace {

std::vector<double> vertex_masses(const DiscreteHypersurface& h) {
  const int n = h.vertex_count();
  const int sdim = h.surface_dim();
  std::vector<double> sum(n, 0.0);
  std::vector<int> deg(n, 0);
  for (const Edge& e : h.edges) {
    const double cell = std::pow(e.len, sdim);
    sum[e.u] += cell;
    sum[e.v] += cell;
    deg[e.u]++;
    deg[e.v]++;
  }
  std::vector<double> m(n, 0.0);
  for (int v = 0; v < n; ++v) {
    if (deg[v] == 0) throw InvalidArgument("assemble_forms: isolated vertex");
    m[v] = sum[v] / deg[v];
  }
  return m;
}

}  // namespace

int QuadraticForms::free_count() const {
  int c = 0;
  for (char d : dirichlet)
    if (!d) ++c;
  return c;
}

double QuadraticForms::numerator(const std::vector<double>& f) const {
  double acc = 0.0;
  for (const Edge& e : edges) {
    const double df = f[e.u] - f[e.v];
    acc += e.len * df * df;
  }
  for (int v = 0; v < vertex_count(); ++v) acc += num_diag[v] * f[v] * f[v];
  return acc;
}

double QuadraticForms::denominator(const std::vector<double>& f) const {
  double acc = 0.0;
  for (int v = 0; v < vertex_count(); ++v) acc += den_diag[v] * f[v] * f[v];
  return acc;
}

double QuadraticForms::rayleigh(const std::vector<double>& f) const {
  std::vector<double> g = f;
  for (int v = 0; v < vertex_count(); ++v)
    if (dirichlet[v]) g[v] = 0.0;
  const double den = denominator(g);
  if (den <= 0.0) throw InvalidArgument("rayleigh: test vector vanishes on the free set");
  return numerator(g) / den;
}

QuadraticForms assemble_forms(const DiscreteHypersurface& h, const SkinField& skin, double band,
                              OuterCondition outer) {
  if (band < 0.0) throw InvalidArgument("assemble_forms: band must be >= 0");
  const int n = h.vertex_count();
  QuadraticForms forms;
  forms.surface_id = skin.surface_id;
  forms.band = band;
  forms.mass = vertex_masses(h);
  forms.num_diag.resize(n);
  forms.den_diag.resize(n);
  for (int v = 0; v < n; ++v) {
    forms.num_diag[v] = forms.mass[v] * h.a_norm[v] * h.a_norm[v];
    forms.den_diag[v] = forms.mass[v] * skin.values[v] * skin.values[v];
  }
  forms.edges.reserve(h.edges.size());
  for (const Edge& e : h.edges) {
    const double me = 0.5 * (forms.mass[e.u] + forms.mass[e.v]);
    forms.edges.push_back({e.u, e.v, me / (e.len * e.len)});
  }

  forms.dirichlet.assign(n, 0);
  if (!h.sigma_proxy.empty()) {
    std::vector<int> sources;
    for (const auto& [v, off] : h.sigma_proxy) sources.push_back(v);
    const std::vector<double> d = dijkstra(surface_adjacency(h), sources);
    for (int v = 0; v < n; ++v)
      if (d[v] <= band) forms.dirichlet[v] = 1;
  }
  if (outer == OuterCondition::Dirichlet)
    for (int v : h.outer_boundary) forms.dirichlet[v] = 1;
  if (forms.free_count() == 0)
    throw InvalidArgument("assemble_forms: the Dirichlet band leaves no free vertices");
  return forms;
}

namespace {

SpectralReport solve_smallest(const QuadraticForms& forms, double tol, int max_iterations) {
  const int n = forms.vertex_count();
  std::vector<int> map(n, -1);
  std::vector<int> inv;
  for (int v = 0; v < n; ++v)
    if (!forms.dirichlet[v]) {
      map[v] = static_cast<int>(inv.size());
      inv.push_back(v);
    }
  const int m = static_cast<int>(inv.size());
  if (m == 0) throw InvalidArgument("hardy_constant: no free vertices");

  Eigen::VectorXd den(m);
  for (int i = 0; i < m; ++i) {
    den[i] = forms.den_diag[inv[i]];
    if (!(den[i] > 0.0))
      throw InvalidArgument("hardy_constant: denominator weight vanishes on a free vertex");
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(forms.edges.size() * 4 + m);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) diag[i] = forms.num_diag[inv[i]];
  for (const Edge& e : forms.edges) {
    const int iu = map[e.u], iv = map[e.v];
    const double w = e.len;
    if (iu >= 0) diag[iu] += w;
    if (iv >= 0) diag[iv] += w;
    if (iu >= 0 && iv >= 0) {
      trip.emplace_back(iu, iv, -w);
      trip.emplace_back(iv, iu, -w);
    }
  }
  for (int i = 0; i < m; ++i) trip.emplace_back(i, i, diag[i]);
  Eigen::SparseMatrix<double> N(m, m);
  N.setFromTriplets(trip.begin(), trip.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(N);
  if (solver.info() != Eigen::Success)
    throw ComputeError("hardy_constant: factorization failed (numerator form singular?)");

  Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
  v /= std::sqrt(v.dot(den.asDiagonal() * v));
  SpectralReport rep;
  rep.band = forms.band;
  double lambda = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd rhs = den.asDiagonal() * v;
    Eigen::VectorXd w = solver.solve(rhs);
    const double norm = std::sqrt(w.dot(den.asDiagonal() * w));
    if (!(norm > 0.0)) throw ComputeError("hardy_constant: iteration collapsed");
    w /= norm;
    const Eigen::VectorXd Nw = N * w;
    const Eigen::VectorXd Dw = den.asDiagonal() * w;
    lambda = w.dot(Nw) / w.dot(Dw);
    Eigen::VectorXd resid = Nw - lambda * Dw;
    double rnorm = 0.0;
    for (int i = 0; i < m; ++i) rnorm += resid[i] * resid[i] / den[i];
    rep.residual = std::sqrt(rnorm);  // ||.||_{D^-1}; w is D-normalized
    rep.iterations = it;
    v = w;
    if (rep.residual <= tol * std::max(lambda, 1e-300)) {
      rep.converged = true;
      break;
    }
  }
  rep.lambda_min = lambda;
  if (!rep.converged) {
    // Reported with the residual; callers decide whether to accept.
    rep.converged = rep.residual <= 1e-6 * std::max(lambda, 1e-300);
  }
  return rep;
}

}  // namespace

SpectralReport hardy_constant(const QuadraticForms& forms, double tol, int max_iterations) {
  return solve_smallest(forms, tol, max_iterations);
}

SpectralReport hardy_dist_variant(const DiscreteHypersurface& h, double band,
                                  OuterCondition outer) {
  if (h.sigma_proxy.empty())
    throw InvalidArgument("hardy_dist_variant: requires a singular surface");
  SkinField dummy;
  dummy.alpha = 1.0;
  dummy.values.assign(h.vertex_count(), 1.0);
  dummy.delta.assign(h.vertex_count(), 1.0);
  QuadraticForms forms = assemble_forms(h, dummy, band, outer);
  const ScalarField dist = dist_to_sigma(h);
  for (int v = 0; v < h.vertex_count(); ++v)
    forms.den_diag[v] = forms.mass[v] / (dist.values[v] * dist.values[v]);
  return solve_smallest(forms, 1e-10, 800);
}

double neumann_ball_eigenvalue(const DiscreteHypersurface& h, const SkinField& skin, int center,
                               double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("neumann_ball_eigenvalue: mu must be positive");
  const double radius = mu * skin.alpha * skin.delta[center];
  if (!(radius > 0.0) || radius == kInf)
    throw InvalidArgument("neumann_ball_eigenvalue: degenerate ball radius");
  DijkstraOptions opts;
  opts.radius = radius;
  const std::vector<double> d = dijkstra(surface_adjacency(h), {center}, opts);
  std::vector<char> in_ball(h.vertex_count(), 0);
  int count = 0;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (d[v] <= radius) in_ball[v] = 1, ++count;
  if (count < 4) throw InvalidArgument("neumann_ball_eigenvalue: ball contains < 4 vertices");

  QuadraticForms forms = assemble_forms(h, skin, 0.0, OuterCondition::Neumann);
  // Natural boundary: restrict sums to the ball, no clamping.
  QuadraticForms ball;
  ball.band = 0.0;
  ball.mass.assign(count, 0.0);
  ball.num_diag.assign(count, 0.0);
  ball.den_diag.assign(count, 0.0);
  ball.dirichlet.assign(count, 0);
  std::vector<int> map(h.vertex_count(), -1);
  int next = 0;
  double num_total = 0.0;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (!in_ball[v]) continue;
    map[v] = next;
    ball.mass[next] = forms.mass[v];
    ball.num_diag[next] = forms.num_diag[v];
    ball.den_diag[next] = forms.den_diag[v];
    num_total += forms.num_diag[v];
    ++next;
  }
  for (const Edge& e : forms.edges)
    if (map[e.u] >= 0 && map[e.v] >= 0) ball.edges.push_back({map[e.u], map[e.v], e.len});
  if (num_total == 0.0) return 0.0;  // constants are in the kernel
  return solve_smallest(ball, 1e-10, 800).lambda_min;
}

namespace {

std::vector<double> conformal_distances(const DiscreteHypersurface& h,
                                        const std::vector<double>& rho,
                                        const std::vector<std::pair<int, int>>& pairs) {
  const Adjacency adj = Adjacency::build_weighted(
      h.vertex_count(), h.edges,
      [&](const Edge& e) { return e.len * 0.5 * (rho[e.u] + rho[e.v]); });
  std::vector<double> out(pairs.size(), 0.0);
  std::vector<int> last_source(1, -1);
  std::vector<double> dist;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const auto [s, t] = pairs[i];
    if (last_source[0] != s) {
      dist = dijkstra(adj, {s});
      last_source[0] = s;
    }
    out[i] = dist[t];
  }
  return out;
}

std::vector<std::vector<double>> conformal_matrix(const DiscreteHypersurface& h,
                                                  const std::vector<double>& rho,
                                                  const std::vector<int>& samples) {
  const Adjacency adj = Adjacency::build_weighted(
      h.vertex_count(), h.edges,
      [&](const Edge& e) { return e.len * 0.5 * (rho[e.u] + rho[e.v]); });
  std::vector<std::vector<double>> m(samples.size(), std::vector<double>(samples.size(), 0.0));
  for (size_t i = 0; i < samples.size(); ++i) {
    const std::vector<double> dist = dijkstra(adj, {samples[i]});
    for (size_t j = 0; j < samples.size(); ++j) m[i][j] = dist[samples[j]];
  }
  return m;
}

}  // namespace

std::vector<double> skin_metric_distances(const DiscreteHypersurface& h, const SkinField& skin,
                                          const std::vector<std::pair<int, int>>& pairs) {
  return conformal_distances(h, skin.values, pairs);
}

std::vector<double> quasi_hyperbolic_distances(const DiscreteHypersurface& h,
                                               const std::vector<std::pair<int, int>>& pairs) {
  if (h.sigma_proxy.empty())
    throw InvalidArgument(
        "quasi_hyperbolic_distances: undefined on regular surfaces (one-point space)");
  const ScalarField dist = dist_to_sigma(h);
  std::vector<double> rho(h.vertex_count());
  for (int v = 0; v < h.vertex_count(); ++v) rho[v] = 1.0 / dist.values[v];
  return conformal_distances(h, rho, pairs);
}

std::vector<std::vector<double>> skin_metric_matrix(const DiscreteHypersurface& h,
                                                    const SkinField& skin,
                                                    const std::vector<int>& samples) {
  return conformal_matrix(h, skin.values, samples);
}

std::vector<std::vector<double>> quasi_hyperbolic_matrix(const DiscreteHypersurface& h,
                                                         const std::vector<int>& samples) {
  if (h.sigma_proxy.empty())
    throw InvalidArgument("quasi_hyperbolic_matrix: undefined on regular surfaces");
  const ScalarField dist = dist_to_sigma(h);
  std::vector<double> rho(h.vertex_count());
  for (int v = 0; v < h.vertex_count(); ++v) rho[v] = 1.0 / dist.values[v];
  return conformal_matrix(h, rho, samples);
}

std::vector<int> sample_vertices(const DiscreteHypersurface& h, int count) {
  const std::vector<char> excluded = h.excluded_mask();
  std::vector<int> pool;
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!excluded[v]) pool.push_back(v);
  if (count >= static_cast<int>(pool.size())) return pool;
  // Golden-ratio stride gives a low-discrepancy, index-deterministic subset.
  std::vector<int> out;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double t = 0.0;
  std::vector<char> taken(pool.size(), 0);
  for (int k = 0; k < count; ++k) {
    t += phi;
    t -= std::floor(t);
    size_t idx = static_cast<size_t>(t * pool.size());
    while (taken[idx]) idx = (idx + 1) % pool.size();
    taken[idx] = 1;
    out.push_back(pool[idx]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double four_point_delta(const std::vector<std::vector<double>>& dist, long long quadruple_budget) {
  int s = static_cast<int>(dist.size());
  if (s < 4) throw InvalidArgument("four_point_delta: need at least 4 samples");
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  auto quadruples = [](long long k) { return k * (k - 1) * (k - 2) * (k - 3) / 24; };
  while (quadruples(idx.size()) > quadruple_budget && static_cast<int>(idx.size()) > 4) {
    // Deterministic decimation: drop every third sample.
    std::vector<int> next;
    for (size_t i = 0; i < idx.size(); ++i)
      if (i % 3 != 1) next.push_back(idx[i]);
    if (next.size() == idx.size()) next.pop_back();
    idx = std::move(next);
  }
  double worst = 0.0;
  const int k = static_cast<int>(idx.size());
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        for (int e = c + 1; e < k; ++e) {
          const int A = idx[a], B = idx[b], C = idx[c], E = idx[e];
          double s1 = dist[A][B] + dist[C][E];
          double s2 = dist[A][C] + dist[B][E];
          double s3 = dist[A][E] + dist[B][C];
          double hi = std::max({s1, s2, s3});
          double mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
          worst = std::max(worst, (hi - mid) / 2.0);
        }
  return worst;
}

}  // namespace skinlab
