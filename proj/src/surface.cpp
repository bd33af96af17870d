#include "skinlab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "skinlab/curvature.hpp"
#include "skinlab/sphere_sampling.hpp"

namespace skinlab {

double DiscreteHypersurface::radius(int v) const {
  const double* x = position(v);
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += x[k] * x[k];
  return std::sqrt(s);
}

std::vector<char> DiscreteHypersurface::excluded_mask() const {
  std::vector<char> m(vertex_count(), 0);
  for (int v : outer_boundary) m[v] = 1;
  return m;
}

std::vector<char> DiscreteHypersurface::sigma_proxy_mask() const {
  std::vector<char> m(vertex_count(), 0);
  for (const auto& [v, off] : sigma_proxy) m[v] = 1;
  return m;
}

void DiscreteHypersurface::validate() const {
  const int n = vertex_count();
  if (static_cast<int>(positions.size()) != n * dim)
    throw InvalidArgument("surface: positions/dim mismatch");
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
      throw InvalidArgument("surface: bad edge endpoints");
    if (!(e.len > 0.0)) throw InvalidArgument("surface: non-positive edge length");
  }
  for (double a : a_norm)
    if (!(a >= 0.0)) throw InvalidArgument("surface: negative or NaN a_norm");
  for (const auto& [v, off] : sigma_proxy) {
    if (v < 0 || v >= n) throw InvalidArgument("surface: bad sigma_proxy index");
    if (!(off >= 0.0)) throw InvalidArgument("surface: negative sigma_proxy offset");
  }
  if (!(scale > 0.0)) throw InvalidArgument("surface: non-positive scale");
}

namespace {

// Adjacency cache keyed by the surface's address and a cheap structural tag.
// Entries are heap-allocated so returned references stay valid across cache
// insertions; FIFO eviction bounds memory (references are only held within a
// single operation).
struct AdjCacheEntry {
  const void* key = nullptr;
  size_t edge_count = 0;
  double first_len = -1.0;
  Adjacency adj;
};

std::mutex g_adj_mutex;
std::vector<std::unique_ptr<AdjCacheEntry>> g_adj_cache;

double kappa_cached(int p, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, q});
  if (it != cache.end()) return it->second;
  auto chart = lawson_cone_chart(p, q);
  std::vector<double> point{1.0};
  for (double a : generic_sphere_angles(p)) point.push_back(a);
  for (double a : generic_sphere_angles(q)) point.push_back(a);
  const double k = second_fundamental_oracle(chart, point);
  cache[{p, q}] = k;
  return k;
}

std::string cone_kind(int p, int q) {
  std::ostringstream os;
  os << "lawson_cone(" << p << "," << q << ")";
  return os.str();
}

}  // namespace

const Adjacency& surface_adjacency(const DiscreteHypersurface& h) {
  std::lock_guard<std::mutex> lock(g_adj_mutex);
  const double tag = h.edges.empty() ? -1.0 : h.edges.front().len;
  for (auto& e : g_adj_cache)
    if (e->key == &h && e->edge_count == h.edges.size() && e->first_len == tag) return e->adj;
  auto entry = std::make_unique<AdjCacheEntry>();
  entry->key = &h;
  entry->edge_count = h.edges.size();
  entry->first_len = tag;
  entry->adj = Adjacency::build(h.vertex_count(), h.edges);
  if (g_adj_cache.size() >= 16) g_adj_cache.erase(g_adj_cache.begin());
  g_adj_cache.push_back(std::move(entry));
  return g_adj_cache.back()->adj;
}

double lawson_kappa(int p, int q) { return kappa_cached(p, q); }

DiscreteHypersurface generate_lawson_cone(int p, int q, double r_min, double r_max,
                                          int angular_res, int radial_res) {
  if (p < 1 || q < 1) throw InvalidArgument("lawson cone: p,q must be >= 1");
  if (angular_res < 3) throw InvalidArgument("lawson cone: degenerate angular resolution");
  if (radial_res < 2) throw InvalidArgument("lawson cone: need at least 2 radial samples");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw InvalidArgument("lawson cone: need 0 < r_min < r_max");

  const double a = lawson_a(p, q), b = lawson_b(p, q);
  const double kappa = kappa_cached(p, q);
  const SphereSample sp = sample_sphere(p, angular_res);
  const SphereSample sq = sample_sphere(q, angular_res);
  const int ring = sp.count * sq.count;
  const int dim = p + q + 2;

  DiscreteHypersurface h;
  h.kind = cone_kind(p, q);
  h.dim = dim;
  const int nv = ring * radial_res;
  h.positions.resize(static_cast<size_t>(nv) * dim);
  h.a_norm.resize(nv);

  std::vector<double> radii(radial_res);
  const double g = std::pow(r_max / r_min, 1.0 / (radial_res - 1));
  for (int i = 0; i < radial_res; ++i) radii[i] = r_min * std::pow(g, i);
  radii.back() = r_max;

  for (int i = 0; i < radial_res; ++i) {
    const double r = radii[i];
    for (int jp = 0; jp < sp.count; ++jp) {
      for (int jq = 0; jq < sq.count; ++jq) {
        const int v = i * ring + jp * sq.count + jq;
        double* x = h.positions.data() + static_cast<size_t>(v) * dim;
        for (int k = 0; k <= p; ++k) x[k] = r * a * sp.point(jp)[k];
        for (int k = 0; k <= q; ++k) x[p + 1 + k] = r * b * sq.point(jq)[k];
        h.a_norm[v] = kappa / r;
      }
    }
  }

  // Radial edges along rays, angular edges within each cross section
  // (product metric: factor arcs scaled by a*r and b*r).
  for (int i = 0; i + 1 < radial_res; ++i)
    for (int j = 0; j < ring; ++j)
      h.edges.push_back({i * ring + j, (i + 1) * ring + j, radii[i + 1] - radii[i]});
  for (int i = 0; i < radial_res; ++i) {
    const double r = radii[i];
    for (const Edge& e : sp.edges)
      for (int jq = 0; jq < sq.count; ++jq)
        h.edges.push_back({i * ring + e.u * sq.count + jq, i * ring + e.v * sq.count + jq,
                           a * r * e.len});
    for (const Edge& e : sq.edges)
      for (int jp = 0; jp < sp.count; ++jp)
        h.edges.push_back({i * ring + jp * sq.count + e.u, i * ring + jp * sq.count + e.v,
                           b * r * e.len});
  }

  for (int j = 0; j < ring; ++j) h.sigma_proxy.emplace_back(j, r_min);
  for (int j = 0; j < ring; ++j) h.outer_boundary.push_back((radial_res - 1) * ring + j);
  h.validate();
  return h;
}

DiscreteHypersurface generate_link(int p, int q, int angular_res) {
  if (p < 1 || q < 1) throw InvalidArgument("link: p,q must be >= 1");
  if (angular_res < 3) throw InvalidArgument("link: degenerate angular resolution");
  const double a = lawson_a(p, q), b = lawson_b(p, q);
  const double kappa = kappa_cached(p, q);
  const SphereSample sp = sample_sphere(p, angular_res);
  const SphereSample sq = sample_sphere(q, angular_res);
  const int dim = p + q + 2;

  DiscreteHypersurface h;
  {
    std::ostringstream os;
    os << "link(" << p << "," << q << ")";
    h.kind = os.str();
  }
  h.dim = dim;
  const int nv = sp.count * sq.count;
  h.positions.resize(static_cast<size_t>(nv) * dim);
  h.a_norm.assign(nv, kappa);
  for (int jp = 0; jp < sp.count; ++jp)
    for (int jq = 0; jq < sq.count; ++jq) {
      double* x = h.positions.data() + static_cast<size_t>(jp * sq.count + jq) * dim;
      for (int k = 0; k <= p; ++k) x[k] = a * sp.point(jp)[k];
      for (int k = 0; k <= q; ++k) x[p + 1 + k] = b * sq.point(jq)[k];
    }
  for (const Edge& e : sp.edges)
    for (int jq = 0; jq < sq.count; ++jq)
      h.edges.push_back({e.u * sq.count + jq, e.v * sq.count + jq, a * e.len});
  for (const Edge& e : sq.edges)
    for (int jp = 0; jp < sp.count; ++jp)
      h.edges.push_back({jp * sq.count + e.u, jp * sq.count + e.v, b * e.len});
  h.validate();
  return h;
}

DiscreteHypersurface generate_hyperplane(double extent, int res) {
  if (res < 2) throw InvalidArgument("hyperplane: need at least a 2x2 grid");
  if (!(extent > 0.0)) throw InvalidArgument("hyperplane: extent must be positive");
  DiscreteHypersurface h;
  h.kind = "hyperplane";
  h.dim = 3;
  const int n = res + 1;
  const double step = extent / res;
  h.positions.resize(static_cast<size_t>(n) * n * 3);
  h.a_norm.assign(static_cast<size_t>(n) * n, 0.0);
  auto id = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double* x = h.positions.data() + static_cast<size_t>(id(i, j)) * 3;
      x[0] = i * step;
      x[1] = j * step;
      x[2] = 0.0;
    }
  const double diag = step * std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n) h.edges.push_back({id(i, j), id(i + 1, j), step});
      if (j + 1 < n) h.edges.push_back({id(i, j), id(i, j + 1), step});
      if (i + 1 < n && j + 1 < n) h.edges.push_back({id(i, j), id(i + 1, j + 1), diag});
      if (i + 1 < n && j > 0) h.edges.push_back({id(i, j), id(i + 1, j - 1), diag});
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) h.outer_boundary.push_back(id(i, j));
  h.validate();
  return h;
}

DiscreteHypersurface generate_catenoid(double height, int res) {
  if (res < 3) throw InvalidArgument("catenoid: degenerate resolution");
  if (!(height > 0.0)) throw InvalidArgument("catenoid: height must be positive");
  DiscreteHypersurface h;
  h.kind = "catenoid";
  h.dim = 3;
  const int nu = std::max(res, 3);
  const int nv = std::max(res / 2 + 1, 3);
  const double du = 2.0 * M_PI / nu;
  const auto chart = catenoid_chart();
  std::vector<double> vs(nv);
  for (int j = 0; j < nv; ++j) vs[j] = -height / 2.0 + height * j / (nv - 1);

  h.positions.resize(static_cast<size_t>(nu) * nv * 3);
  h.a_norm.resize(static_cast<size_t>(nu) * nv);
  auto id = [nu](int iu, int jv) { return jv * nu + iu; };
  std::vector<double> ring_a(nv);
  for (int j = 0; j < nv; ++j)
    ring_a[j] = second_fundamental_oracle(chart, {0.37, vs[j]});
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      const double u[2] = {i * du, vs[j]};
      chart.eval(u, h.positions.data() + static_cast<size_t>(id(i, j)) * 3);
      h.a_norm[id(i, j)] = ring_a[j];
    }
  // Intrinsic arcs: circle arcs cosh(v)*du, meridian arcs sinh(v2)-sinh(v1).
  for (int j = 0; j < nv; ++j) {
    const double arc = std::cosh(vs[j]) * du;
    for (int i = 0; i < nu; ++i) h.edges.push_back({id(i, j), id((i + 1) % nu, j), arc});
  }
  for (int j = 0; j + 1 < nv; ++j) {
    const double seg = std::sinh(vs[j + 1]) - std::sinh(vs[j]);
    for (int i = 0; i < nu; ++i) h.edges.push_back({id(i, j), id(i, j + 1), seg});
  }
  for (int i = 0; i < nu; ++i) {
    h.outer_boundary.push_back(id(i, 0));
    h.outer_boundary.push_back(id(i, nv - 1));
  }
  h.validate();
  return h;
}

DiscreteHypersurface scale_surface(const DiscreteHypersurface& h, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("scale_surface: lambda must be finite positive");
  DiscreteHypersurface s = h;
  for (double& x : s.positions) x *= lambda;
  for (Edge& e : s.edges) e.len *= lambda;
  for (double& a : s.a_norm) a /= lambda;
  for (auto& [v, off] : s.sigma_proxy) off *= lambda;
  s.scale = h.scale * lambda;
  return s;
}

ScalarField geodesic_distance(const DiscreteHypersurface& h, const std::vector<int>& sources) {
  if (sources.empty()) throw InvalidArgument("geodesic_distance: sources must be non-empty");
  ScalarField f;
  f.name = "geodesic_distance";
  f.values = dijkstra(surface_adjacency(h), sources);
  return f;
}

ScalarField dist_to_sigma(const DiscreteHypersurface& h) {
  ScalarField f;
  f.name = "dist_to_sigma";
  if (h.sigma_proxy.empty()) {
    f.values.assign(h.vertex_count(), kInf);
    return f;
  }
  std::vector<int> sources;
  std::vector<double> offsets;
  for (const auto& [v, off] : h.sigma_proxy) {
    sources.push_back(v);
    offsets.push_back(off);
  }
  f.values = dijkstra(surface_adjacency(h), sources, offsets);
  return f;
}

ConnectivityReport check_connectivity(const DiscreteHypersurface& h,
                                      const std::vector<int>& exclude) {
  std::vector<char> mask(h.vertex_count(), 0);
  for (int v : exclude) mask[v] = 1;
  int active = 0;
  for (char m : mask)
    if (!m) ++active;
  const Components c = connected_components(surface_adjacency(h), &mask);
  ConnectivityReport r;
  r.component_sizes = c.sizes;
  r.connected = c.connected(active);
  return r;
}

ConeLayout cone_layout(const DiscreteHypersurface& h) {
  ConeLayout l;
  if (h.kind.rfind("lawson_cone", 0) != 0)
    throw InvalidArgument("cone_layout: not a cone mesh");
  l.ring_size = static_cast<int>(h.sigma_proxy.size());
  l.rings = h.vertex_count() / l.ring_size;
  l.radii.resize(l.rings);
  for (int i = 0; i < l.rings; ++i) l.radii[i] = h.radius(i * l.ring_size);
  return l;
}

bool recover_cone_params(const DiscreteHypersurface& h, ConeParams& out) {
  if (h.kind.rfind("lawson_cone(", 0) != 0) return false;
  int p = 0, q = 0;
  if (std::sscanf(h.kind.c_str(), "lawson_cone(%d,%d)", &p, &q) != 2) return false;
  const ConeLayout layout = cone_layout(h);
  out.p = p;
  out.q = q;
  out.radial_res = layout.rings;
  out.r_min = layout.radii.front();
  out.r_max = layout.radii.back();
  for (int res = 3; res <= 256; ++res) {
    const int count = sample_sphere(p, res).count * sample_sphere(q, res).count;
    if (count == layout.ring_size) {
      out.angular_res = res;
      return true;
    }
    if (count > layout.ring_size && p != 1 && q != 1) break;
  }
  return false;
}

}  // namespace skinlab
