#include "skinlab/sphere_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace skinlab {

namespace {

SphereSample circle(int m) {
  SphereSample s;
  s.p = 1;
  s.count = m;
  s.points.resize(static_cast<size_t>(m) * 2);
  const double step = 2.0 * M_PI / m;
  for (int j = 0; j < m; ++j) {
    s.points[2 * j] = std::cos(step * j);
    s.points[2 * j + 1] = std::sin(step * j);
  }
  for (int j = 0; j < m; ++j) s.edges.push_back({j, (j + 1) % m, step});
  return s;
}

double arc(const double* a, const double* b, int dim) {
  double dot = 0.0;
  for (int k = 0; k < dim; ++k) dot += a[k] * b[k];
  dot = std::clamp(dot, -1.0, 1.0);
  return std::acos(dot);
}

// Connect every point to its nearest shell of neighbors (all pairs whose dot
// product equals the maximal off-diagonal dot, up to rounding).
void connect_nearest_shell(SphereSample& s) {
  const int d = s.p + 1;
  double best = -2.0;
  for (int i = 0; i < s.count; ++i)
    for (int j = i + 1; j < s.count; ++j) {
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += s.point(i)[k] * s.point(j)[k];
      if (dot < 1.0 - 1e-9) best = std::max(best, dot);
    }
  for (int i = 0; i < s.count; ++i)
    for (int j = i + 1; j < s.count; ++j) {
      double dot = 0.0;
      for (int k = 0; k < d; ++k) dot += s.point(i)[k] * s.point(j)[k];
      if (std::abs(dot - best) < 1e-9) s.edges.push_back({i, j, arc(s.point(i), s.point(j), d)});
    }
}

SphereSample cross_polytope(int p) {
  SphereSample s;
  s.p = p;
  const int d = p + 1;
  s.count = 2 * d;
  s.points.assign(static_cast<size_t>(s.count) * d, 0.0);
  for (int k = 0; k < d; ++k) {
    s.points[static_cast<size_t>(2 * k) * d + k] = 1.0;
    s.points[static_cast<size_t>(2 * k + 1) * d + k] = -1.0;
  }
  connect_nearest_shell(s);
  return s;
}

SphereSample cell16() {
  return cross_polytope(3);
}

SphereSample cell24() {
  SphereSample s;
  s.p = 3;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          double pt[4] = {0, 0, 0, 0};
          pt[i] = si * r;
          pt[j] = sj * r;
          s.points.insert(s.points.end(), pt, pt + 4);
        }
  s.count = 24;
  connect_nearest_shell(s);
  return s;
}

SphereSample cell600() {
  SphereSample s;
  s.p = 3;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 4>> pts;
  // 16 vertices (+-1/2, +-1/2, +-1/2, +-1/2)
  for (int m = 0; m < 16; ++m)
    pts.push_back({((m >> 0) & 1) ? 0.5 : -0.5, ((m >> 1) & 1) ? 0.5 : -0.5,
                   ((m >> 2) & 1) ? 0.5 : -0.5, ((m >> 3) & 1) ? 0.5 : -0.5});
  // 8 vertices, permutations of (+-1, 0, 0, 0)
  for (int k = 0; k < 4; ++k)
    for (int sg = -1; sg <= 1; sg += 2) {
      std::array<double, 4> v{0, 0, 0, 0};
      v[k] = sg;
      pts.push_back(v);
    }
  // 96 vertices: even permutations of 1/2*(+-phi, +-1, +-1/phi, 0)
  const int even_perms[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 0, 3, 2},
                                 {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 0, 1, 3}, {2, 1, 3, 0},
                                 {2, 3, 0, 1}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}};
  const double base[4] = {phi / 2.0, 0.5, 1.0 / (2.0 * phi), 0.0};
  std::set<std::array<long long, 4>> seen;
  for (const auto& perm : even_perms)
    for (int s0 = -1; s0 <= 1; s0 += 2)
      for (int s1 = -1; s1 <= 1; s1 += 2)
        for (int s2 = -1; s2 <= 1; s2 += 2) {
          std::array<double, 4> v;
          const double sgn[4] = {double(s0), double(s1), double(s2), 1.0};
          for (int k = 0; k < 4; ++k) v[perm[k]] = base[k] * sgn[k];
          std::array<long long, 4> key;
          for (int k = 0; k < 4; ++k) key[k] = llround(v[k] * 1e9);
          if (seen.insert(key).second) pts.push_back(v);
        }
  s.count = static_cast<int>(pts.size());
  for (const auto& v : pts) s.points.insert(s.points.end(), v.begin(), v.end());
  connect_nearest_shell(s);
  return s;
}

SphereSample icosphere(int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> pts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
      {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : pts) {
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    for (double& x : p) x /= n;
  }
  std::vector<std::array<int, 3>> tris = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10},
                                          {0, 10, 11}, {1, 5, 9},  {5, 11, 4},  {11, 10, 2},
                                          {10, 7, 6},  {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
                                          {3, 2, 6},   {3, 6, 8},  {3, 8, 9},   {4, 9, 5},
                                          {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      std::array<double, 3> m;
      for (int k = 0; k < 3; ++k) m[k] = pts[a][k] + pts[b][k];
      const double n = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
      for (double& x : m) x /= n;
      pts.push_back(m);
      const int idx = static_cast<int>(pts.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    for (const auto& t : tris) {
      const int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    tris = std::move(next);
  }
  SphereSample s;
  s.p = 2;
  s.count = static_cast<int>(pts.size());
  for (const auto& p : pts) s.points.insert(s.points.end(), p.begin(), p.end());
  std::set<std::pair<int, int>> es;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) es.insert(std::minmax(t[k], t[(k + 1) % 3]));
  for (auto [i, j] : es) s.edges.push_back({i, j, arc(s.point(i), s.point(j), 3)});
  return s;
}

}  // namespace

SphereSample sample_sphere(int p, int angular_res) {
  if (p < 1) throw InvalidArgument("sample_sphere: p must be >= 1");
  if (angular_res < 3) throw InvalidArgument("sample_sphere: need at least 3 angular samples");
  switch (p) {
    case 1:
      return circle(angular_res);
    case 2: {
      // 12, 42, 162, ... vertices
      int level = 0;
      while (level < 3 && 12 * (1 << (2 * level)) < angular_res) ++level;
      return icosphere(level);
    }
    case 3:
      if (angular_res <= 8) return cell16();
      if (angular_res <= 48) return cell24();
      return cell600();
    default:
      return cross_polytope(p);
  }
}

}  // namespace skinlab
