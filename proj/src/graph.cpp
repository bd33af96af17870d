#include "skinlab/graph.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace skinlab {

Adjacency Adjacency::build(int vertex_count, const std::vector<Edge>& edges) {
  return build_weighted(vertex_count, edges, [](const Edge& e) { return e.len; });
}

Adjacency Adjacency::build_weighted(int vertex_count, const std::vector<Edge>& edges,
                                    const std::function<double(const Edge&)>& weight) {
  Adjacency a;
  a.head.assign(vertex_count + 1, 0);
  for (const Edge& e : edges) {
    a.head[e.u + 1]++;
    a.head[e.v + 1]++;
  }
  for (int v = 0; v < vertex_count; ++v) a.head[v + 1] += a.head[v];
  a.nbr.resize(a.head.back());
  a.len.resize(a.head.back());
  std::vector<int> fill(a.head.begin(), a.head.end() - 1);
  for (const Edge& e : edges) {
    const double w = weight(e);
    a.nbr[fill[e.u]] = e.v;
    a.len[fill[e.u]++] = w;
    a.nbr[fill[e.v]] = e.u;
    a.len[fill[e.v]++] = w;
  }
  // Sort each neighbor list by (target, length) for deterministic sweeps.
  for (int v = 0; v < vertex_count; ++v) {
    const int b = a.head[v], e = a.head[v + 1];
    std::vector<std::pair<int, double>> tmp;
    tmp.reserve(e - b);
    for (int i = b; i < e; ++i) tmp.emplace_back(a.nbr[i], a.len[i]);
    std::sort(tmp.begin(), tmp.end());
    for (int i = b; i < e; ++i) {
      a.nbr[i] = tmp[i - b].first;
      a.len[i] = tmp[i - b].second;
    }
  }
  return a;
}

namespace {

using HeapItem = std::pair<double, int>;  // (distance, vertex); vertex index breaks ties

struct HeapGreater {
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  }
};

}  // namespace

std::vector<double> dijkstra(const Adjacency& adj, const std::vector<int>& sources,
                             const std::vector<double>& source_offsets,
                             const DijkstraOptions& opts) {
  const int n = adj.vertex_count();
  std::vector<double> dist(n, kInf);
  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapGreater> pq;
  for (size_t i = 0; i < sources.size(); ++i) {
    const int s = sources[i];
    const double d0 = source_offsets.empty() ? 0.0 : source_offsets[i];
    if (opts.allowed && !(*opts.allowed)[s]) continue;
    if (d0 < dist[s]) {
      dist[s] = d0;
      pq.emplace(d0, s);
    }
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (d > opts.radius) break;
    for (int i = adj.head[u]; i < adj.head[u + 1]; ++i) {
      const int w = adj.nbr[i];
      if (opts.allowed && !(*opts.allowed)[w]) continue;
      const double nd = d + adj.len[i];
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  if (opts.radius < kInf) {
    for (double& d : dist)
      if (d > opts.radius) d = kInf;
  }
  return dist;
}

std::vector<double> dijkstra(const Adjacency& adj, const std::vector<int>& sources,
                             const DijkstraOptions& opts) {
  return dijkstra(adj, sources, {}, opts);
}

ShortestPathTree dijkstra_tree(const Adjacency& adj, const std::vector<int>& sources,
                               const DijkstraOptions& opts) {
  const int n = adj.vertex_count();
  ShortestPathTree t;
  t.dist.assign(n, kInf);
  t.parent.assign(n, -1);
  std::priority_queue<HeapItem, std::vector<HeapItem>, HeapGreater> pq;
  for (int s : sources) {
    if (opts.allowed && !(*opts.allowed)[s]) continue;
    t.dist[s] = 0.0;
    pq.emplace(0.0, s);
  }
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > t.dist[u]) continue;
    if (d > opts.radius) break;
    for (int i = adj.head[u]; i < adj.head[u + 1]; ++i) {
      const int w = adj.nbr[i];
      if (opts.allowed && !(*opts.allowed)[w]) continue;
      const double nd = d + adj.len[i];
      if (nd < t.dist[w] || (nd == t.dist[w] && t.parent[w] > u && t.parent[w] != -1)) {
        t.dist[w] = nd;
        t.parent[w] = u;
        pq.emplace(nd, w);
      }
    }
  }
  return t;
}

std::vector<int> ShortestPathTree::path_to(int target) const {
  std::vector<int> path;
  if (dist[target] == kInf) return path;
  for (int v = target; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

Components connected_components(const Adjacency& adj, const std::vector<char>* excluded) {
  const int n = adj.vertex_count();
  Components c;
  c.comp.assign(n, -1);
  int ncomp = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (c.comp[s] != -1) continue;
    if (excluded && (*excluded)[s]) continue;
    stack.push_back(s);
    c.comp[s] = ncomp;
    int size = 0;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++size;
      for (int i = adj.head[u]; i < adj.head[u + 1]; ++i) {
        const int w = adj.nbr[i];
        if (c.comp[w] != -1) continue;
        if (excluded && (*excluded)[w]) continue;
        c.comp[w] = ncomp;
        stack.push_back(w);
      }
    }
    c.sizes.push_back(size);
    ++ncomp;
  }
  std::sort(c.sizes.rbegin(), c.sizes.rend());
  return c;
}

}  // namespace skinlab
