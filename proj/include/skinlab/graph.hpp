#pragma once

#include <functional>
#include <vector>

#include "skinlab/types.hpp"

namespace skinlab {

// CSR adjacency over an edge list. Neighbor order is fixed by construction
// (sorted by target index) so all sweeps are deterministic.
struct Adjacency {
  std::vector<int> head;       // size V+1
  std::vector<int> nbr;        // neighbor vertex
  std::vector<double> len;     // edge length
  int vertex_count() const { return static_cast<int>(head.size()) - 1; }

  static Adjacency build(int vertex_count, const std::vector<Edge>& edges);
  static Adjacency build_weighted(int vertex_count, const std::vector<Edge>& edges,
                                  const std::function<double(const Edge&)>& weight);
};

struct DijkstraOptions {
  const std::vector<char>* allowed = nullptr;  // vertex mask; nullptr means all
  double radius = kInf;                        // do not settle beyond this distance
};

// Multi-source Dijkstra with per-source initial offsets. Ties are broken by
// (distance, vertex index). Unreached vertices get +inf.
std::vector<double> dijkstra(const Adjacency& adj, const std::vector<int>& sources,
                             const std::vector<double>& source_offsets,
                             const DijkstraOptions& opts = {});

std::vector<double> dijkstra(const Adjacency& adj, const std::vector<int>& sources,
                             const DijkstraOptions& opts = {});

// Single-source with parent tracking for path extraction.
struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<int> parent;  // -1 at sources / unreached

  std::vector<int> path_to(int target) const;  // vertex list source..target, empty if unreached
};

ShortestPathTree dijkstra_tree(const Adjacency& adj, const std::vector<int>& sources,
                               const DijkstraOptions& opts = {});

// Connected components, optionally excluding a vertex set.
// Returns component index per vertex (-1 for excluded) and sizes sorted descending.
struct Components {
  std::vector<int> comp;
  std::vector<int> sizes;
  bool connected(int active_vertices) const {
    return !sizes.empty() && sizes.front() == active_vertices;
  }
};

Components connected_components(const Adjacency& adj, const std::vector<char>* excluded = nullptr);

}  // namespace skinlab
