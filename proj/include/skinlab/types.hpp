#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skinlab {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Invalid input (bad parameters, mismatched objects, schema errors).
class InvalidArgument : public std::runtime_error {
 public:
  explicit InvalidArgument(const std::string& what) : std::runtime_error(what) {}
};

// A computation that cannot proceed on the given data (empty annulus,
// disconnected constrained subgraph, non-convergence, ...).
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

struct Edge {
  int u = 0;
  int v = 0;
  double len = 0.0;
};

// Vertex-weighted metric graph discretizing a hypersurface H \ Sigma.
// The excised singular region is represented by the sigma_proxy ring:
// boundary vertices adjacent to the excision, each carrying the analytic
// distance from that vertex to Sigma as an offset.
struct DiscreteHypersurface {
  std::string kind;                 // hyperplane | lawson_cone(p,q) | link(p,q) | catenoid | loaded
  int dim = 0;                      // ambient dimension (surface dimension is dim-1)
  std::vector<double> positions;    // flattened, dim doubles per vertex
  std::vector<Edge> edges;
  std::vector<double> a_norm;       // |A| per vertex, >= 0, units 1/length
  std::vector<std::pair<int, double>> sigma_proxy;  // (vertex, offset to Sigma)
  std::vector<int> outer_boundary;  // truncation ring(s), excluded from sup/inf statistics
  double scale = 1.0;               // cumulative rescaling

  int vertex_count() const { return static_cast<int>(a_norm.size()); }
  int surface_dim() const { return dim - 1; }

  const double* position(int v) const { return positions.data() + static_cast<size_t>(v) * dim; }

  // Euclidean norm of the position; equals the cone radius on cone meshes.
  double radius(int v) const;

  bool is_singular() const { return !sigma_proxy.empty(); }

  // Vertices excluded from sup/inf statistics (the truncation ring).
  std::vector<char> excluded_mask() const;
  std::vector<char> sigma_proxy_mask() const;

  void validate() const;  // basic structural invariants; throws InvalidArgument
};

struct ScalarField {
  std::string surface_id;
  std::string name;
  std::vector<double> values;
};

enum class Provenance { Exact, Oracle, Smoothed, Combined, Restricted };

std::string provenance_tag(Provenance p, double combine_c = 0.0);

// Per-vertex skin transform <A>_alpha together with its reciprocal
// delta = 1/<A> (the <A>-distance; +inf where the transform vanishes).
struct SkinField {
  std::string surface_id;
  double alpha = 1.0;
  Provenance provenance = Provenance::Exact;
  double combine_c = 0.0;          // only meaningful for Provenance::Combined
  std::vector<double> values;      // <A>_alpha, units 1/length
  std::vector<double> delta;       // 1/values, +inf sentinel on totally geodesic parts
  double lipschitz_bound = 0.0;    // certified discrete Lipschitz constant of delta

  int vertex_count() const { return static_cast<int>(values.size()); }
};

struct AxiomReport {
  bool s1_pass = false;
  bool s2_pass = false;
  double s2_scaling_residual = 0.0;
  double s4_lipschitz_constant = 0.0;
  double s5_scaling_residual = 0.0;
  std::string notes;
};

}  // namespace skinlab
