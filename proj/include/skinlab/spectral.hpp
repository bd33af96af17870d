#pragma once

#include <vector>

#include "skinlab/surface.hpp"
#include "skinlab/types.hpp"

namespace skinlab {

enum class OuterCondition { Dirichlet, Neumann };

// Discrete counterparts of the Hardy-quotient integrands:
//   N(f) = sum_edges w_e (f(u)-f(v))^2 + sum_v m_v a_norm(v)^2 f(v)^2
//   D(f) = sum_v den_diag(v) f(v)^2
// Vertex masses are lumped dual-cell volumes estimated from incident edge
// lengths, m_v = mean over incident edges of len^n (n = surface dimension),
// edge masses are endpoint averages and w_e = m_e / len^2; first-order
// consistent with the gradient integral and exactly scale-covariant
// (N and D both scale by lambda^{n-2}).
struct QuadraticForms {
  std::string surface_id;
  std::vector<Edge> edges;          // len field reused as conductance w_e
  std::vector<double> mass;         // m_v
  std::vector<double> num_diag;     // m_v a_norm^2
  std::vector<double> den_diag;     // m_v <A>^2 (or m_v / dist^2)
  std::vector<char> dirichlet;      // clamped vertices
  double band = 0.0;

  int vertex_count() const { return static_cast<int>(mass.size()); }
  int free_count() const;
  double numerator(const std::vector<double>& f) const;
  double denominator(const std::vector<double>& f) const;
  double rayleigh(const std::vector<double>& f) const;
};

// Dirichlet set: vertices within graph distance `band` of the sigma proxy
// ring, plus the outer boundary when outer = Dirichlet.
QuadraticForms assemble_forms(const DiscreteHypersurface& h, const SkinField& skin, double band,
                              OuterCondition outer);

struct SpectralReport {
  double lambda_min = 0.0;
  int iterations = 0;
  double residual = kInf;   // ||N v - lambda D v||_{D^-1} / ||v||_D
  bool converged = false;
  double band = 0.0;
  int refinement_level = 0;
};

// Smallest generalized eigenvalue of (N, D) on the free vertices via inverse
// iteration with the deterministic all-ones start (D-projected).
SpectralReport hardy_constant(const QuadraticForms& forms, double tol = 1e-10,
                              int max_iterations = 800);

// Same solver with denominator weight 1/dist(.,Sigma)^2.
SpectralReport hardy_dist_variant(const DiscreteHypersurface& h, double band,
                                  OuterCondition outer = OuterCondition::Dirichlet);

// Smallest eigenvalue of (N, D) restricted to the graph ball of radius
// mu * alpha * delta(center) with natural (free) boundary.
double neumann_ball_eigenvalue(const DiscreteHypersurface& h, const SkinField& skin, int center,
                               double mu);

// Conformal path metrics: edge weight = len * (rho(u)+rho(v))/2 for a vertex
// density rho; skin metric uses rho = <A>, the quasi-hyperbolic metric uses
// rho = 1/dist(.,Sigma) (rejected on regular surfaces).
std::vector<double> skin_metric_distances(const DiscreteHypersurface& h, const SkinField& skin,
                                          const std::vector<std::pair<int, int>>& pairs);
std::vector<double> quasi_hyperbolic_distances(const DiscreteHypersurface& h,
                                               const std::vector<std::pair<int, int>>& pairs);

// Full pairwise distance matrices over a sample vertex set.
std::vector<std::vector<double>> skin_metric_matrix(const DiscreteHypersurface& h,
                                                    const SkinField& skin,
                                                    const std::vector<int>& samples);
std::vector<std::vector<double>> quasi_hyperbolic_matrix(const DiscreteHypersurface& h,
                                                         const std::vector<int>& samples);

// Deterministic low-discrepancy sample of non-excluded vertices.
std::vector<int> sample_vertices(const DiscreteHypersurface& h, int count);

// Max four-point condition defect (Gromov products) over sampled quadruples.
// When C(s,4) exceeds the budget the sample set is decimated deterministically.
double four_point_delta(const std::vector<std::vector<double>>& dist, long long quadruple_budget);

}  // namespace skinlab
