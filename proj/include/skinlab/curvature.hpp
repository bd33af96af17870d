#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "skinlab/types.hpp"

namespace skinlab {

// Twice-differentiable closed-form parametrization of a codimension-one patch:
// R^d -> R^{d+1}, evaluated pointwise.
struct Parametrization {
  int param_dim = 0;
  int ambient_dim = 0;
  std::function<void(const double* u, double* x)> eval;
};

// |A| at a parameter point via finite-difference fundamental forms and the
// shape operator, |A|^2 = tr((g^{-1} h)^2). The step size is swept and the
// stablest consecutive pair of estimates is returned.
// Throws ComputeError when the induced metric is ill-conditioned at the point.
double second_fundamental_oracle(const Parametrization& f, const std::vector<double>& point);

// Charts used by the generators and tests.
Parametrization lawson_cone_chart(int p, int q);   // (rho, theta_1..p, phi_1..q)
Parametrization catenoid_chart();                  // (u, v)
Parametrization sphere_chart(int n, double radius);  // n angles
Parametrization plane_chart();                     // (u, v) -> (u, v, 0)

// Minimality constants of the Lawson cone over S^p(a) x S^q(b).
inline double lawson_a(int p, int q) { return std::sqrt(double(p) / (p + q)); }
inline double lawson_b(int p, int q) { return std::sqrt(double(q) / (p + q)); }

// Generic interior point of the S^p spherical chart, away from pole loci.
std::vector<double> generic_sphere_angles(int p);

}  // namespace skinlab
