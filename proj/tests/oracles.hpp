#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "skinlab/types.hpp"

// Test-side oracles, independent of the library's assembly and solver paths.
namespace oracles {

// Smallest eigenvalue of the radial Hardy quotient on a truncated cone,
//   int (u'^2 + kappa^2 u^2 / r^2) r^{n-1} dr / int (alpha+kappa)^2 u^2 r^{n-3} dr,
// three-point discretization on the given radial grid, Dirichlet where
// clamped[i] is set. n is the cone's surface dimension.
inline double radial_hardy_oracle(const std::vector<double>& radii,
                                  const std::vector<char>& clamped, double kappa, double alpha,
                                  int n) {
  const int m = static_cast<int>(radii.size());
  std::vector<int> map(m, -1);
  std::vector<int> inv;
  for (int i = 0; i < m; ++i)
    if (!clamped[i]) {
      map[i] = static_cast<int>(inv.size());
      inv.push_back(i);
    }
  const int f = static_cast<int>(inv.size());
  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(f, f);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(f, f);

  // Gradient term over segments (geometric-midpoint weight).
  for (int i = 0; i + 1 < m; ++i) {
    const double dr = radii[i + 1] - radii[i];
    const double w = std::pow(std::sqrt(radii[i] * radii[i + 1]), n - 1) / dr;
    const int a = map[i], b = map[i + 1];
    if (a >= 0) N(a, a) += w;
    if (b >= 0) N(b, b) += w;
    if (a >= 0 && b >= 0) {
      N(a, b) -= w;
      N(b, a) -= w;
    }
  }
  // Zero-order terms with half-cell lumping.
  for (int i = 0; i < m; ++i) {
    if (map[i] < 0) continue;
    const double left = i > 0 ? radii[i] - radii[i - 1] : 0.0;
    const double right = i + 1 < m ? radii[i + 1] - radii[i] : 0.0;
    const double cell = 0.5 * (left + right);
    const double rpow = std::pow(radii[i], n - 3);
    N(map[i], map[i]) += kappa * kappa * rpow * cell;
    D(map[i], map[i]) += (alpha + kappa) * (alpha + kappa) * rpow * cell;
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(N, D);
  return es.eigenvalues()(0);
}

}  // namespace oracles
