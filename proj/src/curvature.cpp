#include "skinlab/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace skinlab {

namespace {

// Unit S^p point from p spherical angles.
void sphere_point(const double* ang, int p, double* out) {
  double s = 1.0;
  for (int i = 0; i < p; ++i) {
    out[i] = s * std::cos(ang[i]);
    s *= std::sin(ang[i]);
  }
  out[p] = s;
}

double estimate_once(const Parametrization& f, const std::vector<double>& u0, double h) {
  const int d = f.param_dim;
  const int m = f.ambient_dim;
  auto eval = [&](const std::vector<double>& u) {
    Eigen::VectorXd x(m);
    f.eval(u.data(), x.data());
    return x;
  };
  std::vector<double> u = u0;
  const Eigen::VectorXd x0 = eval(u);

  Eigen::MatrixXd jac(m, d);
  for (int i = 0; i < d; ++i) {
    u = u0;
    u[i] += h;
    const Eigen::VectorXd xp = eval(u);
    u[i] = u0[i] - h;
    const Eigen::VectorXd xm = eval(u);
    jac.col(i) = (xp - xm) / (2.0 * h);
  }

  const Eigen::MatrixXd g = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible() || lu.rcond() < 1e-10)
    throw ComputeError("second_fundamental_oracle: ill-conditioned metric at the point");

  // Unit normal: orthogonal complement of the tangent space (codimension one).
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(jac);
  const Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd nu = Q.col(m - 1);
  nu.normalize();

  Eigen::MatrixXd hh(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Eigen::VectorXd second(m);
      if (i == j) {
        u = u0;
        u[i] += h;
        const Eigen::VectorXd xp = eval(u);
        u[i] = u0[i] - h;
        const Eigen::VectorXd xm = eval(u);
        second = (xp - 2.0 * x0 + xm) / (h * h);
      } else {
        u = u0;
        u[i] += h;
        u[j] += h;
        const Eigen::VectorXd xpp = eval(u);
        u[j] = u0[j] - h;
        const Eigen::VectorXd xpm = eval(u);
        u[i] = u0[i] - h;
        const Eigen::VectorXd xmm = eval(u);
        u[j] = u0[j] + h;
        const Eigen::VectorXd xmp = eval(u);
        second = (xpp - xpm - xmp + xmm) / (4.0 * h * h);
      }
      hh(i, j) = hh(j, i) = second.dot(nu);
    }
  }

  const Eigen::MatrixXd shape = lu.solve(hh);
  const double a2 = (shape * shape).trace();
  return std::sqrt(std::max(a2, 0.0));
}

}  // namespace

double second_fundamental_oracle(const Parametrization& f, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != f.param_dim)
    throw InvalidArgument("second_fundamental_oracle: point dimension mismatch");
  const double steps[] = {3e-3, 1e-3, 3e-4, 1e-4, 3e-5};
  double best = 0.0, best_gap = kInf, prev = kInf;
  for (double h : steps) {
    const double val = estimate_once(f, point, h);
    if (prev != kInf) {
      const double gap = std::abs(val - prev);
      if (gap < best_gap) {
        best_gap = gap;
        best = 0.5 * (val + prev);
      }
    }
    prev = val;
  }
  return best;
}

Parametrization lawson_cone_chart(int p, int q) {
  const double a = lawson_a(p, q), b = lawson_b(p, q);
  Parametrization f;
  f.param_dim = 1 + p + q;
  f.ambient_dim = p + q + 2;
  f.eval = [p, q, a, b](const double* u, double* x) {
    const double rho = u[0];
    std::vector<double> up(p + 1), wq(q + 1);
    sphere_point(u + 1, p, up.data());
    sphere_point(u + 1 + p, q, wq.data());
    for (int k = 0; k <= p; ++k) x[k] = rho * a * up[k];
    for (int k = 0; k <= q; ++k) x[p + 1 + k] = rho * b * wq[k];
  };
  return f;
}

Parametrization catenoid_chart() {
  Parametrization f;
  f.param_dim = 2;
  f.ambient_dim = 3;
  f.eval = [](const double* u, double* x) {
    x[0] = std::cosh(u[1]) * std::cos(u[0]);
    x[1] = std::cosh(u[1]) * std::sin(u[0]);
    x[2] = u[1];
  };
  return f;
}

Parametrization sphere_chart(int n, double radius) {
  Parametrization f;
  f.param_dim = n;
  f.ambient_dim = n + 1;
  f.eval = [n, radius](const double* u, double* x) {
    sphere_point(u, n, x);
    for (int k = 0; k <= n; ++k) x[k] *= radius;
  };
  return f;
}

Parametrization plane_chart() {
  Parametrization f;
  f.param_dim = 2;
  f.ambient_dim = 3;
  f.eval = [](const double* u, double* x) {
    x[0] = u[0];
    x[1] = u[1];
    x[2] = 0.0;
  };
  return f;
}

std::vector<double> generic_sphere_angles(int p) {
  std::vector<double> ang(p);
  for (int i = 0; i < p; ++i) ang[i] = 0.9 + 0.13 * i;
  return ang;
}

}  // namespace skinlab
