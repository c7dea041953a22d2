#pragma once

// Reference computations that share no code with the library.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

/// Incomplete elliptic integral of the first kind, composite Gauss-Legendre
/// (5 nodes per panel).
inline double elliptic_f(double phi, double k) {
  static const double xg[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double wg[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  const int panels = 400;
  const double h = phi / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) {
      const double th = mid + 0.5 * h * xg[i];
      const double s = std::sin(th);
      sum += wg[i] / std::sqrt(1.0 - k * k * s * s);
    }
  }
  return 0.5 * h * sum;
}

/// sn(z, k) for 0 <= k < 1: bisection on the monotone amplitude, then Newton.
inline double sn_quadrature(double z, double k) {
  const double target = std::abs(z);
  double lo = 0.0;
  double hi = 1.0;
  while (elliptic_f(hi, k) < target) hi *= 2.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (elliptic_f(mid, k) < target ? lo : hi) = mid;
  }
  double phi = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double s = std::sin(phi);
    phi -= (elliptic_f(phi, k) - target) * std::sqrt(1.0 - k * k * s * s);
  }
  return z < 0 ? -std::sin(phi) : std::sin(phi);
}

/// Maclaurin series of sn through z^9.
inline double sn_series(double z, double k) {
  const double m = k * k;
  const double z2 = z * z;
  const double c3 = (1 + m) / 6.0;
  const double c5 = (1 + 14 * m + m * m) / 120.0;
  const double c7 = (1 + 135 * m + 135 * m * m + m * m * m) / 5040.0;
  const double c9 =
      (1 + 1228 * m + 5478 * m * m + 1228 * m * m * m + m * m * m * m) / 362880.0;
  return z * (1 - c3 * z2 + c5 * z2 * z2 - c7 * z2 * z2 * z2 + c9 * z2 * z2 * z2 * z2);
}

/// Real roots of x^3 + a x^2 + b x + c via companion-matrix eigenvalues.
inline std::vector<double> cubic_real_roots(double a, double b, double c, double tol = 1e-7) {
  Eigen::Matrix3d comp;
  comp << 0, 0, -c, 1, 0, -b, 0, 1, -a;
  Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
  std::vector<double> out;
  for (int i = 0; i < 3; ++i) {
    const std::complex<double> r = es.eigenvalues()(i);
    if (std::abs(r.imag()) < tol) out.push_back(r.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Richardson-extrapolated central difference of order n (1 or 2).
inline double derivative(const std::function<double(double)>& f, double x, int order,
                         double h) {
  auto d = [&](double s) {
    if (order == 1) return (f(x + s) - f(x - s)) / (2 * s);
    return (f(x + s) - 2 * f(x) + f(x - s)) / (s * s);
  };
  return (4 * d(h / 2) - d(h)) / 3;
}

}  // namespace oracle
