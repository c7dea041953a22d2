#include "fhnx/specfn.hpp"

#include "fhnx/core.hpp"

#include <array>
#include <cmath>
#include <string>

namespace fhnx {

namespace {

constexpr int kMaxAgmSteps = 32;
constexpr double kAgmTol = 1e-15;

void check_modulus(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw Error(ErrorKind::ModulusOutOfRange,
                "modulus k=" + std::to_string(k) + " outside [0, 1]");
  }
}

}  // namespace

JacobiTriple jacobi_elliptic(double z, double k) {
  check_modulus(k);
  if (k == 1.0) {
    const double sech = 1.0 / std::cosh(z);
    return {std::tanh(z), sech, sech};
  }

  // Descending AGM: a_{n+1} = (a+b)/2, b_{n+1} = sqrt(ab), c_{n+1} = (a-b)/2.
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  int n = 0;
  while (std::abs(c[n]) >= kAgmTol) {
    if (n == kMaxAgmSteps) {
      throw Error(ErrorKind::NoConvergence,
                  "AGM descent did not converge for k=" + std::to_string(k));
    }
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  // Ascend: phi_{n-1} = (phi_n + asin(c_n / a_n * sin(phi_n))) / 2.
  double phi = std::ldexp(a[n] * z, n);
  for (int i = n; i >= 1; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2 has no cancellation near |sn| = 1.
  const double kp2 = (1.0 - k) * (1.0 + k);
  return {sn, cn, std::sqrt(kp2 + k * k * cn * cn)};
}

double jacobi_sn(double z, double modulus_k) { return jacobi_elliptic(z, modulus_k).sn; }

CnDn jacobi_cn_dn(double z, double modulus_k) {
  const JacobiTriple j = jacobi_elliptic(z, modulus_k);
  return {j.cn, j.dn};
}

double parameter_to_modulus(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorKind::ModulusOutOfRange, "parameter m=" + std::to_string(m) + " outside [0, 1]");
  }
  return std::sqrt(m);
}

}  // namespace fhnx
