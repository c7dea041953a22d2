#pragma once

namespace fhnx {

/// sn, cn and dn evaluated together from one AGM descent.
struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// Jacobi elliptic functions of real argument z and modulus k in [0, 1].
///
/// The second argument is the modulus k, not the parameter m = k^2 (use
/// modulus_to_parameter/parameter_to_modulus when interfacing with code that
/// uses the other convention). Computed by the descending Landen (AGM)
/// transformation; k == 1 is handled by the closed forms tanh/sech.
///
/// Throws ModulusOutOfRange for k outside [0, 1] and NoConvergence if the
/// AGM sequence has not collapsed after 32 steps.
JacobiTriple jacobi_elliptic(double z, double modulus_k);

double jacobi_sn(double z, double modulus_k);

struct CnDn {
  double cn;
  double dn;
};
CnDn jacobi_cn_dn(double z, double modulus_k);

constexpr double modulus_to_parameter(double k) { return k * k; }
double parameter_to_modulus(double m);

}  // namespace fhnx
