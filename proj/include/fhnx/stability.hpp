#pragma once

#include "fhnx/core.hpp"
#include "fhnx/solutions.hpp"

#include <Eigen/Dense>

#include <array>
#include <string_view>
#include <vector>

namespace fhnx {

enum class Classification {
  StableNode,
  StableSpiral,
  UnstableNode,
  UnstableSpiral,
  Saddle,
  CenterDegenerate,
};

std::string_view to_string(Classification c);

/// Values of |det| or |disc| below this are labelled CenterDegenerate.
inline constexpr double kDegenerateTol = 1e-12;

/// Linearisation of the reaction-diffusion system about (u*, u*/beta) for a
/// perturbation e^{sigma t + i k x}:
///   [[1 - u*^2 - D k^2, -1], [eps, -eps beta]].
Eigen::Matrix2d jacobian_at(const Params& p, double u_star, double k);

struct Spectrum {
  std::array<CScalar, 2> eigenvalues;  // eigenvalues[0] has the larger real part
  double trace = 0.0;
  double det = 0.0;
  double disc = 0.0;  // trace^2 - 4 det
  Classification classification = Classification::CenterDegenerate;

  double max_real() const { return eigenvalues[0].real(); }
};

/// Closed-form 2x2 eigenvalues and the trace-determinant verdict.
Spectrum classify(const Eigen::Matrix2d& jacobian);
Spectrum classify(const Params& p, double u_star, double k);

struct DispersionSample {
  double k;
  std::array<CScalar, 2> sigma;
  double max_real() const { return sigma[0].real(); }
};

struct DispersionCurve {
  std::vector<DispersionSample> samples;
  /// Wavenumbers where max Re sigma changes sign, bisected to 1e-8.
  std::vector<double> crossings;
};

DispersionCurve dispersion_sweep(const Params& p, double u_star, double k_max, int n);

struct StabilityReport {
  double u_star = 0.0;
  double v_star = 0.0;
  double k = 0.0;
  Eigen::Matrix2d jacobian;
  Spectrum spectrum;
  DispersionCurve dispersion;
};

/// Full report at an isolated fixed point. Unsupported when u_star is not a
/// root of the fixed-point cubic.
StabilityReport stability_report(const Params& p, double u_star, double k_max, int n);

/// Unsupported for space-dependent or time-dependent families.
StabilityReport stability_report(const SolutionFamily& fam, double k_max, int n);

}  // namespace fhnx
