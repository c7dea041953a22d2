#pragma once

#include "fhnx/core.hpp"
#include "fhnx/solutions.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fhnx {

enum class Method { Analytic, FiniteDifference };

std::string_view to_string(Method m);

/// Sup and Euclidean norms of a residual field with the location of the
/// largest entry. l2 = sqrt(sum r^2), so l2 <= linf * sqrt(samples).
struct ResidualNorms {
  double linf = 0.0;
  double l2 = 0.0;
  double worst_t = 0.0;
  double worst_x = 0.0;
};

struct ResidualReport {
  std::string family;
  Method method = Method::Analytic;
  ResidualNorms fast;  // u_t - D u_xx + v - g(u)
  ResidualNorms slow;  // v_t - eps (-beta v + c + u)
  std::size_t sample_count = 0;
  std::vector<std::string> notes;

  /// Location of the largest residual over both equations.
  std::array<double, 2> worst_point() const;
};

/// Residual of the single third-order equation obtained by eliminating v.
struct ThirdOrderReport {
  std::string family;
  Method method = Method::Analytic;
  ResidualNorms norms;
  std::size_t sample_count = 0;
};

/// Steps of the finite-difference oracle: a quarter of the grid spacing in
/// each direction (the time step falls back to the space step on a single
/// time level).
struct FdSteps {
  double h_t;
  double h_x;
};

FdSteps oversampled_steps(const Grid& grid);

/// Derivatives of a family from 5-point central stencils on its point
/// values. u_txx nests the time stencil over the space stencil.
Derivatives fd_derivatives(const SolutionFamily& fam, double t, double x, FdSteps h);

double fast_residual(const Params& p, const Derivatives& d);
double slow_residual(const Params& p, const Derivatives& d);
double third_order_residual(const Params& p, const Derivatives& d);

ResidualReport residual_system(const SolutionFamily& fam, const Params& p, const Grid& grid,
                               Method method);

ThirdOrderReport residual_third_order(const SolutionFamily& fam, const Params& p,
                                      const Grid& grid, Method method = Method::Analytic);

/// Max |value| of the four constraints produced by the ansatz
/// u = (e^{At} F A - B) / A, in order:
///   cubic      -eps beta F^3 A^3 - 3 F^3 A^4
///   quadratic  3 eps beta F^2 B A^2 + 6 F^2 B A^3
///   linear     the F'' / F equation
///   free       -3 eps beta B A^2 + eps beta B^3 + 3 eps B A^2
struct ConstraintResiduals {
  static constexpr std::array<std::string_view, 4> kNames{"cubic", "quadratic", "linear", "free"};
  std::array<double, 4> max_abs{};
};

/// SingularParameter for A == 0. F and F_xx must have equal length.
ConstraintResiduals check_ansatz_constraints(const Params& p, double A, double B,
                                             std::span<const CScalar> F,
                                             std::span<const CScalar> F_xx);

/// The constraint system on sampled F(x) = c1 e^{sx} + c2 e^{-sx}, once with
/// F'' from central differences of the samples and once with F'' = s^2 F.
struct AnsatzCheck {
  ConstraintResiduals as_printed;
  ConstraintResiduals reduced;
  CScalar exponent;
};

AnsatzCheck check_ansatz_on_nodes(const Params& p, double A, double B, double c1, double c2,
                                  std::span<const double> xs);

/// sup |u_t - (A u + B)| over the grid.
double invariant_surface_check(const SolutionFamily& fam, double A, double B, const Grid& grid);

}  // namespace fhnx
