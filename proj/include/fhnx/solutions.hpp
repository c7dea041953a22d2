#pragma once

#include "fhnx/core.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fhnx {

// ---------------------------------------------------------------------------
// Cubic oracle and isolated fixed points

/// Real roots of the depressed cubic x^3 + p x + q = 0, ascending, each
/// listed once. `distinct` counts them; `repeated` is set when the
/// discriminant vanishes (double or triple root).
struct CubicRoots {
  std::vector<double> roots;
  bool repeated = false;
};

CubicRoots solve_depressed_cubic(double p, double q);

struct FixedPoint {
  double u;
  double v;
};

struct FixedPointSet {
  std::vector<FixedPoint> points;  // ascending in u
  bool degenerate = false;         // beta == 1, triple root at the origin
};

/// Spatially constant steady states: real roots of u (1 - 1/beta - u^2/3) = 0
/// from the trigonometric/Cardano cubic solver, paired with v = u / beta.
FixedPointSet fixed_points(const Params& p);

// ---------------------------------------------------------------------------
// Solution catalog

enum class FamilyTag {
  FixedPointZero,
  FixedPointPlus,
  FixedPointMinus,
  FixedPointCardanoA,
  FixedPointCardanoB,
  TanhFrontPlus,
  TanhFrontMinus,
  JacobiSnSteady,
  NonClassicalExp,
};

inline constexpr std::size_t kFamilyCount = 9;

struct FamilyInfo {
  FamilyTag tag;
  std::string_view name;
  std::string_view formula;
  std::string_view domain;
  std::vector<std::string_view> constants;  // names of the family constants
  bool steady;
};

const std::array<FamilyInfo, kFamilyCount>& family_catalog();
const FamilyInfo& family_info(FamilyTag tag);
std::string_view to_string(FamilyTag tag);
/// Throws ConfigError for an unknown name.
FamilyTag parse_family_tag(std::string_view name);
bool is_fixed_point(FamilyTag tag);

struct FamilyConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double x0 = 0.0;
};

struct State {
  double u = 0.0;
  double v = 0.0;
};

/// Point values plus every derivative the residual operators consume.
struct Derivatives {
  double u = 0.0;
  double v = 0.0;
  double u_t = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
  double v_t = 0.0;
  double u_tt = 0.0;
  double u_txx = 0.0;
};

// ---------------------------------------------------------------------------
// Closed-form evaluators

/// The literal radical expressions for the isolated fixed points, evaluated
/// with principal branches. `root_index` is the matching entry of
/// fixed_points(p).points when the value is effectively real.
struct ClosedFormFixedPoint {
  CScalar u;
  CScalar v;
  bool real = false;
  std::optional<std::size_t> root_index;
};

/// Throws BranchMismatch when an effectively real value matches no cubic
/// root, SingularParameter for the Cardano forms at beta == 1, Unsupported
/// for non fixed-point tags.
ClosedFormFixedPoint eval_fixed_point_closed_form(const Params& p, FamilyTag which);

/// u = sign * a tanh(b (x + x0)), v = u / beta, with a^2 = 3 (beta-1)/beta
/// and b^2 = (beta-1) / (2 D beta). OutOfDomain for beta <= 1.
Derivatives eval_tanh_front(const Params& p, int sign, double x0, double t, double x);

/// Group-invariant steady state u = P sn(lambda x + phi, k) with v = u / beta
/// taken from steadiness.
Derivatives eval_jacobisn_steady(const Params& p, double c1, double c2, double x);

/// Modulus of the steady sn profile, c2 sqrt(5 beta^2 - 6 beta) / (5 beta - 6).
double jacobisn_modulus(const Params& p, double c2);

/// Wavenumber of the separable exponential solution, evaluated from the
/// radical form with principal branches and, independently, from the reduced
/// identity k^2 = (9 - 6 beta - 2 eps beta^2) / (6 beta D).
struct Wavenumber {
  CScalar k;
  double k_squared_reduced;
  double relative_gap;  // |k*k - k2| / max(|k2|, tiny)
  bool imaginary() const noexcept { return k.real() == 0.0 && k.imag() != 0.0; }
};

Wavenumber nonclassical_k(const Params& p);

/// Coefficients of the conditional-symmetry ansatz u = (e^{At} F(x) A - B) / A.
struct NonClassicalAnsatz {
  double A;
  double B;
  CScalar k;
  double c1;
  double c2;
};

/// The solved branch A = -eps beta / 3, B = 0.
NonClassicalAnsatz solved_ansatz(const Params& p, double c1, double c2);

/// Slow variable of the exponential family written as the literal polynomial
/// in E = e^{eps beta t / 3} and X = e^{kx}.
template <class Scalar>
Scalar nonclassical_v_polynomial(double beta, double c1, double c2, const Scalar& E,
                                 const Scalar& X) {
  const Scalar X2 = X * X;
  const Scalar X3 = X2 * X;
  const Scalar X4 = X2 * X2;
  const Scalar X6 = X3 * X3;
  const Scalar E2 = E * E;
  const Scalar E3 = E2 * E;
  const Scalar bracket = 2.0 * X6 * (c2 * c2 * c2) * beta + 6.0 * X4 * c1 * (c2 * c2) * beta -
                         9.0 * X4 * E2 * c2 + 6.0 * X2 * (c1 * c1) * c2 * beta -
                         9.0 * X2 * E2 * c1 + 2.0 * (c1 * c1 * c1) * beta;
  return -bracket / (6.0 * beta * E3 * X3);
}

/// u = e^{-eps beta t/3} (c1 e^{-kx} + c2 e^{kx}) and its companion v.
/// Throws ComplexResult when u or v is not effectively real at (t, x).
Derivatives eval_nonclassical(const Params& p, double c1, double c2, double t, double x);

/// v recovered from the fast equation, D u_xx - u_t + g(u).
inline double v_from_fast_equation(const Params& p, const Derivatives& d) {
  return p.D * d.u_xx - d.u_t + g(d.u);
}

/// Exponent s of F(x) = c1 e^{s x} + c2 e^{-s x} for general A, B.
/// SingularParameter when A == 0 or eps beta + A == 0.
CScalar F_exponent(const Params& p, double A, double B);

CScalar solve_F_ode(const Params& p, double A, double B, double c1, double c2, double x);

// ---------------------------------------------------------------------------

/// A catalog entry bound to concrete parameters. Domain checks run at
/// construction, so a built family evaluates everywhere.
class SolutionFamily {
 public:
  static SolutionFamily make(FamilyTag tag, const Params& p, const FamilyConstants& k = {});

  FamilyTag tag() const noexcept { return tag_; }
  std::string_view name() const noexcept { return to_string(tag_); }
  const Params& params() const noexcept { return params_; }
  const FamilyConstants& constants() const noexcept { return constants_; }
  bool steady() const noexcept { return family_info(tag_).steady; }

  /// Standing assumptions attached to every report for this family.
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  State eval(double t, double x) const;
  Derivatives eval_derivs(double t, double x) const;

 private:
  struct Constant {
    double u;
    double v;
  };
  struct Tanh {
    int sign;
  };
  struct JacobiSn {};
  struct Exponential {};
  using Model = std::variant<Constant, Tanh, JacobiSn, Exponential>;

  SolutionFamily(FamilyTag tag, const Params& p, const FamilyConstants& k, Model model);

  FamilyTag tag_;
  Params params_;
  FamilyConstants constants_;
  Model model_;
  std::vector<std::string> notes_;
};

}  // namespace fhnx
