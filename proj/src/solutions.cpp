#include "fhnx/solutions.hpp"

#include "fhnx/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fhnx {

// ---------------------------------------------------------------------------
// Cubic oracle

CubicRoots solve_depressed_cubic(double p, double q) {
  CubicRoots out;
  if (p == 0.0 && q == 0.0) {
    out.roots = {0.0};
    out.repeated = true;
    return out;
  }

  const double scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  std::vector<double> roots;
  if (std::abs(disc) <= 1e-14 * scale) {
    // one simple and one double root
    roots = {3.0 * q / p, -1.5 * q / p};
    out.repeated = true;
  } else if (disc > 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int j = 0; j < 3; ++j) {
      roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * j / 3.0));
    }
  } else if (p < 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = -3.0 * std::abs(q) / (p * m);
    roots.push_back(-std::copysign(1.0, q) * m * std::cosh(std::acosh(arg) / 3.0));
  } else {
    const double m = 2.0 * std::sqrt(p / 3.0);
    roots.push_back(-m * std::sinh(std::asinh(3.0 * q / (p * m)) / 3.0));
  }

  // Newton polish; exact roots are fixed points of the update.
  for (double& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const double f = (r * r + p) * r + q;
      const double df = 3.0 * r * r + p;
      if (df == 0.0) break;
      const double next = r - f / df;
      if (std::abs(((next * next + p) * next + q)) >= std::abs(f)) break;
      r = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    if (out.roots.empty() ||
        std::abs(r - out.roots.back()) > 1e-12 * std::max(1.0, std::abs(r))) {
      out.roots.push_back(r);
    }
  }
  return out;
}

FixedPointSet fixed_points(const Params& p) {
  // u (1 - 1/beta - u^2/3) = 0  <=>  u^3 - 3 (beta - 1)/beta u = 0
  const double coeff = -3.0 * (p.beta - 1.0) / p.beta;
  const CubicRoots cubic = solve_depressed_cubic(coeff, 0.0);
  FixedPointSet set;
  set.degenerate = cubic.repeated && coeff == 0.0;
  for (double u : cubic.roots) set.points.push_back({u, u / p.beta});
  return set;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

std::array<FamilyInfo, kFamilyCount> build_catalog() {
  return {{
      {FamilyTag::FixedPointZero, "FixedPointZero", "u = 0, v = 0", "all parameters", {}, true},
      {FamilyTag::FixedPointPlus, "FixedPointPlus",
       "u = sqrt(3) sqrt(beta-1) / sqrt(beta), v = sqrt(3) sqrt(beta-1) / beta^(3/2)",
       "beta >= 1", {}, true},
      {FamilyTag::FixedPointMinus, "FixedPointMinus",
       "u = -sqrt(3) sqrt(beta-1) / sqrt(beta), v = -sqrt(3) sqrt(beta-1) / beta^(3/2)",
       "beta >= 1", {}, true},
      {FamilyTag::FixedPointCardanoA, "FixedPointCardanoA",
       "u = W^(1/3) / (2 beta) + 2 (beta-1) / W^(1/3), "
       "W = 4 beta^2 sqrt(-(4 beta^3 - 12 beta^2 + 12 beta - 4) / beta), v = u / beta",
       "beta != 1", {}, true},
      {FamilyTag::FixedPointCardanoB, "FixedPointCardanoB",
       "u = (S^(2/3) + beta^2 - beta) / (beta S^(1/3)), S = beta^2 sqrt(-(beta-1)^3 / beta), "
       "v = u / beta",
       "beta != 1", {}, true},
      {FamilyTag::TanhFrontPlus, "TanhFrontPlus",
       "u = a tanh(b (x + x0)), a = sqrt(3 (beta-1) / beta), b = sqrt((beta-1) / (2 D beta)), "
       "v = u / beta",
       "beta > 1", {"x0"}, true},
      {FamilyTag::TanhFrontMinus, "TanhFrontMinus",
       "u = -a tanh(b (x + x0)), a = sqrt(3 (beta-1) / beta), b = sqrt((beta-1) / (2 D beta)), "
       "v = u / beta",
       "beta > 1", {"x0"}, true},
      {FamilyTag::JacobiSnSteady, "JacobiSnSteady",
       "u = c2 sqrt(6 Q) sn((6 c1 D beta + sqrt(6 D beta (5 beta - 6)) x) sqrt(6 Q) / (6 D beta), "
       "k), Q = (beta-1) / (beta c2^2 + 5 beta - 6), k = c2 sqrt(5 beta^2 - 6 beta) / (5 beta - 6), "
       "v = u / beta (steady-state assumption)",
       "5 beta != 6, D beta (5 beta - 6) >= 0, Q >= 0, 0 <= k <= 1", {"c1", "c2"}, true},
      {FamilyTag::NonClassicalExp, "NonClassicalExp",
       "u = exp(-eps beta t / 3) (c1 exp(-k x) + c2 exp(k x)), "
       "k^2 = (9 - 6 beta - 2 eps beta^2) / (6 beta D), "
       "v = -(2 beta (c1 + c2 X^2)^3 - 9 E^2 X^2 (c1 + c2 X^2)) / (6 beta E^3 X^3), "
       "X = exp(k x), E = exp(eps beta t / 3)",
       "all parameters; c1 = c2 required when k is imaginary", {"c1", "c2"}, false},
  }};
}

}  // namespace

const std::array<FamilyInfo, kFamilyCount>& family_catalog() {
  static const auto catalog = build_catalog();
  return catalog;
}

const FamilyInfo& family_info(FamilyTag tag) {
  return family_catalog()[static_cast<std::size_t>(tag)];
}

std::string_view to_string(FamilyTag tag) { return family_info(tag).name; }

FamilyTag parse_family_tag(std::string_view name) {
  for (const auto& info : family_catalog()) {
    if (info.name == name) return info.tag;
  }
  throw Error(ErrorKind::ConfigError, "unknown family tag '" + std::string(name) + "'");
}

bool is_fixed_point(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::FixedPointZero:
    case FamilyTag::FixedPointPlus:
    case FamilyTag::FixedPointMinus:
    case FamilyTag::FixedPointCardanoA:
    case FamilyTag::FixedPointCardanoB: return true;
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Fixed-point closed forms

ClosedFormFixedPoint eval_fixed_point_closed_form(const Params& p, FamilyTag which) {
  const double beta = p.beta;
  const CScalar b(beta);
  ClosedFormFixedPoint out;

  switch (which) {
    case FamilyTag::FixedPointZero:
      out.u = 0.0;
      out.v = 0.0;
      break;
    case FamilyTag::FixedPointPlus:
    case FamilyTag::FixedPointMinus: {
      const double s = which == FamilyTag::FixedPointPlus ? 1.0 : -1.0;
      const CScalar root = std::sqrt(3.0) * std::sqrt(CScalar(beta - 1.0));
      out.u = s * root / std::sqrt(b);
      out.v = s * root / std::pow(beta, 1.5);
      break;
    }
    case FamilyTag::FixedPointCardanoA: {
      const double radicand =
          -(4.0 * beta * beta * beta - 12.0 * beta * beta + 12.0 * beta - 4.0) / beta;
      const CScalar cube = principal_cbrt(4.0 * std::sqrt(CScalar(radicand)) * beta * beta);
      if (std::abs(cube) == 0.0) {
        throw Error(ErrorKind::SingularParameter, "Cardano form is 0/0 at beta = 1");
      }
      const CScalar first = cube / (2.0 * beta);
      const CScalar second = 2.0 * (beta - 1.0) / cube;
      out.u = first + second;
      out.v = -(1.0 / beta) * (-first) + (1.0 / beta) * second;
      break;
    }
    case FamilyTag::FixedPointCardanoB: {
      const double cubed = beta - 1.0;
      const CScalar s =
          std::sqrt(CScalar(-(cubed * cubed * cubed) / beta)) * (beta * beta);
      const CScalar s13 = principal_cbrt(s);
      if (std::abs(s13) == 0.0) {
        throw Error(ErrorKind::SingularParameter, "Cardano form is 0/0 at beta = 1");
      }
      const CScalar s23 = principal_pow(s, 2.0 / 3.0);
      out.u = (s23 + beta * beta - beta) / (s13 * beta);
      out.v = -(-out.u) / beta;
      break;
    }
    default:
      throw Error(ErrorKind::Unsupported,
                  std::string(to_string(which)) + " is not an isolated fixed point");
  }

  out.real = is_effectively_real(out.u) && is_effectively_real(out.v);
  if (!out.real) return out;

  const FixedPointSet roots = fixed_points(p);
  const double u = out.u.real();
  for (std::size_t i = 0; i < roots.points.size(); ++i) {
    const FixedPoint& fp = roots.points[i];
    const double tol = 1e-9 * std::max(1.0, std::abs(fp.u));
    if (std::abs(u - fp.u) <= tol && std::abs(out.v.real() - fp.v) <= tol) {
      out.root_index = i;
      return out;
    }
  }
  throw Error(ErrorKind::BranchMismatch, std::string(to_string(which)) + " value " +
                                             std::to_string(u) + " matches no cubic root");
}

// ---------------------------------------------------------------------------
// Space-dependent steady states

Derivatives eval_tanh_front(const Params& p, int sign, double x0, double /*t*/, double x) {
  if (!(p.beta > 1.0)) throw Error(ErrorKind::OutOfDomain, "beta <= 1");
  const double s = sign >= 0 ? 1.0 : -1.0;
  const double a = std::sqrt(3.0) * std::sqrt(p.beta - 1.0) / std::sqrt(p.beta);
  const double b = std::sqrt(2.0) * std::sqrt((p.beta - 1.0) / (p.D * p.beta)) / 2.0;
  const double th = std::tanh(b * (x + x0));
  const double sech2 = 1.0 - th * th;
  Derivatives d;
  d.u = s * a * th;
  d.v = d.u / p.beta;
  d.u_x = s * a * b * sech2;
  d.u_xx = -2.0 * s * a * b * b * th * sech2;
  return d;
}

double jacobisn_modulus(const Params& p, double c2) {
  const double beta = p.beta;
  if (5.0 * beta - 6.0 == 0.0) throw Error(ErrorKind::SingularParameter, "5 beta = 6");
  const double rad = 5.0 * beta * beta - 6.0 * beta;
  if (rad < 0.0) throw Error(ErrorKind::OutOfDomain, "5 beta^2 - 6 beta < 0");
  return c2 * std::sqrt(rad) / (-6.0 + 5.0 * beta);
}

Derivatives eval_jacobisn_steady(const Params& p, double c1, double c2, double x) {
  const double beta = p.beta;
  const double D = p.D;
  double k = jacobisn_modulus(p, c2);
  if (k > 1.0 && k <= 1.0 + 1e-14) k = 1.0;  // rounding at the tanh limit
  if (!(k >= 0.0 && k <= 1.0)) {
    throw Error(ErrorKind::OutOfDomain, "sn modulus " + std::to_string(k) + " outside [0, 1]");
  }
  const double denom = beta * c2 * c2 + 5.0 * beta - 6.0;
  if (denom == 0.0) throw Error(ErrorKind::SingularParameter, "beta c2^2 + 5 beta - 6 = 0");
  const double q = (beta - 1.0) / denom;
  const double drift = D * beta * (-6.0 + 5.0 * beta);
  if (q < 0.0 || drift < 0.0) throw Error(ErrorKind::OutOfDomain, "negative radicand in sn profile");

  const double root_q = std::sqrt(6.0) * std::sqrt(q);
  const double amplitude = c2 * root_q;
  const double z = (6.0 * c1 * D * beta + std::sqrt(6.0) * std::sqrt(drift) * x) * root_q /
                   (6.0 * D * beta);
  const double dz_dx = std::sqrt(6.0) * std::sqrt(drift) * root_q / (6.0 * D * beta);

  const JacobiTriple j = jacobi_elliptic(z, k);
  Derivatives d;
  d.u = amplitude * j.sn;
  d.v = d.u / beta;
  d.u_x = amplitude * dz_dx * j.cn * j.dn;
  // (cn dn)' = -sn dn^2 - k^2 sn cn^2
  d.u_xx = amplitude * dz_dx * dz_dx * (-j.sn * j.dn * j.dn - k * k * j.sn * j.cn * j.cn);
  return d;
}

// ---------------------------------------------------------------------------
// Separable exponential family

Wavenumber nonclassical_k(const Params& p) {
  const double e = p.epsilon;
  const double b = p.beta;
  const double e3 = e * e * e;
  const double b2 = b * b;
  const double radicand = -2.0 * e3 * e * b2 * b2 - 6.0 * e3 * b2 * b + 9.0 * e3 * b2;
  const CScalar numer = std::sqrt(CScalar(radicand)) * std::sqrt(6.0);
  const CScalar denom = 6.0 * e * b * std::sqrt(CScalar(p.D)) * std::sqrt(CScalar(e * b));
  Wavenumber w;
  w.k = numer / denom;
  w.k_squared_reduced = (9.0 - 6.0 * b - 2.0 * e * b2) / (6.0 * b * p.D);
  const double scale = std::max(std::abs(w.k_squared_reduced), std::numeric_limits<double>::min());
  w.relative_gap = std::abs(w.k * w.k - w.k_squared_reduced) / scale;
  if (w.k_squared_reduced == 0.0) w.relative_gap = std::abs(w.k * w.k);
  return w;
}

NonClassicalAnsatz solved_ansatz(const Params& p, double c1, double c2) {
  return {-p.epsilon * p.beta / 3.0, 0.0, nonclassical_k(p).k, c1, c2};
}

Derivatives eval_nonclassical(const Params& p, double c1, double c2, double t, double x) {
  const double A = -p.epsilon * p.beta / 3.0;
  const CScalar k = nonclassical_k(p).k;
  const double decay = std::exp(A * t);

  // spatial factor c1 e^{-kx} + c2 e^{kx} and its x-derivative
  CScalar space;
  CScalar space_x;
  if (k.real() == 0.0) {
    // k = i q: (c1 + c2) cos(qx) + i (c2 - c1) sin(qx)
    const double q = k.imag();
    const double cs = std::cos(q * x);
    const double sn = std::sin(q * x);
    space = CScalar((c1 + c2) * cs, (c2 - c1) * sn);
    space_x = CScalar(-(c1 + c2) * q * sn, (c2 - c1) * q * cs);
  } else {
    const CScalar up = std::exp(k * x);
    const CScalar down = std::exp(-k * x);
    space = c1 * down + c2 * up;
    space_x = k * (c2 * up - c1 * down);
  }
  const double k2 = (k * k).real();

  Derivatives d;
  d.u = require_real(decay * space, "u");
  d.u_x = require_real(decay * space_x, "u_x");
  d.u_xx = k2 * d.u;
  d.u_t = A * d.u;
  d.u_tt = A * A * d.u;
  d.u_txx = A * k2 * d.u;

  const CScalar E(std::exp(p.epsilon * p.beta * t / 3.0));
  const CScalar X = std::exp(k * x);
  d.v = require_real(nonclassical_v_polynomial<CScalar>(p.beta, c1, c2, E, X), "v");
  // The polynomial factorises as v = -(2 beta u^3 - 9 u) / (6 beta), so
  // v_t = (3 / (2 beta) - u^2) u_t.
  d.v_t = (1.5 / p.beta - d.u * d.u) * d.u_t;
  return d;
}

CScalar F_exponent(const Params& p, double A, double B) {
  if (A == 0.0) throw Error(ErrorKind::SingularParameter, "A = 0");
  const double eb = p.epsilon * p.beta;
  if (eb + A == 0.0) throw Error(ErrorKind::SingularParameter, "eps beta + A = 0");
  const double e = p.epsilon;
  const double b = p.beta;
  const double A2 = A * A;
  const double A3 = A2 * A;
  const double radicand = A3 * b * e + A2 * A2 - A2 * b * e + B * B * b * e - A3 + A2 * e + A * B * B;
  return std::sqrt(CScalar(radicand)) /
         (A * std::sqrt(CScalar(p.D)) * std::sqrt(CScalar(eb + A)));
}

CScalar solve_F_ode(const Params& p, double A, double B, double c1, double c2, double x) {
  const CScalar s = F_exponent(p, A, B);
  return c1 * std::exp(s * x) + c2 * std::exp(-s * x);
}

// ---------------------------------------------------------------------------
// SolutionFamily

SolutionFamily::SolutionFamily(FamilyTag tag, const Params& p, const FamilyConstants& k,
                               Model model)
    : tag_(tag), params_(p), constants_(k), model_(model) {}

SolutionFamily SolutionFamily::make(FamilyTag tag, const Params& p, const FamilyConstants& k) {
  switch (tag) {
    case FamilyTag::FixedPointZero:
    case FamilyTag::FixedPointPlus:
    case FamilyTag::FixedPointMinus:
    case FamilyTag::FixedPointCardanoA:
    case FamilyTag::FixedPointCardanoB: {
      const ClosedFormFixedPoint cf = eval_fixed_point_closed_form(p, tag);
      if (!cf.real) {
        throw Error(ErrorKind::OutOfDomain,
                    std::string(to_string(tag)) + " is not real at beta=" + std::to_string(p.beta));
      }
      return SolutionFamily(tag, p, k, Constant{cf.u.real(), cf.v.real()});
    }
    case FamilyTag::TanhFrontPlus:
    case FamilyTag::TanhFrontMinus: {
      if (!(p.beta > 1.0)) throw Error(ErrorKind::OutOfDomain, "beta <= 1");
      return SolutionFamily(tag, p, k, Tanh{tag == FamilyTag::TanhFrontPlus ? 1 : -1});
    }
    case FamilyTag::JacobiSnSteady: {
      (void)eval_jacobisn_steady(p, k.c1, k.c2, 0.0);
      SolutionFamily fam(tag, p, k, JacobiSn{});
      fam.notes_.push_back("v = u/beta assumed from steadiness; no companion v is given");
      return fam;
    }
    case FamilyTag::NonClassicalExp: {
      const Wavenumber w = nonclassical_k(p);
      if (w.imaginary() && k.c1 != k.c2) {
        throw Error(ErrorKind::ComplexResult, "imaginary k requires c1 == c2 for a real u");
      }
      return SolutionFamily(tag, p, k, Exponential{});
    }
  }
  throw Error(ErrorKind::ConfigError, "unknown family tag");
}

Derivatives SolutionFamily::eval_derivs(double t, double x) const {
  return std::visit(
      [&](const auto& m) -> Derivatives {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Constant>) {
          Derivatives d;
          d.u = m.u;
          d.v = m.v;
          return d;
        } else if constexpr (std::is_same_v<M, Tanh>) {
          return eval_tanh_front(params_, m.sign, constants_.x0, t, x);
        } else if constexpr (std::is_same_v<M, JacobiSn>) {
          return eval_jacobisn_steady(params_, constants_.c1, constants_.c2, x);
        } else {
          return eval_nonclassical(params_, constants_.c1, constants_.c2, t, x);
        }
      },
      model_);
}

State SolutionFamily::eval(double t, double x) const {
  const Derivatives d = eval_derivs(t, x);
  return {d.u, d.v};
}

}  // namespace fhnx
