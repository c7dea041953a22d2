#include "fhnx/solutions.hpp"
#include "fhnx/specfn.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fhnx;

namespace {

const Params kFig = validate_params(1.03, 0.3, 2.0, 0.0);

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an fhnx::Error");
  return ErrorKind::ConfigError;
}

double steady_residual(const Params& p, const Derivatives& d) {
  return p.D * d.u_xx - d.v + g(d.u);
}

}  // namespace

TEST_CASE("depressed cubic against companion-matrix oracle") {
  for (auto [p, q] : {std::pair{-3.0, 0.0}, {-1.5, 0.0}, {1.0, 0.0}, {-3.0, 1.0}, {2.0, -5.0},
                      {-3.0, 2.0}, {0.0, 0.0}, {-6.0, 4.0}}) {
    const CubicRoots got = solve_depressed_cubic(p, q);
    std::vector<double> want = oracle::cubic_real_roots(0.0, p, q, 1e-6);
    want.erase(std::unique(want.begin(), want.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-6; }),
               want.end());
    REQUIRE(got.roots.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got.roots[i] == doctest::Approx(want[i]));
  }
  CHECK(solve_depressed_cubic(-3.0, 2.0).repeated);
  CHECK(solve_depressed_cubic(0.0, 0.0).repeated);
}

TEST_CASE("fixed points") {
  SUBCASE("beta = 2 gives three roots") {
    const FixedPointSet s = fixed_points(kFig);
    REQUIRE(s.points.size() == 3);
    CHECK(s.points[0].u == doctest::Approx(-1.224744871391589));
    CHECK(s.points[1].u == 0.0);
    CHECK(s.points[2].u == doctest::Approx(1.224744871391589));
    CHECK(s.points[2].v == doctest::Approx(0.6123724356957945));
    CHECK_FALSE(s.degenerate);
  }
  SUBCASE("beta = 1 collapses to the origin") {
    const FixedPointSet s = fixed_points(validate_params(1.0, 0.1, 1.0));
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].u == 0.0);
    CHECK(s.degenerate);
  }
  SUBCASE("beta = 4") {
    const FixedPointSet s = fixed_points(validate_params(1.0, 0.3, 4.0));
    REQUIRE(s.points.size() == 3);
    CHECK(s.points[2].u == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(s.points[2].v == doctest::Approx(0.375).epsilon(1e-14));
  }
  SUBCASE("beta < 1 keeps only the origin") {
    CHECK(fixed_points(validate_params(1.0, 0.3, 0.5)).points.size() == 1);
  }
  SUBCASE("v = u / beta and g(u) = v") {
    for (double beta : {0.5, 1.5, 2.0, 3.0, 4.0}) {
      const Params p = validate_params(1.0, 0.3, beta);
      for (const FixedPoint& fp : fixed_points(p).points) {
        CHECK(fp.v == doctest::Approx(fp.u / beta).epsilon(1e-15));
        CHECK(std::abs(g(fp.u) - fp.v) < 1e-14);
      }
    }
  }
}

TEST_CASE("closed-form fixed points match the cubic roots") {
  const FamilyTag tags[] = {FamilyTag::FixedPointZero, FamilyTag::FixedPointPlus,
                            FamilyTag::FixedPointMinus, FamilyTag::FixedPointCardanoA,
                            FamilyTag::FixedPointCardanoB};
  for (double beta : {1.5, 2.0, 3.0, 4.0}) {
    const Params p = validate_params(1.0, 0.3, beta);
    const FixedPointSet set = fixed_points(p);
    for (FamilyTag tag : tags) {
      const ClosedFormFixedPoint cf = eval_fixed_point_closed_form(p, tag);
      REQUIRE(cf.real);
      REQUIRE(cf.root_index.has_value());
      const FixedPoint& root = set.points.at(*cf.root_index);
      CHECK(std::abs(cf.u.real() - root.u) < 1e-9);
      CHECK(std::abs(cf.v.real() - root.v) < 1e-9);
    }
  }
  const ClosedFormFixedPoint zero = eval_fixed_point_closed_form(kFig, FamilyTag::FixedPointZero);
  CHECK(zero.u == CScalar(0.0));
  CHECK(zero.v == CScalar(0.0));
  const ClosedFormFixedPoint plus = eval_fixed_point_closed_form(kFig, FamilyTag::FixedPointPlus);
  CHECK(plus.u.real() == doctest::Approx(1.224744871391589));
  CHECK(plus.v.real() == doctest::Approx(0.6123724356957945));
  const ClosedFormFixedPoint ca = eval_fixed_point_closed_form(kFig, FamilyTag::FixedPointCardanoA);
  CHECK(ca.real);
  CHECK(kind_of([] {
          eval_fixed_point_closed_form(validate_params(1.0, 0.3, 1.0), FamilyTag::FixedPointCardanoA);
        }) == ErrorKind::SingularParameter);
  const ClosedFormFixedPoint below =
      eval_fixed_point_closed_form(validate_params(1.0, 0.3, 0.5), FamilyTag::FixedPointPlus);
  CHECK_FALSE(below.real);
  CHECK(kind_of([] {
          eval_fixed_point_closed_form(kFig, FamilyTag::NonClassicalExp);
        }) == ErrorKind::Unsupported);
}

TEST_CASE("catalog") {
  CHECK(family_catalog().size() == 9);
  for (const FamilyInfo& info : family_catalog()) {
    CHECK(parse_family_tag(info.name) == info.tag);
    CHECK(to_string(info.tag) == info.name);
  }
  CHECK(family_info(FamilyTag::TanhFrontPlus).domain == std::string_view("beta > 1"));
  CHECK(is_fixed_point(FamilyTag::FixedPointCardanoB));
  CHECK_FALSE(is_fixed_point(FamilyTag::JacobiSnSteady));
  CHECK(kind_of([] { parse_family_tag("NoSuchFamily"); }) == ErrorKind::ConfigError);
}

TEST_CASE("tanh front") {
  const Params p = validate_params(1.0, 0.3, 2.0);
  const double a = std::sqrt(1.5);
  SUBCASE("zero at x = -x0") {
    const Derivatives d = eval_tanh_front(p, +1, 0.8, 0.0, -0.8);
    CHECK(d.u == 0.0);
    CHECK(d.v == 0.0);
  }
  SUBCASE("saturates to the fixed-point amplitude") {
    CHECK(std::abs(eval_tanh_front(p, +1, 0.0, 0.0, 40.0).u - a) < 1e-12);
    CHECK(std::abs(eval_tanh_front(p, -1, 0.0, 0.0, 40.0).u + a) < 1e-12);
  }
  SUBCASE("steady residual") {
    CHECK(std::abs(steady_residual(p, eval_tanh_front(p, +1, 0.0, 0.0, 0.7))) < 1e-12);
    for (double beta : {1.5, 2.0, 4.0}) {
      for (double D : {0.5, 1.0, 2.0}) {
        const Params q = validate_params(D, 0.3, beta);
        for (double x : {-3.1, -0.2, 0.0, 1.4, 5.0}) {
          for (int sign : {-1, 1}) {
            const Derivatives d = eval_tanh_front(q, sign, -1.7, 0.0, x);
            CHECK(std::abs(steady_residual(q, d)) < 1e-12);
            CHECK(d.u_t == 0.0);
            CHECK(d.v_t == 0.0);
          }
        }
      }
    }
  }
  SUBCASE("derivatives match the oracle") {
    const double x = 0.37;
    auto u = [&](double s) { return eval_tanh_front(p, +1, 0.2, 0.0, s).u; };
    const Derivatives d = eval_tanh_front(p, +1, 0.2, 0.0, x);
    CHECK(std::abs(oracle::derivative(u, x, 1, 1e-3) - d.u_x) < 1e-9);
    CHECK(std::abs(oracle::derivative(u, x, 2, 1e-3) - d.u_xx) < 1e-7);
  }
  CHECK(kind_of([] { eval_tanh_front(validate_params(1.0, 0.3, 0.5), 1, 0, 0, 0); }) ==
        ErrorKind::OutOfDomain);
}

TEST_CASE("Jacobi sn steady state") {
  const Params p = validate_params(1.0, 0.3, 2.0);
  SUBCASE("c2 = 0 is the zero state") {
    const Derivatives d = eval_jacobisn_steady(p, 0.4, 0.0, 1.3);
    CHECK(d.u == 0.0);
    CHECK(d.v == 0.0);
  }
  SUBCASE("unit modulus reproduces the tanh front") {
    const double c2 = std::sqrt((5 * 2.0 - 6) / 2.0);
    CHECK(jacobisn_modulus(p, c2) == doctest::Approx(1.0).epsilon(1e-15));
    for (double x : {-2.0, -0.5, 0.0, 0.9, 3.0}) {
      const double sn = eval_jacobisn_steady(p, 0.0, c2, x).u;
      const double th = eval_tanh_front(p, +1, 0.0, 0.0, x).u;
      CHECK(std::abs(sn - th) < 1e-6);
    }
  }
  SUBCASE("generic small c2 is a steady solution") {
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = -4.0 + 0.2 * i;
      worst = std::max(worst, std::abs(steady_residual(p, eval_jacobisn_steady(p, 0.0, 0.3, x))));
    }
    MESSAGE("Jacobi sn steady residual (sup): " << worst);
    CHECK(worst < 1e-12);
  }
  SUBCASE("second derivative against the oracle") {
    auto u = [&](double s) { return eval_jacobisn_steady(p, 0.2, 0.7, s).u; };
    const Derivatives d = eval_jacobisn_steady(p, 0.2, 0.7, 0.8);
    CHECK(std::abs(oracle::derivative(u, 0.8, 2, 1e-3) - d.u_xx) < 1e-7);
  }
}

TEST_CASE("non-classical wavenumber") {
  SUBCASE("figure parameters give imaginary k") {
    const Wavenumber w = nonclassical_k(kFig);
    CHECK(w.k_squared_reduced == doctest::Approx(-5.4 / 12.36).epsilon(1e-14));
    CHECK(w.imaginary());
    CHECK(w.k.imag() == doctest::Approx(0.660978973858847642).epsilon(1e-14));
    CHECK(w.relative_gap < 1e-12);
  }
  SUBCASE("boundary zero and a real case") {
    CHECK(std::abs(nonclassical_k(validate_params(2.0, 1.5, 1.0)).k) < 1e-15);
    const Wavenumber w = nonclassical_k(validate_params(1.0, 0.3, 1.0));
    CHECK(w.k.real() == doctest::Approx(std::sqrt(0.4)).epsilon(1e-14));
    CHECK_FALSE(w.imaginary());
  }
  SUBCASE("random draws") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> Dd(0.1, 5.0), ed(0.01, 2.0), bd(0.5, 4.0);
    for (int i = 0; i < 1000; ++i) {
      const Params p = validate_params(Dd(gen), ed(gen), bd(gen));
      const double want = (9 - 6 * p.beta - 2 * p.epsilon * p.beta * p.beta) / (6 * p.beta * p.D);
      const CScalar k = nonclassical_k(p).k;
      CHECK(std::abs(k * k - want) <= 1e-12 * std::max(std::abs(want), 1e-300));
    }
  }
}

TEST_CASE("non-classical pair") {
  const SolutionFamily fam = SolutionFamily::make(FamilyTag::NonClassicalExp, kFig);
  SUBCASE("origin values") {
    const State s = fam.eval(0.0, 0.0);
    CHECK(s.u == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s.v == doctest::Approx(-7.0 / 6.0).epsilon(1e-14));
    const Derivatives d = fam.eval_derivs(0.0, 0.0);
    CHECK(v_from_fast_equation(kFig, d) == doctest::Approx(-7.0 / 6.0).epsilon(1e-14));
  }
  SUBCASE("literal polynomial for v agrees with the factorised form") {
    const CScalar k = nonclassical_k(kFig).k;
    for (double t : {0.0, 1.3}) {
      for (double x : {-2.0, 0.4, 2.9}) {
        const CScalar E = std::exp(CScalar(0.2 * t));
        const CScalar X = std::exp(k * x);
        const CScalar v = nonclassical_v_polynomial<CScalar>(2.0, 1.0, 1.0, E, X);
        const double u = fam.eval(t, x).u;
        CHECK(std::abs(v.imag()) < 1e-12);
        CHECK(std::abs(v.real() - (0.75 * u - u * u * u / 3.0)) < 1e-12);
      }
    }
  }
  SUBCASE("separable decay") {
    for (double x : {-2.5, -0.3, 1.7}) {
      CHECK(fam.eval(1.0, x).u / fam.eval(0.0, x).u ==
            doctest::Approx(std::exp(-0.2)).epsilon(1e-14));
    }
  }
  SUBCASE("derivatives against the oracle") {
    const double t = 0.7;
    const double x = -0.45;
    const Derivatives d = fam.eval_derivs(t, x);
    auto ux = [&](double s) { return fam.eval(t, s).u; };
    auto ut = [&](double s) { return fam.eval(s, x).u; };
    auto vt = [&](double s) { return fam.eval(s, x).v; };
    CHECK(std::abs(oracle::derivative(ux, x, 1, 1e-3) - d.u_x) < 1e-9);
    CHECK(std::abs(oracle::derivative(ux, x, 2, 1e-3) - d.u_xx) < 1e-7);
    CHECK(std::abs(oracle::derivative(ut, t, 1, 1e-3) - d.u_t) < 1e-9);
    CHECK(std::abs(oracle::derivative(vt, t, 1, 1e-3) - d.v_t) < 1e-9);
  }
  SUBCASE("imaginary k with unequal constants is rejected") {
    CHECK(kind_of([] {
            SolutionFamily::make(FamilyTag::NonClassicalExp, kFig, {1.0, 0.5, 0.0});
          }) == ErrorKind::ComplexResult);
  }
}

TEST_CASE("ansatz F") {
  const NonClassicalAnsatz a = solved_ansatz(kFig, 1.0, 1.0);
  CHECK(a.A == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(a.B == 0.0);
  CHECK(solve_F_ode(kFig, a.A, a.B, 1.0, 1.0, 0.0) == CScalar(2.0));
  const CScalar s = F_exponent(kFig, a.A, a.B);
  CHECK(std::abs(s * s - nonclassical_k(kFig).k_squared_reduced) < 1e-14);
  // principal branches put the printed exponent on -k
  CHECK(std::abs(s + nonclassical_k(kFig).k) < 1e-12 * std::abs(s));
  const Params real_k = validate_params(1.0, 0.3, 1.0);
  const double A = -0.1;
  const CScalar f1 = solve_F_ode(real_k, A, 0.0, 1.0, 0.0, 0.3);
  const CScalar f2 = solve_F_ode(real_k, A, 0.0, 1.0, 0.0, 0.5);
  const CScalar f12 = solve_F_ode(real_k, A, 0.0, 1.0, 0.0, 0.8);
  const CScalar f0 = solve_F_ode(real_k, A, 0.0, 1.0, 0.0, 0.0);
  CHECK(std::abs(f12 - f1 * f2 / f0) < 1e-14);
  CHECK(kind_of([] { F_exponent(kFig, 0.0, 0.0); }) == ErrorKind::SingularParameter);
}

TEST_CASE("solution families: domains and steadiness") {
  CHECK(kind_of([] {
          SolutionFamily::make(FamilyTag::TanhFrontPlus, validate_params(1.0, 0.3, 0.5));
        }) == ErrorKind::OutOfDomain);
  CHECK(kind_of([] {
          SolutionFamily::make(FamilyTag::FixedPointPlus, validate_params(1.0, 0.3, 0.5));
        }) == ErrorKind::OutOfDomain);
  for (const FamilyInfo& info : family_catalog()) {
    const SolutionFamily fam = SolutionFamily::make(info.tag, kFig);
    CHECK(fam.steady() == info.steady);
    for (double x : {-1.0, 0.5}) {
      const Derivatives d = fam.eval_derivs(0.3, x);
      CHECK(std::isfinite(d.u));
      CHECK(std::isfinite(d.v));
      if (fam.steady()) {
        CHECK(d.u_t == 0.0);
        CHECK(d.v_t == 0.0);
      }
    }
  }
  const SolutionFamily sn = SolutionFamily::make(FamilyTag::JacobiSnSteady, kFig);
  CHECK_FALSE(sn.notes().empty());
  CHECK(sn.eval(0.0, 0.3).v == doctest::Approx(sn.eval(0.0, 0.3).u / 2.0));
}
