#include "fhnx/verify.hpp"

#include "fhnx/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace fhnx {

std::string_view to_string(Method m) {
  return m == Method::Analytic ? "analytic" : "finite-difference";
}

std::array<double, 2> ResidualReport::worst_point() const {
  const ResidualNorms& w = fast.linf >= slow.linf ? fast : slow;
  return {w.worst_t, w.worst_x};
}

namespace {

template <class F>
double d1(F&& f, double h) {
  return (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h);
}

template <class F>
double d2(F&& f, double h) {
  return (-f(-2.0 * h) + 16.0 * f(-h) - 30.0 * f(0.0) + 16.0 * f(h) - f(2.0 * h)) / (12.0 * h * h);
}

/// Running linf/sum-of-squares for one slice of the grid.
struct Accumulator {
  double linf = 0.0;
  double sumsq = 0.0;
  double worst_t = 0.0;
  double worst_x = 0.0;

  void add(double r, double t, double x) {
    const double a = std::abs(r);
    if (!(a <= linf)) {  // also captures NaN
      linf = a;
      worst_t = t;
      worst_x = x;
    }
    sumsq += r * r;
  }

  void merge(const Accumulator& o) {
    if (o.linf > linf || std::isnan(o.linf)) {
      linf = o.linf;
      worst_t = o.worst_t;
      worst_x = o.worst_x;
    }
    sumsq += o.sumsq;
  }

  ResidualNorms norms() const { return {linf, std::sqrt(sumsq), worst_t, worst_x}; }
};

Derivatives derivs_by(const SolutionFamily& fam, double t, double x, Method method, FdSteps h) {
  return method == Method::Analytic ? fam.eval_derivs(t, x) : fd_derivatives(fam, t, x, h);
}

}  // namespace

FdSteps oversampled_steps(const Grid& grid) {
  const double hx = grid.dx() / 4.0;
  const double ht = grid.nt > 1 && grid.dt() > 0.0 ? grid.dt() / 4.0 : hx;
  return {ht, hx};
}

Derivatives fd_derivatives(const SolutionFamily& fam, double t, double x, FdSteps h) {
  auto u_at = [&](double tt, double xx) { return fam.eval(tt, xx).u; };
  Derivatives d;
  const State s = fam.eval(t, x);
  d.u = s.u;
  d.v = s.v;
  d.u_t = d1([&](double dt) { return u_at(t + dt, x); }, h.h_t);
  d.v_t = d1([&](double dt) { return fam.eval(t + dt, x).v; }, h.h_t);
  d.u_x = d1([&](double dx) { return u_at(t, x + dx); }, h.h_x);
  d.u_xx = d2([&](double dx) { return u_at(t, x + dx); }, h.h_x);
  d.u_tt = d2([&](double dt) { return u_at(t + dt, x); }, h.h_t);
  d.u_txx = d1(
      [&](double dt) { return d2([&](double dx) { return u_at(t + dt, x + dx); }, h.h_x); },
      h.h_t);
  return d;
}

double fast_residual(const Params& p, const Derivatives& d) {
  return d.u_t - p.D * d.u_xx + d.v - g(d.u);
}

double slow_residual(const Params& p, const Derivatives& d) {
  return d.v_t - p.epsilon * (-p.beta * d.v + p.c + d.u);
}

double third_order_residual(const Params& p, const Derivatives& d) {
  const double eb = p.epsilon * p.beta;
  return p.D * d.u_txx - d.u_tt + eb * p.D * d.u_xx - eb * d.u_t - p.epsilon * d.u +
         d.u_t * (1.0 - d.u * d.u) + eb * g(d.u) - p.epsilon * p.c;
}

ResidualReport residual_system(const SolutionFamily& fam, const Params& p, const Grid& grid,
                               Method method) {
  const FdSteps h = oversampled_steps(grid);
  std::vector<Accumulator> fast(grid.nt);
  std::vector<Accumulator> slow(grid.nt);
  parallel_for(static_cast<std::size_t>(grid.nt), [&](std::size_t j) {
    const double t = grid.t(static_cast<int>(j));
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      const Derivatives d = derivs_by(fam, t, x, method, h);
      fast[j].add(fast_residual(p, d), t, x);
      slow[j].add(slow_residual(p, d), t, x);
    }
  });
  Accumulator fast_total;
  Accumulator slow_total;
  for (int j = 0; j < grid.nt; ++j) {
    fast_total.merge(fast[j]);
    slow_total.merge(slow[j]);
  }
  ResidualReport report;
  report.family = std::string(fam.name());
  report.method = method;
  report.fast = fast_total.norms();
  report.slow = slow_total.norms();
  report.sample_count = grid.size();
  report.notes = fam.notes();
  return report;
}

ThirdOrderReport residual_third_order(const SolutionFamily& fam, const Params& p,
                                      const Grid& grid, Method method) {
  const FdSteps h = oversampled_steps(grid);
  std::vector<Accumulator> rows(grid.nt);
  parallel_for(static_cast<std::size_t>(grid.nt), [&](std::size_t j) {
    const double t = grid.t(static_cast<int>(j));
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i);
      rows[j].add(third_order_residual(p, derivs_by(fam, t, x, method, h)), t, x);
    }
  });
  Accumulator total;
  for (const auto& r : rows) total.merge(r);
  return {std::string(fam.name()), method, total.norms(), grid.size()};
}

ConstraintResiduals check_ansatz_constraints(const Params& p, double A, double B,
                                             std::span<const CScalar> F,
                                             std::span<const CScalar> F_xx) {
  if (A == 0.0) throw Error(ErrorKind::SingularParameter, "A = 0");
  if (F.size() != F_xx.size()) {
    throw Error(ErrorKind::ConfigError, "F and F'' sample counts differ");
  }
  const double e = p.epsilon;
  const double eb = p.epsilon * p.beta;
  const double D = p.D;
  const double A2 = A * A;
  const double A3 = A2 * A;
  const double A4 = A3 * A;
  const double A5 = A4 * A;
  const double B2 = B * B;

  ConstraintResiduals out;
  const double free_term = -3.0 * eb * B * A2 + eb * B2 * B + 3.0 * e * B * A2;
  out.max_abs[3] = std::abs(free_term);
  for (std::size_t i = 0; i < F.size(); ++i) {
    const CScalar f = F[i];
    const CScalar fxx = F_xx[i];
    const CScalar f2 = f * f;
    const CScalar f3 = f2 * f;
    const CScalar cubic = -eb * f3 * A3 - 3.0 * f3 * A4;
    const CScalar quadratic = 3.0 * eb * f2 * B * A2 + 6.0 * f2 * B * A3;
    const CScalar linear = 3.0 * eb * D * fxx * A3 + 3.0 * D * fxx * A4 - 3.0 * eb * f * A4 -
                           3.0 * A5 * f + 3.0 * eb * f * A3 - 3.0 * eb * f * B2 * A +
                           3.0 * f * A4 - 3.0 * e * f * A3 - 3.0 * f * B2 * A2;
    out.max_abs[0] = std::max(out.max_abs[0], std::abs(cubic));
    out.max_abs[1] = std::max(out.max_abs[1], std::abs(quadratic));
    out.max_abs[2] = std::max(out.max_abs[2], std::abs(linear));
  }
  return out;
}

AnsatzCheck check_ansatz_on_nodes(const Params& p, double A, double B, double c1, double c2,
                                  std::span<const double> xs) {
  AnsatzCheck check;
  check.exponent = F_exponent(p, A, B);
  const CScalar s = check.exponent;
  auto F = [&](double x) { return c1 * std::exp(s * x) + c2 * std::exp(-s * x); };

  double h = 1e-3;
  if (xs.size() > 1) h = std::abs(xs.back() - xs.front()) / (xs.size() - 1) / 4.0;

  std::vector<CScalar> f(xs.size());
  std::vector<CScalar> fxx_fd(xs.size());
  std::vector<CScalar> fxx_exact(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    f[i] = F(x);
    fxx_fd[i] = (-F(x - 2.0 * h) + 16.0 * F(x - h) - 30.0 * f[i] + 16.0 * F(x + h) -
                 F(x + 2.0 * h)) /
                (12.0 * h * h);
    fxx_exact[i] = s * s * f[i];
  }
  check.as_printed = check_ansatz_constraints(p, A, B, f, fxx_fd);
  check.reduced = check_ansatz_constraints(p, A, B, f, fxx_exact);
  return check;
}

double invariant_surface_check(const SolutionFamily& fam, double A, double B, const Grid& grid) {
  std::vector<double> rows(grid.nt, 0.0);
  parallel_for(static_cast<std::size_t>(grid.nt), [&](std::size_t j) {
    const double t = grid.t(static_cast<int>(j));
    for (int i = 0; i < grid.nx; ++i) {
      const Derivatives d = fam.eval_derivs(t, grid.x(i));
      rows[j] = std::max(rows[j], std::abs(d.u_t - (A * d.u + B)));
    }
  });
  return *std::max_element(rows.begin(), rows.end());
}

}  // namespace fhnx
