#include "fhnx/simulate.hpp"

#include "fhnx/parallel.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace fhnx {

std::string_view to_string(Scheme s) { return s == Scheme::RK4 ? "rk4" : "semi-implicit"; }

std::string_view to_string(Boundary b) {
  return b == Boundary::DirichletFromFamily ? "dirichlet" : "periodic";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "rk4") return Scheme::RK4;
  if (name == "semi-implicit" || name == "imex") return Scheme::SemiImplicit;
  throw Error(ErrorKind::ConfigError, "unknown scheme '" + std::string(name) + "'");
}

Boundary parse_boundary(std::string_view name) {
  if (name == "dirichlet" || name == "dirichlet-from-family") return Boundary::DirichletFromFamily;
  if (name == "periodic") return Boundary::Periodic;
  throw Error(ErrorKind::ConfigError, "unknown boundary '" + std::string(name) + "'");
}

double SimConfig::explicit_limit(const Grid& grid, const Params& p, double cfl_safety) {
  const double dx = grid.dx();
  return cfl_safety * dx * dx / (2.0 * p.D);
}

SimConfig SimConfig::create(const Grid& grid, Scheme scheme, Boundary bc, const Params& p,
                            double cfl_safety, std::optional<double> requested_dt,
                            std::optional<SolutionFamily> boundary_family) {
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw Error(ErrorKind::ConfigError, "cfl safety factor must lie in (0, 1]");
  }
  if (bc == Boundary::DirichletFromFamily && !boundary_family) {
    throw Error(ErrorKind::ConfigError, "Dirichlet boundaries need an exact family");
  }
  const double limit = explicit_limit(grid, p, cfl_safety);
  if (requested_dt) {
    if (!(*requested_dt > 0.0)) throw Error(ErrorKind::ConfigError, "dt must be > 0");
    if (scheme == Scheme::RK4 && *requested_dt > limit) {
      throw Error(ErrorKind::ConfigError,
                  "dt=" + format_number(*requested_dt) + " exceeds cfl*dx^2/(2D)=" +
                      format_number(limit));
    }
  }

  SimConfig cfg;
  cfg.grid = grid;
  cfg.scheme = scheme;
  cfg.bc = bc;
  cfg.cfl_safety = cfl_safety;
  cfg.boundary_family = std::move(boundary_family);
  const double target = requested_dt.value_or(limit);
  const double interval = grid.dt();
  if (interval > 0.0) {
    cfg.substeps = static_cast<int>(std::ceil(interval / target - 1e-9));
    cfg.substeps = std::max(cfg.substeps, 1);
    cfg.dt = interval / cfg.substeps;
  } else {
    cfg.substeps = 0;
    cfg.dt = target;
  }
  return cfg;
}

// ---------------------------------------------------------------------------

struct Integrator::Factorization {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

Integrator::Integrator(const Params& p, const SimConfig& cfg)
    : params_(p), cfg_(cfg), inv_dx2_(1.0 / (cfg.grid.dx() * cfg.grid.dx())) {
  if (cfg_.scheme != Scheme::SemiImplicit) return;

  // (I - dt D L) on the unknown nodes
  const bool periodic = cfg_.bc == Boundary::Periodic;
  const int n = cfg_.grid.nx;
  const int m = periodic ? n - 1 : n - 2;
  const double r = cfg_.dt * params_.D * inv_dx2_;
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(3 * m);
  for (int i = 0; i < m; ++i) {
    entries.emplace_back(i, i, 1.0 + 2.0 * r);
    if (periodic) {
      entries.emplace_back(i, (i + m - 1) % m, -r);
      entries.emplace_back(i, (i + 1) % m, -r);
    } else {
      if (i > 0) entries.emplace_back(i, i - 1, -r);
      if (i + 1 < m) entries.emplace_back(i, i + 1, -r);
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(entries.begin(), entries.end());
  auto f = std::make_shared<Factorization>();
  f->lu.compute(a);
  if (f->lu.info() != Eigen::Success) {
    throw Error(ErrorKind::ConfigError, "semi-implicit matrix factorisation failed");
  }
  lu_ = std::move(f);
}

void Integrator::rhs(const Eigen::ArrayXd& u, const Eigen::ArrayXd& v, Eigen::ArrayXd& du,
                     Eigen::ArrayXd& dv) const {
  const Eigen::Index n = u.size();
  const double D = params_.D;
  const double eps = params_.epsilon;
  du.setZero(n);
  dv.setZero(n);
  const auto reaction = [&](Eigen::Index i, double lap) {
    du[i] = D * lap - v[i] + g(u[i]);
    dv[i] = eps * (-params_.beta * v[i] + params_.c + u[i]);
  };
  if (cfg_.bc == Boundary::Periodic) {
    const Eigen::Index m = n - 1;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double left = u[(i + m - 1) % m];
      const double right = u[(i + 1) % m];
      reaction(i, (left - 2.0 * u[i] + right) * inv_dx2_);
    }
    du[m] = du[0];
    dv[m] = dv[0];
  } else {
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      reaction(i, (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_dx2_);
    }
  }
}

void Integrator::impose_boundary(FieldPair& s, double t) const {
  const Eigen::Index last = s.size() - 1;
  if (cfg_.bc == Boundary::Periodic) {
    s.u()[last] = s.u()[0];
    s.v()[last] = s.v()[0];
    return;
  }
  const SolutionFamily& fam = *cfg_.boundary_family;
  const State left = fam.eval(t, cfg_.grid.x(0));
  const State right = fam.eval(t, cfg_.grid.x(static_cast<int>(last)));
  s.u()[0] = left.u;
  s.v()[0] = left.v;
  s.u()[last] = right.u;
  s.v()[last] = right.v;
}

void Integrator::rk4(FieldPair& s, double t) const {
  const double h = cfg_.dt;
  const Eigen::Index n = s.size();
  Eigen::ArrayXd k1u(n), k1v(n), k2u(n), k2v(n), k3u(n), k3v(n), k4u(n), k4v(n);
  FieldPair stage = s;

  rhs(s.u(), s.v(), k1u, k1v);
  stage.u() = s.u() + 0.5 * h * k1u;
  stage.v() = s.v() + 0.5 * h * k1v;
  impose_boundary(stage, t + 0.5 * h);
  rhs(stage.u(), stage.v(), k2u, k2v);
  stage.u() = s.u() + 0.5 * h * k2u;
  stage.v() = s.v() + 0.5 * h * k2v;
  impose_boundary(stage, t + 0.5 * h);
  rhs(stage.u(), stage.v(), k3u, k3v);
  stage.u() = s.u() + h * k3u;
  stage.v() = s.v() + h * k3v;
  impose_boundary(stage, t + h);
  rhs(stage.u(), stage.v(), k4u, k4v);

  s.u() += (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  s.v() += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  impose_boundary(s, t + h);
}

void Integrator::semi_implicit(FieldPair& s, double t) const {
  // diffusion backward Euler, reaction forward Euler
  const double h = cfg_.dt;
  const Eigen::Index n = s.size();
  const bool periodic = cfg_.bc == Boundary::Periodic;
  const Eigen::Index first = periodic ? 0 : 1;
  const Eigen::Index m = periodic ? n - 1 : n - 2;

  const Eigen::ArrayXd& u = s.u();
  const Eigen::ArrayXd& v = s.v();
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index node = first + i;
    b[i] = u[node] + h * (-v[node] + g(u[node]));
  }
  FieldPair next = s;
  if (!periodic) {
    impose_boundary(next, t + h);
    const double r = h * params_.D * inv_dx2_;
    b[0] += r * next.u()[0];
    b[m - 1] += r * next.u()[n - 1];
  }
  const Eigen::VectorXd solved = lu_->lu.solve(b);
  const double eps = params_.epsilon;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index node = first + i;
    next.u()[node] = solved[i];
    next.v()[node] = v[node] + h * eps * (-params_.beta * v[node] + params_.c + u[node]);
  }
  if (periodic) impose_boundary(next, t + h);
  s = std::move(next);
}

void Integrator::advance(FieldPair& state, double t, std::int64_t step_index) const {
  if (state.size() != cfg_.grid.nx) {
    throw Error(ErrorKind::ConfigError, "state length does not match the grid");
  }
  if (cfg_.scheme == Scheme::RK4) {
    rk4(state, t);
  } else {
    semi_implicit(state, t);
  }
  const double peak = std::max(state.u().abs().maxCoeff(), state.v().abs().maxCoeff());
  if (!(peak <= kBlowUpThreshold)) {
    throw Error(ErrorKind::BlowUp, "|u| or |v| exceeded 1e6 at step " + std::to_string(step_index));
  }
}

FieldPair step(const FieldPair& state, const Params& p, const SimConfig& cfg, double t) {
  FieldPair out = state;
  Integrator(p, cfg).advance(out, t);
  return out;
}

// ---------------------------------------------------------------------------

FieldPair sample_family(const SolutionFamily& fam, const Grid& grid, double t) {
  Eigen::ArrayXd u(grid.nx);
  Eigen::ArrayXd v(grid.nx);
  for (int i = 0; i < grid.nx; ++i) {
    const State s = fam.eval(t, grid.x(i));
    u[i] = s.u;
    v[i] = s.v;
  }
  return FieldPair(std::move(u), std::move(v));
}

ErrorNorms error_against(const FieldPair& state, const SolutionFamily& fam, const Grid& grid,
                         double t) {
  const FieldPair exact = sample_family(fam, grid, t);
  const Eigen::ArrayXd eu = state.u() - exact.u();
  const Eigen::ArrayXd ev = state.v() - exact.v();
  const double dx = grid.dx();
  return {eu.abs().maxCoeff(), std::sqrt(dx * eu.square().sum()), ev.abs().maxCoeff(),
          std::sqrt(dx * ev.square().sum())};
}

RunResult run(const SolutionFamily& ic_family, const Params& p, const SimConfig& cfg) {
  const Integrator integrator(p, cfg);
  const Grid& grid = cfg.grid;
  RunResult result;
  result.x = grid.x_nodes();

  FieldPair state = sample_family(ic_family, grid, grid.t_min);
  auto record = [&](double t) {
    result.times.push_back(t);
    result.snapshots.push_back(state);
    const ErrorNorms e = error_against(state, ic_family, grid, t);
    result.errors.push_back(e);
    ErrorNorms& m = result.max_error;
    m.linf_u = std::max(m.linf_u, e.linf_u);
    m.l2_u = std::max(m.l2_u, e.l2_u);
    m.linf_v = std::max(m.linf_v, e.linf_v);
    m.l2_v = std::max(m.l2_v, e.l2_v);
  };
  record(grid.t_min);
  for (int j = 1; j < grid.nt; ++j) {
    const double t0 = grid.t(j - 1);
    for (int s = 0; s < cfg.substeps; ++s) {
      integrator.advance(state, t0 + s * cfg.dt, result.steps);
      ++result.steps;
    }
    record(grid.t(j));
  }
  return result;
}

ConvergenceStudy convergence_study(const SolutionFamily& ic_family, const Params& p,
                                   const Grid& base_grid, int refinements, Scheme scheme,
                                   double cfl_safety) {
  if (refinements < 2) throw Error(ErrorKind::ConfigError, "convergence study needs >= 2 refinements");
  if (base_grid.nt < 2) throw Error(ErrorKind::ConfigError, "convergence study needs nt >= 2");

  ConvergenceStudy study;
  study.levels.resize(refinements + 1);
  parallel_for(study.levels.size(), [&](std::size_t level) {
    Grid grid = base_grid;
    grid.nx = (base_grid.nx - 1) * (1 << level) + 1;
    const SimConfig cfg = SimConfig::create(grid, scheme, Boundary::DirichletFromFamily, p,
                                            cfl_safety, std::nullopt, ic_family);
    const RunResult r = run(ic_family, p, cfg);
    study.levels[level] = {grid.nx, grid.dx(), cfg.dt, r.max_error.linf_u, r.max_error.linf_v};
  });

  for (const ConvergenceLevel& l : study.levels) {
    if (l.linf_u < 1e-12) {
      throw Error(ErrorKind::InsufficientSignal,
                  "error " + format_number(l.linf_u) + " at nx=" + std::to_string(l.nx) +
                      " is at the floating-point floor");
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < study.levels.size(); ++i) {
    const double order = std::log2(study.levels[i].linf_u / study.levels[i + 1].linf_u);
    study.pair_orders.push_back(order);
    sum += order;
  }
  study.observed_order = sum / static_cast<double>(study.pair_orders.size());
  return study;
}

// ---------------------------------------------------------------------------

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  out.write(b, 4);
}

void put_f64(std::ostream& out, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  out.write(b, 8);
}

std::uint64_t get_bytes(std::istream& in, int n) {
  unsigned char b[8] = {};
  in.read(reinterpret_cast<char*>(b), n);
  if (in.gcount() != n) throw Error(ErrorKind::ConfigError, "truncated frame stream");
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_bytes(in, 8)); }

}  // namespace

void write_frames(std::ostream& out, const RunResult& result) {
  out.write(kFrameMagic, 4);
  put_u32(out, kFrameVersion);
  put_u32(out, static_cast<std::uint32_t>(result.x.size()));
  put_u32(out, static_cast<std::uint32_t>(result.snapshots.size()));
  for (double x : result.x) put_f64(out, x);
  for (std::size_t f = 0; f < result.snapshots.size(); ++f) {
    put_f64(out, result.times[f]);
    for (double u : result.snapshots[f].u()) put_f64(out, u);
    for (double v : result.snapshots[f].v()) put_f64(out, v);
  }
}

FrameStream read_frames(std::istream& in) {
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() != 4 || !std::equal(magic, magic + 4, kFrameMagic)) {
    throw Error(ErrorKind::ConfigError, "not an FHN1 frame stream");
  }
  const auto version = static_cast<std::uint32_t>(get_bytes(in, 4));
  if (version != kFrameVersion) {
    throw Error(ErrorKind::ConfigError, "unsupported frame version " + std::to_string(version));
  }
  const auto nx = static_cast<Eigen::Index>(get_bytes(in, 4));
  const auto count = static_cast<std::size_t>(get_bytes(in, 4));
  FrameStream fs;
  fs.x.resize(nx);
  for (Eigen::Index i = 0; i < nx; ++i) fs.x[i] = get_f64(in);
  for (std::size_t f = 0; f < count; ++f) {
    fs.times.push_back(get_f64(in));
    Eigen::ArrayXd u(nx);
    Eigen::ArrayXd v(nx);
    for (Eigen::Index i = 0; i < nx; ++i) u[i] = get_f64(in);
    for (Eigen::Index i = 0; i < nx; ++i) v[i] = get_f64(in);
    fs.frames.emplace_back(std::move(u), std::move(v));
  }
  return fs;
}

void write_trajectory_csv(std::ostream& out, const RunResult& result) {
  out << "t,x,u,v\n";
  for (std::size_t f = 0; f < result.snapshots.size(); ++f) {
    const std::string t = format_number(result.times[f]);
    const FieldPair& s = result.snapshots[f];
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      out << t << ',' << format_number(result.x[i]) << ',' << format_number(s.u()[i]) << ','
          << format_number(s.v()[i]) << '\n';
    }
  }
}

}  // namespace fhnx
