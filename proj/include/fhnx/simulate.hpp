#pragma once

#include "fhnx/core.hpp"
#include "fhnx/solutions.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace fhnx {

enum class Scheme { RK4, SemiImplicit };
enum class Boundary { DirichletFromFamily, Periodic };

std::string_view to_string(Scheme s);
std::string_view to_string(Boundary b);
Scheme parse_scheme(std::string_view name);
Boundary parse_boundary(std::string_view name);

/// Method-of-lines setup. Node i sits at grid.x(i). With periodic
/// boundaries the last node duplicates the first, so the period is
/// x_max - x_min. Output times are the grid's time levels; each output
/// interval is split into `substeps` equal steps of length `dt`.
struct SimConfig {
  Grid grid;
  Scheme scheme = Scheme::RK4;
  Boundary bc = Boundary::DirichletFromFamily;
  double cfl_safety = 0.25;
  double dt = 0.0;
  int substeps = 0;
  std::optional<SolutionFamily> boundary_family;

  /// Largest explicit step allowed: cfl_safety dx^2 / (2 D).
  static double explicit_limit(const Grid& grid, const Params& p, double cfl_safety);

  /// Validates everything up front. A requested dt above the explicit limit
  /// is a ConfigError for RK4. Without a request the step defaults to the
  /// explicit limit, shrunk to divide the output interval.
  static SimConfig create(const Grid& grid, Scheme scheme, Boundary bc, const Params& p,
                          double cfl_safety = 0.25, std::optional<double> requested_dt = {},
                          std::optional<SolutionFamily> boundary_family = {});
};

/// Advances (u, v) by cfg.dt. The semi-implicit factorisation is built once
/// per integrator and shared between copies.
class Integrator {
 public:
  Integrator(const Params& p, const SimConfig& cfg);

  /// One step from time t. `step_index` only labels a BlowUp error.
  void advance(FieldPair& state, double t, std::int64_t step_index = 0) const;

  double dt() const noexcept { return cfg_.dt; }
  const SimConfig& config() const noexcept { return cfg_; }

 private:
  struct Factorization;

  void rhs(const Eigen::ArrayXd& u, const Eigen::ArrayXd& v, Eigen::ArrayXd& du,
           Eigen::ArrayXd& dv) const;
  void impose_boundary(FieldPair& state, double t) const;
  void rk4(FieldPair& state, double t) const;
  void semi_implicit(FieldPair& state, double t) const;

  Params params_;
  SimConfig cfg_;
  double inv_dx2_;
  std::shared_ptr<const Factorization> lu_;
};

/// Magnitude beyond which a run is declared unstable.
inline constexpr double kBlowUpThreshold = 1e6;

FieldPair step(const FieldPair& state, const Params& p, const SimConfig& cfg, double t);

/// Error of a discrete state against the exact family; l2 = sqrt(dx sum e^2).
struct ErrorNorms {
  double linf_u = 0.0;
  double l2_u = 0.0;
  double linf_v = 0.0;
  double l2_v = 0.0;
};

ErrorNorms error_against(const FieldPair& state, const SolutionFamily& fam, const Grid& grid,
                         double t);

struct RunResult {
  Eigen::ArrayXd x;
  std::vector<double> times;
  std::vector<FieldPair> snapshots;
  std::vector<ErrorNorms> errors;
  ErrorNorms max_error;  // component-wise max over output times
  std::int64_t steps = 0;
};

/// Integrates from the family's state at t_min through every output time.
RunResult run(const SolutionFamily& ic_family, const Params& p, const SimConfig& cfg);

FieldPair sample_family(const SolutionFamily& fam, const Grid& grid, double t);

struct ConvergenceLevel {
  int nx;
  double dx;
  double dt;
  double linf_u;
  double linf_v;
};

struct ConvergenceStudy {
  std::vector<ConvergenceLevel> levels;
  std::vector<double> pair_orders;  // log2(err(h) / err(h/2))
  double observed_order = 0.0;      // mean of pair_orders
};

/// Halves dx `refinements` times starting from base_grid (nx -> 2 nx - 1)
/// with dt tied to dx^2 through the explicit limit. The error of a level is
/// the max-over-time L-infinity error of u. InsufficientSignal if any error
/// drops below 1e-12.
ConvergenceStudy convergence_study(const SolutionFamily& ic_family, const Params& p,
                                   const Grid& base_grid, int refinements,
                                   Scheme scheme = Scheme::RK4, double cfl_safety = 0.25);

// ---------------------------------------------------------------------------
// Trajectory output

/// Binary frame stream, all fields little-endian:
///   char[4] "FHN1" | u32 version (1) | u32 nx | u32 frame count |
///   f64 x[nx] | frame count x (f64 t | f64 u[nx] | f64 v[nx])
struct FrameStream {
  Eigen::ArrayXd x;
  std::vector<double> times;
  std::vector<FieldPair> frames;
};

inline constexpr char kFrameMagic[4] = {'F', 'H', 'N', '1'};
inline constexpr std::uint32_t kFrameVersion = 1;

void write_frames(std::ostream& out, const RunResult& result);
FrameStream read_frames(std::istream& in);

/// CSV with header t,x,u,v; one row per node per output time.
void write_trajectory_csv(std::ostream& out, const RunResult& result);

}  // namespace fhnx
