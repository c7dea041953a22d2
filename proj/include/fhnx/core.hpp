#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fhnx {

using CScalar = std::complex<double>;

/// Tolerance used to decide that a complex intermediate is a real number.
inline constexpr double kRealnessTol = 1e-9;

enum class ErrorKind {
  NonPositiveParameter,
  ModulusOutOfRange,
  NoConvergence,
  OutOfDomain,
  SingularParameter,
  BranchMismatch,
  ComplexResult,
  Unsupported,
  BlowUp,
  InsufficientSignal,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this exception. The kind
/// drives the command-line exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

/// Model constants. Construct through validate_params().
struct Params {
  double D = 1.0;
  double epsilon = 1.0;
  double beta = 1.0;
  double c = 0.0;

  /// True at beta == 1, where the three isolated fixed points coalesce.
  bool degenerate() const noexcept { return beta == 1.0; }

  friend bool operator==(const Params&, const Params&) = default;
};

Params validate_params(double D, double epsilon, double beta, double c = 0.0);

template <class Scalar>
Scalar g(const Scalar& u) {
  return u - u * u * u / Scalar(3);
}

template <class Scalar>
Scalar g_prime(const Scalar& u) {
  return Scalar(1) - u * u;
}

// Complex helpers. std::sqrt/std::log already use the principal branch.

/// Principal cube root, exp(log(z)/3). A signed zero imaginary part is
/// treated as +0 so that negative reals map to |z|^(1/3) e^(i pi/3).
CScalar principal_cbrt(CScalar z);

/// Principal power z^p for real p.
CScalar principal_pow(CScalar z, double p);

inline bool is_effectively_real(CScalar z, double tol = kRealnessTol) {
  return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z.real()));
}

/// Returns z.real() if z is effectively real, otherwise throws ComplexResult.
double require_real(CScalar z, std::string_view what, double tol = kRealnessTol);

/// Uniform space-time sampling. nt == 1 means a single time level t_min.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int nx = 3;
  double t_min = 0.0;
  double t_max = 0.0;
  int nt = 1;

  double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
  double dt() const noexcept { return nt > 1 ? (t_max - t_min) / (nt - 1) : 0.0; }
  double x(int i) const noexcept { return x_min + i * dx(); }
  double t(int j) const noexcept { return nt > 1 ? t_min + j * dt() : t_min; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt);
  }
  Eigen::ArrayXd x_nodes() const;
};

Grid make_grid(double x_min, double x_max, int nx, double t_min, double t_max, int nt);

/// Paired fast/slow fields on the spatial nodes of a grid.
class FieldPair {
 public:
  FieldPair() = default;
  FieldPair(Eigen::ArrayXd u, Eigen::ArrayXd v);
  static FieldPair zeros(Eigen::Index n);

  const Eigen::ArrayXd& u() const noexcept { return u_; }
  const Eigen::ArrayXd& v() const noexcept { return v_; }
  Eigen::ArrayXd& u() noexcept { return u_; }
  Eigen::ArrayXd& v() noexcept { return v_; }
  Eigen::Index size() const noexcept { return u_.size(); }
  bool all_finite() const { return u_.allFinite() && v_.allFinite(); }

 private:
  Eigen::ArrayXd u_;
  Eigen::ArrayXd v_;
};

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

/// Number of worker threads; FHNX_THREADS caps the hardware concurrency.
unsigned worker_count();

}  // namespace fhnx
