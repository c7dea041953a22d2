#include "fhnx/core.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace fhnx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorKind::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::SingularParameter: return "SingularParameter";
    case ErrorKind::BranchMismatch: return "BranchMismatch";
    case ErrorKind::ComplexResult: return "ComplexResult";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::InsufficientSignal: return "InsufficientSignal";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

Params validate_params(double D, double epsilon, double beta, double c) {
  auto check = [](double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorKind::NonPositiveParameter, name);
    }
  };
  check(D, "D");
  check(epsilon, "epsilon");
  check(beta, "beta");
  if (!std::isfinite(c)) throw Error(ErrorKind::ConfigError, "c must be finite");
  return Params{D, epsilon, beta, c};
}

CScalar principal_cbrt(CScalar z) {
  if (z == CScalar(0.0)) return CScalar(0.0);
  // normalise -0.0 so arg() lands on +pi for negative reals
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  const double theta = std::atan2(im, z.real());
  return std::polar(std::cbrt(std::abs(z)), theta / 3.0);
}

CScalar principal_pow(CScalar z, double p) {
  if (z == CScalar(0.0)) return CScalar(0.0);
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  const double theta = std::atan2(im, z.real());
  return std::polar(std::pow(std::abs(z), p), theta * p);
}

double require_real(CScalar z, std::string_view what, double tol) {
  if (!is_effectively_real(z, tol)) {
    throw Error(ErrorKind::ComplexResult,
                std::string(what) + " has imaginary part " + std::to_string(z.imag()));
  }
  return z.real();
}

Eigen::ArrayXd Grid::x_nodes() const {
  Eigen::ArrayXd xs(nx);
  for (int i = 0; i < nx; ++i) xs[i] = x(i);
  return xs;
}

Grid make_grid(double x_min, double x_max, int nx, double t_min, double t_max, int nt) {
  if (nx < 3) throw Error(ErrorKind::ConfigError, "grid needs nx >= 3");
  if (nt < 1) throw Error(ErrorKind::ConfigError, "grid needs nt >= 1");
  if (!(x_max > x_min)) throw Error(ErrorKind::ConfigError, "grid needs x_max > x_min");
  if (!(t_max >= t_min)) throw Error(ErrorKind::ConfigError, "grid needs t_max >= t_min");
  return Grid{x_min, x_max, nx, t_min, t_max, nt};
}

FieldPair::FieldPair(Eigen::ArrayXd u, Eigen::ArrayXd v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.size() != v_.size()) {
    throw Error(ErrorKind::ConfigError, "u and v must have the same length");
  }
  if (!all_finite()) throw Error(ErrorKind::BlowUp, "non-finite field entry");
}

FieldPair FieldPair::zeros(Eigen::Index n) {
  return FieldPair(Eigen::ArrayXd::Zero(n), Eigen::ArrayXd::Zero(n));
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FHNX_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

}  // namespace fhnx
