#include "fhnx/stability.hpp"

#include <cmath>
#include <string>

namespace fhnx {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::StableNode: return "stable node";
    case Classification::StableSpiral: return "stable spiral";
    case Classification::UnstableNode: return "unstable node";
    case Classification::UnstableSpiral: return "unstable spiral";
    case Classification::Saddle: return "saddle";
    case Classification::CenterDegenerate: return "center/degenerate";
  }
  return "unknown";
}

Eigen::Matrix2d jacobian_at(const Params& p, double u_star, double k) {
  if (!(k >= 0.0)) throw Error(ErrorKind::ConfigError, "wavenumber must be >= 0");
  Eigen::Matrix2d j;
  j << g_prime(u_star) - p.D * k * k, -1.0,
       p.epsilon, -p.epsilon * p.beta;
  return j;
}

Spectrum classify(const Eigen::Matrix2d& m) {
  Spectrum s;
  s.trace = m.trace();
  s.det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  s.disc = s.trace * s.trace - 4.0 * s.det;

  if (s.disc >= 0.0) {
    // avoid cancellation in the smaller root
    const double root = std::sqrt(s.disc);
    const double big = 0.5 * (s.trace + std::copysign(root, s.trace));
    const double small = big != 0.0 ? s.det / big : 0.0;
    s.eigenvalues = {CScalar(std::max(big, small)), CScalar(std::min(big, small))};
  } else {
    const double im = 0.5 * std::sqrt(-s.disc);
    s.eigenvalues = {CScalar(0.5 * s.trace, im), CScalar(0.5 * s.trace, -im)};
  }

  if (std::abs(s.det) < kDegenerateTol || std::abs(s.disc) < kDegenerateTol) {
    s.classification = Classification::CenterDegenerate;
  } else if (s.det < 0.0) {
    s.classification = Classification::Saddle;
  } else if (std::abs(s.trace) < kDegenerateTol) {
    s.classification = Classification::CenterDegenerate;
  } else if (s.disc < 0.0) {
    s.classification = s.trace < 0.0 ? Classification::StableSpiral : Classification::UnstableSpiral;
  } else {
    s.classification = s.trace < 0.0 ? Classification::StableNode : Classification::UnstableNode;
  }
  return s;
}

Spectrum classify(const Params& p, double u_star, double k) {
  return classify(jacobian_at(p, u_star, k));
}

DispersionCurve dispersion_sweep(const Params& p, double u_star, double k_max, int n) {
  if (!(k_max > 0.0)) throw Error(ErrorKind::ConfigError, "k_max must be > 0");
  if (n < 2) throw Error(ErrorKind::ConfigError, "dispersion sweep needs n >= 2");

  DispersionCurve curve;
  curve.samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double k = k_max * i / (n - 1);
    curve.samples.push_back({k, classify(p, u_star, k).eigenvalues});
  }

  auto growth = [&](double k) { return classify(p, u_star, k).max_real(); };
  for (int i = 0; i + 1 < n; ++i) {
    double lo = curve.samples[i].k;
    double hi = curve.samples[i + 1].k;
    double f_lo = curve.samples[i].max_real();
    const double f_hi = curve.samples[i + 1].max_real();
    if (f_lo == 0.0) {
      if (i == 0 || curve.samples[i - 1].max_real() != 0.0) curve.crossings.push_back(lo);
      continue;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0) || f_hi == 0.0) continue;
    while (hi - lo > 1e-8) {
      const double mid = 0.5 * (lo + hi);
      const double f_mid = growth(mid);
      if ((f_mid > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    curve.crossings.push_back(0.5 * (lo + hi));
  }
  if (curve.samples.back().max_real() == 0.0 && n > 1 &&
      curve.samples[n - 2].max_real() != 0.0) {
    curve.crossings.push_back(curve.samples.back().k);
  }
  return curve;
}

StabilityReport stability_report(const Params& p, double u_star, double k_max, int n) {
  const FixedPointSet roots = fixed_points(p);
  bool isolated = false;
  for (const FixedPoint& fp : roots.points) {
    isolated = isolated || std::abs(fp.u - u_star) <= 1e-9 * std::max(1.0, std::abs(fp.u));
  }
  if (!isolated) {
    throw Error(ErrorKind::Unsupported,
                "u*=" + std::to_string(u_star) + " is not an isolated fixed point");
  }
  StabilityReport r;
  r.u_star = u_star;
  r.v_star = u_star / p.beta;
  r.k = 0.0;
  r.jacobian = jacobian_at(p, u_star, 0.0);
  r.spectrum = classify(r.jacobian);
  r.dispersion = dispersion_sweep(p, u_star, k_max, n);
  return r;
}

StabilityReport stability_report(const SolutionFamily& fam, double k_max, int n) {
  if (!is_fixed_point(fam.tag())) {
    throw Error(ErrorKind::Unsupported, "linear stability is only offered at isolated fixed "
                                        "points, not for " + std::string(fam.name()));
  }
  return stability_report(fam.params(), fam.eval(0.0, 0.0).u, k_max, n);
}

}  // namespace fhnx
