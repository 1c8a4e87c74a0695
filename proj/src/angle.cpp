#include "circq/angle.hpp"

#include <cmath>
#include <string>

#include "circq/quantize.hpp"

namespace circq {

namespace {

void require_angle_section(const FiducialSpec& s) {
  if (!(s.gamma >= 0.0 && s.gamma < pi))
    throw ConfigError("angle operator: gamma must lie in [0, pi), got " + std::to_string(s.gamma));
}

}  // namespace

double angle_function(double alpha) { return reduce_positive(alpha); }

PeriodicProfile angle_function_profile() {
  return PeriodicProfile([](double a) { return angle_function(a); }, std::nullopt, {0.0});
}

PeriodicProfile F_profile(const CoherentFamily& family) {
  require_angle_section(family.spec());
  const PeriodicProfile e = density_E(family);
  const double gamma = family.spec().gamma;
  const Window w = *e.support();
  const QuadratureConfig cfg = family.cfg;
  return PeriodicProfile(
      [e, gamma, w, cfg](double alpha) {
        const double a = reduce_positive(alpha);
        if (a < gamma) {
          const double hi = std::min(gamma, w.hi);
          return a < hi ? two_pi * integrate_split(e, a, hi, w.interior, cfg) : 0.0;
        }
        if (a <= pi + gamma) return 0.0;
        const double lo = std::max(gamma - pi, w.lo);
        const double hi = a - two_pi;
        return hi > lo ? -two_pi * integrate_split(e, lo, hi, w.interior, cfg) : 0.0;
      },
      std::nullopt, {0.0});
}

double density_mean(const CoherentFamily& family) {
  const PeriodicProfile e = density_E(family);
  const Window w = *e.support();
  return integrate_window([&](double q) { return q * e(q); }, w, family.cfg);
}

namespace {

PeriodicProfile multiplier_from(const CoherentFamily& family, double mean_q) {
  const PeriodicProfile f = F_profile(family);
  return PeriodicProfile([f, mean_q](double a) { return angle_function(a) + f(a) - mean_q; });
}

double checked_mean(const CoherentFamily& family) {
  const double mean_q = density_mean(family);
  if (family.spec().standard_section() && std::abs(mean_q) > 1e-10) {
    throw NumericalError("angle_operator",
                         "<q>_E = " + std::to_string(mean_q) + " for an even fiducial");
  }
  return mean_q;
}

}  // namespace

PeriodicProfile angle_multiplier(const CoherentFamily& family) {
  require_angle_section(family.spec());
  return multiplier_from(family, checked_mean(family));
}

AngleProfile angle_operator(const CoherentFamily& family, int scan_points) {
  require_angle_section(family.spec());
  if (scan_points < 16) throw ConfigError("angle_operator: scan_points must be >= 16");

  AngleProfile out;
  out.mean_q = checked_mean(family);
  out.multiplier = multiplier_from(family, out.mean_q);

  const PeriodicProfile e = density_E(family);
  // uniform grid plus scan_points / 8 samples between consecutive breakpoints of
  // the support, which resolves the peak of E at any epsilon
  std::vector<double> xs;
  for (int i = 0; i < scan_points; ++i) xs.push_back(two_pi * i / scan_points);
  const Window w = *e.support();
  std::vector<double> edges{w.lo, w.hi};
  edges.insert(edges.end(), w.interior.begin(), w.interior.end());
  std::sort(edges.begin(), edges.end());
  const int per_piece = std::max(scan_points / 8, 2);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k)
    for (int i = 0; i < per_piece; ++i)
      xs.push_back(reduce_positive(edges[k] + (edges[k + 1] - edges[k]) * i / per_piece));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  const std::size_t n = xs.size();
  std::size_t imin = 0, imax = 0;
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = out.multiplier(xs[i]);
    if (vals[i] < vals[imin]) imin = i;
    if (vals[i] > vals[imax]) imax = i;
  }
  // derivative of the multiplier is 1 - 2 pi E
  auto slope = [&e](double a) { return 1.0 - two_pi * e(a); };
  auto refine = [&](std::size_t i) {
    const double lo = i == 0 ? xs[n - 1] - two_pi : xs[i - 1];
    const double hi = i + 1 == n ? xs[0] + two_pi : xs[i + 1];
    if (std::signbit(slope(lo)) == std::signbit(slope(hi))) return xs[i];
    return find_root(slope, lo, hi, 1e-14);
  };
  out.argmin = reduce_positive(refine(imin));
  out.argmax = reduce_positive(refine(imax));
  out.spectrum_lo = std::min(out.multiplier(out.argmin), vals[static_cast<std::size_t>(imin)]);
  out.spectrum_hi = std::max(out.multiplier(out.argmax), vals[static_cast<std::size_t>(imax)]);
  out.m_value = 0.5 * (out.spectrum_hi - out.spectrum_lo);
  return out;
}

namespace {

struct SpectrumEquation {
  double epsilon;
  double delta;
  double rhs_scale;  // delta * e_{2 eps}(delta, 1) / (2 pi), scaled by e^{2 eps}

  double operator()(double alpha) const {
    return scaled_bump(alpha / delta, 2.0 * epsilon) - rhs_scale * std::cos(alpha);
  }
};

SpectrumEquation spectrum_equation(double epsilon, double delta, const QuadratureConfig& cfg) {
  if (!(epsilon > 0.0)) throw DomainError("spectrum: epsilon must be positive");
  if (!(delta > 0.0 && delta < pi / 2)) throw DomainError("spectrum: delta must lie in (0, pi/2)");
  if (epsilon > max_resolved_epsilon(delta))
    throw DomainError("spectrum: epsilon beyond the resolvable peak width");
  const double e1 = scaled_moment_e_delta_nu(2.0 * epsilon, delta, 1.0, cfg);
  return {epsilon, delta, delta * e1 / two_pi};
}

}  // namespace

double spectrum_extremum(double epsilon, double delta, const QuadratureConfig& cfg) {
  const SpectrumEquation eq = spectrum_equation(epsilon, delta, cfg);
  return find_root(eq, 0.0, delta, 1e-14);
}

double spectrum_halfwidth(double epsilon, double delta, const QuadratureConfig& cfg) {
  const SpectrumEquation eq = spectrum_equation(epsilon, delta, cfg);
  const double root = find_root(eq, 0.0, delta, 1e-14);
  // E(x) = omega_{2 eps}(x / delta) / (delta e_{2 eps}(delta, 1) cos x)
  const double norm = eq.rhs_scale * two_pi;
  std::vector<double> breaks = bump_breakpoints(2.0 * epsilon);
  for (double& b : breaks) b *= delta;
  const double tail = integrate_split(
      [&](double x) { return scaled_bump(x / delta, 2.0 * epsilon) / (norm * std::cos(x)); },
      root, delta, breaks, cfg);
  return pi - (root + two_pi * tail);
}

}  // namespace circq
