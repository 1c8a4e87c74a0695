#include "circq/fiducial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace circq {

double max_resolved_epsilon(double delta) {
  const double r = delta / min_peak_width;
  return 0.5 * r * r;
}

void FiducialSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ConfigError("FiducialSpec: epsilon must be positive and finite");
  if (!(delta > 0.0 && delta < pi / 2))
    throw DomainError("FiducialSpec: delta must lie in (0, pi/2)");
  if (epsilon > max_resolved_epsilon(delta))
    throw DomainError("FiducialSpec: epsilon above " + std::to_string(max_resolved_epsilon(delta)) +
                      " makes the peak of |eta|^2 narrower than the resolvable width");
  if (!(gamma >= 0.0 && gamma < two_pi)) throw ConfigError("FiducialSpec: gamma must lie in [0, 2 pi)");
  if (!(zeta >= 0.0 && zeta < two_pi)) throw ConfigError("FiducialSpec: zeta must lie in [0, 2 pi)");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ConfigError("FiducialSpec: lambda must be nonnegative");
}

bool FiducialSpec::admissible() const {
  // [-delta, delta] inside (gamma - pi, gamma) for gamma in [0, 2 pi)
  return delta < gamma && delta < pi - gamma;
}

void FiducialSpec::require_admissible() const {
  validate();
  if (!admissible())
    throw AdmissibilityError("fiducial support [-" + std::to_string(delta) + ", " +
                             std::to_string(delta) + "] is not inside (gamma - pi, gamma) for gamma = " +
                             std::to_string(gamma));
}

bool FiducialSpec::standard_section() const { return std::abs(gamma - pi / 2) < 1e-15; }

double scaled_bump(double x, double epsilon) {
  const double r = 1.0 - x * x;
  if (!(r > 0.0)) return 0.0;
  return std::exp(-epsilon * x * x / r);
}

double bump(double x, double epsilon) {
  const double r = 1.0 - x * x;
  if (!(r > 0.0)) return 0.0;
  return std::exp(-epsilon / r);
}

namespace {

// log-derivative g = omega'/omega and g'
double bump_log_slope(double x, double epsilon) {
  const double r = 1.0 - x * x;
  return -2.0 * epsilon * x / (r * r);
}

double bump_log_curvature(double x, double epsilon) {
  const double r = 1.0 - x * x;
  return -2.0 * epsilon * (1.0 + 3.0 * x * x) / (r * r * r);
}

double derivative_factor(double x, double epsilon, int order) {
  switch (order) {
    case 0:
      return 1.0;
    case 1:
      return bump_log_slope(x, epsilon);
    case 2: {
      const double g = bump_log_slope(x, epsilon);
      return g * g + bump_log_curvature(x, epsilon);
    }
    default:
      throw ConfigError("bump_derivative: order must be 1 or 2");
  }
}

}  // namespace

double bump_derivative(double x, double epsilon, int order) {
  if (order != 1 && order != 2) throw ConfigError("bump_derivative: order must be 1 or 2");
  const double w = bump(x, epsilon);
  if (w == 0.0) return 0.0;
  return w * derivative_factor(x, epsilon, order);
}

std::vector<double> bump_breakpoints(double epsilon) {
  std::vector<double> b{0.0};
  const double s = 1.0 / std::sqrt(std::max(epsilon, 1.0));
  for (double k : {1.0, 4.0, 16.0})
    if (k * s < 1.0) {
      b.push_back(k * s);
      b.push_back(-k * s);
    }
  return b;
}

double scaled_moment_e(double epsilon, const QuadratureConfig& cfg) {
  if (epsilon < 0.0) throw DomainError("moment_e: epsilon must be nonnegative");
  return integrate_split([epsilon](double x) { return scaled_bump(x, epsilon); }, -1.0, 1.0,
                         bump_breakpoints(epsilon), cfg);
}

double scaled_moment_e_delta_nu(double epsilon, double delta, double nu,
                                const QuadratureConfig& cfg) {
  if (epsilon < 0.0) throw DomainError("moment_e_delta_nu: epsilon must be nonnegative");
  if (!(delta >= 0.0 && delta < pi / 2))
    throw DomainError("moment_e_delta_nu: require 0 <= delta < pi/2");
  return integrate_split(
      [=](double x) {
        const double w = scaled_bump(x, epsilon);
        return w == 0.0 ? 0.0 : w / std::pow(std::cos(delta * x), nu);
      },
      -1.0, 1.0, bump_breakpoints(epsilon), cfg);
}

double moment_e(double epsilon, const QuadratureConfig& cfg) {
  return std::exp(-epsilon) * scaled_moment_e(epsilon, cfg);
}

double moment_e_delta_nu(double epsilon, double delta, double nu, const QuadratureConfig& cfg) {
  return std::exp(-epsilon) * scaled_moment_e_delta_nu(epsilon, delta, nu, cfg);
}

Fiducial::Fiducial(const FiducialSpec& spec, const QuadratureConfig& cfg) : spec_(spec) {
  spec_.validate();
  amplitude_ = 1.0 / std::sqrt(spec_.delta * scaled_moment_e(2.0 * spec_.epsilon, cfg));
  if (!std::isfinite(amplitude_))
    throw NumericalError("normalize", "fiducial normalisation is not finite");
}

Window Fiducial::support() const {
  Window w{-spec_.delta, spec_.delta, bump_breakpoints(2.0 * spec_.epsilon)};
  for (double& b : w.interior) b *= spec_.delta;
  return w;
}

double Fiducial::derivative(double alpha, int order) const {
  if (order < 0 || order > 2) throw ConfigError("Fiducial::derivative: order must be 0, 1 or 2");
  const double x = reduce_signed(alpha) / spec_.delta;
  const double w = scaled_bump(x, spec_.epsilon);
  if (w == 0.0) return 0.0;
  return amplitude_ * w * derivative_factor(x, spec_.epsilon, order) /
         std::pow(spec_.delta, order);
}

double Fiducial::density(double alpha) const {
  const double v = derivative(alpha, 0);
  return v * v;
}

double eta(double alpha, const FiducialSpec& spec) { return Fiducial(spec)(alpha); }

double moment_c(const Fiducial& eta, double nu, double angle, const QuadratureConfig& cfg) {
  const auto w = eta.support();
  const bool polynomial = nu <= 0.0 && std::floor(nu) == nu;
  if (!polynomial) {
    // angle - alpha sweeps [angle - hi, angle - lo]; it must stay inside (0, pi)
    const double start = reduce_positive(angle - w.hi);
    if (!(start > 0.0 && start + (w.hi - w.lo) < pi))
      throw AdmissibilityError("moment_c: sin(angle - alpha) must stay positive on supp eta");
  }
  return integrate_window(
      [&](double a) {
        const double d = eta.density(a);
        return d == 0.0 ? 0.0 : d / std::pow(std::sin(angle - a), nu);
      },
      w, cfg);
}

double MomentTable::c(double nu) const {
  const auto it = c_nu.find(nu);
  if (it == c_nu.end()) throw ConfigError("MomentTable: c_nu not tabulated for nu = " + std::to_string(nu));
  return it->second;
}

std::vector<double> default_nu_range() { return {-2, -1, 0, 1, 2, 3, 4, 5}; }

MomentTable moments(const Fiducial& eta, std::span<const double> extra_nu,
                    const QuadratureConfig& cfg) {
  const FiducialSpec& spec = eta.spec();
  spec.require_admissible();

  std::vector<double> nus = default_nu_range();
  nus.insert(nus.end(), extra_nu.begin(), extra_nu.end());
  std::sort(nus.begin(), nus.end());
  nus.erase(std::unique(nus.begin(), nus.end()), nus.end());

  MomentTable t;
  t.lambda = spec.lambda;
  const double two_eps = 2.0 * spec.epsilon;
  const double e_scaled = scaled_moment_e(two_eps, cfg);
  t.e_2eps = std::exp(-two_eps) * e_scaled;
  for (double nu : nus) {
    if (spec.standard_section()) {
      const double e_nu = scaled_moment_e_delta_nu(two_eps, spec.delta, nu, cfg);
      t.e_2eps_delta_nu[nu] = std::exp(-two_eps) * e_nu;
      t.c_nu[nu] = nu == 0.0 ? 1.0 : e_nu / e_scaled;
    } else {
      t.c_nu[nu] = nu == 0.0 ? 1.0 : moment_c(eta, nu, spec.gamma, cfg);
    }
  }
  for (const auto& [nu, c] : t.c_nu)
    if (!std::isfinite(c) || c <= 0.0)
      throw NumericalError("moments", "c_nu not finite and positive for nu = " + std::to_string(nu));
  const double c1 = t.c_nu.at(1.0), c2 = t.c_nu.at(2.0);
  t.kappa = spec.kappa_mode == KappaMode::Ratio ? c2 / c1 : 1.0;
  t.c_eta = two_pi * c1 / t.kappa;
  t.c_const = spec.kappa_mode == KappaMode::Ratio ? 1.0 : c2 / (t.kappa * c1);
  const auto w = eta.support();
  t.a_const = integrate_window([&](double q) { return std::sin(spec.zeta - q) * f_jm(q, 0, 2, eta); },
                               w, cfg) /
              (t.kappa * c1);
  return t;
}

MomentTable moments(const FiducialSpec& spec, std::span<const double> extra_nu,
                    const QuadratureConfig& cfg) {
  spec.require_admissible();
  return moments(Fiducial(spec, cfg), extra_nu, cfg);
}

double f_jm(double q, int j, int m, const Fiducial& eta) {
  if (j < 0 || j > 2) throw ConfigError("f_jm: j must be 0, 1 or 2");
  const double v = eta(q);
  if (v == 0.0) return 0.0;
  const double s = std::sin(eta.spec().gamma - q);
  return v * eta.derivative(q, j) / std::pow(s, m);
}

CoherentFamily make_family(const FiducialSpec& spec, const QuadratureConfig& cfg) {
  spec.require_admissible();
  cfg.validate();
  Fiducial eta(spec, cfg);
  MomentTable table = moments(eta, {}, cfg);
  return {std::move(eta), std::move(table), cfg};
}

}  // namespace circq
