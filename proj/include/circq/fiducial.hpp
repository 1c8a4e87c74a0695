#pragma once

#include <map>
#include <span>
#include <vector>

#include "circq/quadrature.hpp"

namespace circq {

/// How the section length kappa is fixed: kappa = c2/c1 makes the momentum
/// operator exactly -i d/dalpha; kappa = 1 leaves c2/c1 as a factor.
enum class KappaMode { Ratio, Unit };

/// Parameters of the compactly supported fiducial vector
///   eta(alpha) = omega_eps(alpha / delta) / sqrt(delta e_{2 eps})
/// and of the section sigma(p, q) = (R(q)(kappa p + lambda), q).
struct FiducialSpec {
  double epsilon = 1.0;  ///< decay rate of the bump, > 0
  double delta = 0.3;    ///< half-width of the support, in (0, pi/2)
  double gamma = pi / 2;
  double zeta = 0.0;
  double lambda = 0.0;
  KappaMode kappa_mode = KappaMode::Ratio;

  /// Range checks on the individual fields (ConfigError); DomainError when
  /// epsilon exceeds max_resolved_epsilon(delta).
  void validate() const;
  /// supp eta = [-delta, delta] must sit inside (gamma - pi, gamma) mod 2 pi.
  bool admissible() const;
  /// validate() plus AdmissibilityError when !admissible().
  void require_admissible() const;
  bool standard_section() const;  ///< gamma == pi/2 (cosine reduction applies)
};

/// Smallest resolvable width delta / sqrt(2 eps) of |eta|^2. Narrower peaks
/// collapse onto their centre in double precision near alpha = pi.
inline constexpr double min_peak_width = 2e-6;

/// Largest epsilon whose peak width is at least min_peak_width.
double max_resolved_epsilon(double delta);

/// omega_eps(x) = exp(-eps / (1 - x^2)) on |x| < 1, zero elsewhere.
double bump(double x, double epsilon);

/// Analytic first or second derivative of bump().
double bump_derivative(double x, double epsilon, int order);

/// exp(eps) * omega_eps(x) = exp(-eps x^2 / (1 - x^2)). Equals 1 at x = 0, so
/// integrals at large eps stay representable; ratios of bump integrals use it.
double scaled_bump(double x, double epsilon);

/// Breakpoints in (-1, 1) at multiples of the width 1/sqrt(eps) of the scaled
/// bump, so that adaptive quadrature sees the peak at large eps.
std::vector<double> bump_breakpoints(double epsilon);

/// e_eps = int_{-1}^{1} omega_eps(x) dx.
double moment_e(double epsilon, const QuadratureConfig& cfg = precise_quadrature);

/// e_eps(delta, nu) = int_{-1}^{1} omega_eps(x) / cos(delta x)^nu dx, for 0 <= delta < pi/2.
double moment_e_delta_nu(double epsilon, double delta, double nu,
                         const QuadratureConfig& cfg = precise_quadrature);

/// Scaled counterparts: e^{eps} times the quantities above.
double scaled_moment_e(double epsilon, const QuadratureConfig& cfg = precise_quadrature);
double scaled_moment_e_delta_nu(double epsilon, double delta, double nu,
                                const QuadratureConfig& cfg = precise_quadrature);

/// The normalised, even fiducial vector with its analytic derivatives.
class Fiducial {
 public:
  explicit Fiducial(const FiducialSpec& spec, const QuadratureConfig& cfg = precise_quadrature);

  const FiducialSpec& spec() const { return spec_; }
  /// [-delta, delta] with breakpoints at the width of |eta|^2.
  Window support() const;

  double operator()(double alpha) const { return derivative(alpha, 0); }
  /// d^order eta / dalpha^order, order in {0, 1, 2}; 2 pi-periodic.
  double derivative(double alpha, int order) const;
  /// |eta(alpha)|^2
  double density(double alpha) const;

 private:
  FiducialSpec spec_;
  double amplitude_;  // 1 / sqrt(delta * scaled e_{2 eps})
};

/// Convenience: eta^{(eps, delta)}(alpha) for `spec` (re-normalises per call).
double eta(double alpha, const FiducialSpec& spec);

/// c_nu(eta, angle) = int |eta|^2 / sin(angle - alpha)^nu by direct quadrature
/// over supp eta. Requires sin(angle - alpha) > 0 on the support.
double moment_c(const Fiducial& eta, double nu, double angle,
                const QuadratureConfig& cfg = precise_quadrature);

/// Cached normalisation and moment integrals of a fiducial vector.
struct MomentTable {
  std::map<double, double> c_nu;             ///< c_nu(eta, gamma)
  double e_2eps = 0.0;                       ///< e_{2 eps}
  std::map<double, double> e_2eps_delta_nu;  ///< e_{2 eps}(delta, nu); gamma = pi/2 only
  double c_eta = 0.0;                        ///< (2 pi / kappa) c_1
  double kappa = 1.0;
  double c_const = 1.0;  ///< c_2 / (kappa c_1)
  double a_const = 0.0;  ///< (1/(kappa c_1)) int sin(zeta - q) f_{0;2}(q) dq
  double lambda = 0.0;

  /// lambda * a, the constant shift in A_p.
  double momentum_shift() const { return lambda * a_const; }
  /// Stored c_nu; ConfigError if nu was not tabulated.
  double c(double nu) const;
};

/// nu = -2 .. 5, enough for every operator and dispersion formula.
std::vector<double> default_nu_range();

/// Tabulate c_nu for default_nu_range() together with `extra_nu`.
/// Throws AdmissibilityError for an inadmissible spec.
MomentTable moments(const Fiducial& eta, std::span<const double> extra_nu = {},
                    const QuadratureConfig& cfg = precise_quadrature);
MomentTable moments(const FiducialSpec& spec, std::span<const double> extra_nu = {},
                    const QuadratureConfig& cfg = precise_quadrature);

/// f_{j;m}(q) = eta(q) d^j eta(q) / sin(gamma - q)^m, zero off the support.
double f_jm(double q, int j, int m, const Fiducial& eta);

/// A fiducial vector together with its moment table and the quadrature
/// settings every derived quantity is computed with.
struct CoherentFamily {
  Fiducial eta;
  MomentTable table;
  QuadratureConfig cfg;

  const FiducialSpec& spec() const { return eta.spec(); }
};

/// Validates admissibility and tabulates the moments.
CoherentFamily make_family(const FiducialSpec& spec,
                           const QuadratureConfig& cfg = precise_quadrature);

}  // namespace circq
