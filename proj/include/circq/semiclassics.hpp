#pragma once

// Lower symbols (expectations in the coherent states eta_{p,q}) of the
// quantised angle, momentum and commutator, and the resulting dispersions.

#include <vector>

#include "circq/angle.hpp"
#include "circq/fiducial.hpp"
#include "circq/quadrature.hpp"

namespace circq {

/// Everything a sweep over (p, q) reuses: the family, the angle multiplier
/// E * a, the coherent-state kernel eta~^2(alpha) = |eta(-alpha)|^2 and E.
struct AngleContext {
  CoherentFamily family;
  PeriodicProfile multiplier;
  PeriodicProfile kernel;
  PeriodicProfile density;
};

/// Build the context. With cache_grid > 0 the multiplier is tabulated on that
/// many points (fast sweeps); 0 keeps exact evaluation.
AngleContext make_angle_context(const CoherentFamily& family, int cache_grid = 0);

/// |eta(-alpha)|^2, supported on [-delta, delta].
PeriodicProfile coherent_kernel(const CoherentFamily& family);

/// u-check(q) = [eta~^2 * (E * u)](q).
double lower_symbol_u(const PeriodicProfile& u, double q, const CoherentFamily& family);
/// Same quantity as the iterated integral
///   int d alpha |eta(alpha - q)|^2 int dq' E(alpha - q') u(q').
double lower_symbol_u_direct(const PeriodicProfile& u, double q, const CoherentFamily& family);

/// p-check = (c2/c1) c_{-1}(eta, gamma) p + lambda (c2/(kappa c1)) c_{-1}(eta, zeta) - lambda a.
double lower_symbol_p(double p, const CoherentFamily& family);

/// q-check(q) through the split-window form (wrap-around near 0 and 2 pi).
/// Requires gamma = pi/2.
double lower_symbol_angle(double q, const AngleContext& ctx);
/// q-check(q) as the plain kernel convolution of the multiplier.
double lower_symbol_angle_convolution(double q, const AngleContext& ctx);

/// Multiplier of -i [A_p, A_a]: c (1 - 2 pi E(alpha)), and 0 at alpha = 0 mod 2 pi.
/// Requires lambda = 0.
PeriodicProfile commutator_profile(const CoherentFamily& family);

/// (Delta A_a)^2 at q from [eta~^2 * M^2] - [eta~^2 * M]^2. Values in
/// (-1e-10, 0) are clipped to 0; below that NegativeVarianceError.
double dispersion_angle_squared(double q, const AngleContext& ctx);
/// Same variance as the kernel-weighted second central moment of M, integrated
/// to relative tolerance only. Free of cancellation, so it stays accurate when
/// the variance is tiny (large eps).
double dispersion_angle_squared_central(double q, const AngleContext& ctx);
/// sqrt of the central form.
double dispersion_angle(double q, const AngleContext& ctx);

/// First term of (Delta A_p)^2: c^2 (eps / delta^2) (1 / e_{2 eps}) int omega_{2 eps}(x) K(x) dx.
double dispersion_p_kinetic(const CoherentFamily& family);
/// c^2 int eta'(alpha)^2 d alpha, an independent evaluation of the term above.
double kinetic_energy_integral(const CoherentFamily& family);
/// <eta|A_{p^2}|eta> - <eta|A_p|eta>^2 on the state eta_{0,q}; q-independent.
/// Reported as a diagnostic beside dispersion_p_squared(0).
double dispersion_p_operator(const CoherentFamily& family);
/// (Delta A_p)^2 = kinetic + (c_{-2} - c_{-1}^2) (kappa c)^2 p^2.
double dispersion_p_squared(double p, const CoherentFamily& family);
double dispersion_p(double p, const CoherentFamily& family);

/// (1/2) c |1 - 2 pi (eta~^2 * E)(q)|.
double heisenberg_rhs(double q, const AngleContext& ctx);
/// (1/2) |<eta_{p,q}| [A_p, A_a] |eta_{p,q}>| from the commutator profile.
double heisenberg_rhs_expectation(double q, const AngleContext& ctx);

struct UncertaintyPoint {
  double p = 0.0;
  double q = 0.0;
  double delta_a = 0.0;
  double delta_p = 0.0;
  double rhs = 0.0;
  double product = 0.0;
};

/// Row-major grid (p outer, q inner). The q-only and p-only factors are
/// evaluated once per abscissa.
std::vector<UncertaintyPoint> uncertainty_grid(const AngleContext& ctx,
                                               const std::vector<double>& p_values,
                                               const std::vector<double>& q_values);

struct FourierEigenstateRow {
  double epsilon = 0.0;
  double mean = 0.0;        ///< <A_a> = (1/2 pi) int M
  double mean_square = 0.0; ///< <A_a^2> = (1/2 pi) int M^2
  double dispersion = 0.0;  ///< Delta A_a
  double dispersion_p = 0.0;///< Delta A_p, zero on eigenstates of A_p
};

/// Angle moments on the Fourier exponentials e_m (independent of m), one row
/// per epsilon. Uses the Ratio kappa mode and gamma = pi/2.
std::vector<FourierEigenstateRow> fourier_eigenstate_table(
    const std::vector<double>& epsilons, double delta,
    const QuadratureConfig& cfg = precise_quadrature);
FourierEigenstateRow fourier_eigenstate_row(const CoherentFamily& family);

/// Dispersion of a uniformly distributed angle on [0, 2 pi): pi / sqrt(3).
double uniform_angle_dispersion();

}  // namespace circq
