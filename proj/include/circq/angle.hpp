#pragma once

// The quantum angle: A_a is multiplication by (E * a)(alpha), a continuous
// regularisation of the sawtooth a(alpha) = alpha on [0, 2 pi). Its spectrum
// is the range of that multiplier.

#include "circq/fiducial.hpp"
#include "circq/quadrature.hpp"

namespace circq {

/// The 2 pi-periodic sawtooth, valued in [0, 2 pi).
double angle_function(double alpha);

/// angle_function as a profile with its jump at 0 registered.
PeriodicProfile angle_function_profile();

/// The periodic correction F_{eta;gamma}; jumps by +2 pi at alpha = 0 and has
/// derivative -2 pi E elsewhere. Requires gamma in [0, pi).
PeriodicProfile F_profile(const CoherentFamily& family);

/// <q>_E = int_{gamma - pi}^{gamma} q E(q) dq.
double density_mean(const CoherentFamily& family);

/// (E * a)(alpha) = a(alpha) + F(alpha) - <q>_E; continuous. Requires gamma in [0, pi).
PeriodicProfile angle_multiplier(const CoherentFamily& family);

struct AngleProfile {
  PeriodicProfile multiplier;  ///< (E * a)(alpha) = a + F - <q>_E
  double mean_q = 0.0;
  double spectrum_lo = 0.0;
  double spectrum_hi = 0.0;
  double m_value = 0.0;  ///< half-width (hi - lo) / 2
  double argmin = 0.0;   ///< where the multiplier attains spectrum_lo
  double argmax = 0.0;
};

/// Closed-form multiplier plus its range, located by a `scan_points` scan and
/// refined on 1 - 2 pi E = 0.
AngleProfile angle_operator(const CoherentFamily& family, int scan_points = 4096);

/// The root alpha* in (0, delta) of
///   omega_{2 eps}(alpha/delta) = (delta e_{2 eps}(delta, 1) / 2 pi) cos(alpha),
/// i.e. where the multiplier of the gamma = pi/2 bump family is minimal.
/// BracketError when no sign change exists on (0, delta).
double spectrum_extremum(double epsilon, double delta,
                         const QuadratureConfig& cfg = precise_quadrature);

/// m(eps, delta): the spectrum is [pi - m, pi + m]; computed as
/// pi - (E * a)(alpha*) from the root above.
double spectrum_halfwidth(double epsilon, double delta,
                          const QuadratureConfig& cfg = precise_quadrature);

}  // namespace circq
