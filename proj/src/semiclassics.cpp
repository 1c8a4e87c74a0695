#include "circq/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "circq/quantize.hpp"

namespace circq {

namespace {

double kernel_convolve(const PeriodicProfile& kernel, const PeriodicProfile& u, double q,
                       const QuadratureConfig& cfg) {
  return convolve_supported(kernel, *kernel.support(), {}, u, q, cfg);
}

double clip_variance(double v, const char* operation) {
  if (v >= 0.0) return v;
  if (v > -1e-10) return 0.0;
  throw NegativeVarianceError(operation, "variance " + std::to_string(v) + " below -1e-10");
}

void require_lambda_zero(const CoherentFamily& family, const char* operation) {
  if (family.spec().lambda != 0.0)
    throw ConfigError(std::string(operation) + ": requires lambda = 0");
}

// Images of the jumps of u, shifted by 2 pi k, inside (lo, hi).
std::vector<double> jump_images(const PeriodicProfile& u, double lo, double hi) {
  std::vector<double> out;
  for (double j : u.discontinuities()) {
    for (double x = j + two_pi * std::floor((lo - j) / two_pi); x < hi; x += two_pi)
      if (x > lo) out.push_back(x);
  }
  return out;
}

}  // namespace

PeriodicProfile coherent_kernel(const CoherentFamily& family) {
  const Fiducial eta = family.eta;
  return PeriodicProfile([eta](double a) { return eta.density(-a); }, eta.support());
}

AngleContext make_angle_context(const CoherentFamily& family, int cache_grid) {
  AngleContext ctx{family, angle_multiplier(family), coherent_kernel(family), density_E(family)};
  if (cache_grid > 0) ctx.multiplier = ctx.multiplier.cached(cache_grid);
  return ctx;
}

double lower_symbol_u(const PeriodicProfile& u, double q, const CoherentFamily& family) {
  const PeriodicProfile m = quantize_multiplication(u, family);
  return kernel_convolve(coherent_kernel(family), m, q, family.cfg);
}

double lower_symbol_u_direct(const PeriodicProfile& u, double q, const CoherentFamily& family) {
  const PeriodicProfile e = density_E(family);
  const Window w = *e.support();
  const Fiducial& eta = family.eta;
  const QuadratureConfig& cfg = family.cfg;
  auto inner = [&](double alpha) {
    // int dq' E(alpha - q') u(q') over alpha - supp E
    const double lo = alpha - w.hi, hi = alpha - w.lo;
    auto breaks = jump_images(u, lo, hi);
    for (double b : w.interior) breaks.push_back(alpha - b);
    return integrate_split([&](double qp) { return e(alpha - qp) * u(qp); }, lo, hi, breaks, cfg);
  };
  const Window k = eta.support();
  return integrate_window([&](double alpha) { return eta.density(alpha - q) * inner(alpha); }, k,
                          q + k.lo, q + k.hi, q, cfg);
}

double lower_symbol_p(double p, const CoherentFamily& family) {
  const auto& t = family.table;
  const auto& s = family.spec();
  const double ratio = t.c(2.0) / t.c(1.0);
  double out = ratio * t.c(-1.0) * p;
  if (s.lambda != 0.0) {
    const double cm1_zeta = moment_c(family.eta, -1.0, s.zeta, family.cfg);
    out += s.lambda * t.c_const * cm1_zeta - t.momentum_shift();
  }
  return out;
}

double lower_symbol_angle(double q, const AngleContext& ctx) {
  if (!ctx.family.spec().standard_section())
    throw ConfigError("lower_symbol_angle: requires gamma = pi/2");
  const double d = ctx.family.spec().delta;
  const Fiducial& eta = ctx.family.eta;
  const PeriodicProfile& m = ctx.multiplier;
  const QuadratureConfig& cfg = ctx.family.cfg;
  const double x = reduce_positive(q);
  const Window k = eta.support();
  auto piece = [&](double lo, double hi, double shift) {
    return integrate_window([&](double a) { return eta.density(a - x - shift) * m(a); }, k, lo,
                            hi, x + shift, cfg);
  };
  if (x < d) return piece(x + two_pi - d, two_pi, two_pi) + piece(0.0, x + d, 0.0);
  if (x < two_pi - d) return piece(x - d, x + d, 0.0);
  return piece(0.0, x - two_pi + d, -two_pi) + piece(x - d, two_pi, 0.0);
}

double lower_symbol_angle_convolution(double q, const AngleContext& ctx) {
  return kernel_convolve(ctx.kernel, ctx.multiplier, q, ctx.family.cfg);
}

PeriodicProfile commutator_profile(const CoherentFamily& family) {
  require_lambda_zero(family, "commutator_profile");
  const PeriodicProfile e = density_E(family);
  const double c = family.table.c_const;
  return PeriodicProfile(
      [e, c](double a) { return reduce_positive(a) == 0.0 ? 0.0 : c * (1.0 - two_pi * e(a)); },
      std::nullopt, {0.0});
}

double dispersion_angle_squared(double q, const AngleContext& ctx) {
  const PeriodicProfile& m = ctx.multiplier;
  const PeriodicProfile m2([m](double a) {
    const double v = m(a);
    return v * v;
  });
  const double s1 = kernel_convolve(ctx.kernel, m, q, ctx.family.cfg);
  const double s2 = kernel_convolve(ctx.kernel, m2, q, ctx.family.cfg);
  return clip_variance(s2 - s1 * s1, "dispersion_angle");
}

double dispersion_angle_squared_central(double q, const AngleContext& ctx) {
  const double mean = kernel_convolve(ctx.kernel, ctx.multiplier, q, ctx.family.cfg);
  const PeriodicProfile& m = ctx.multiplier;
  const PeriodicProfile centred([m, mean](double a) {
    const double v = m(a) - mean;
    return v * v;
  });
  // the variance can be far below abs_tol at large eps, so only a relative
  // tolerance applies; rounding in M - mean limits it to about 1e-9
  QuadratureConfig rel = ctx.family.cfg;
  rel.abs_tol = std::numeric_limits<double>::min();
  rel.rel_tol = std::max(rel.rel_tol, 1e-9);
  return clip_variance(kernel_convolve(ctx.kernel, centred, q, rel), "dispersion_angle");
}

double dispersion_angle(double q, const AngleContext& ctx) {
  return std::sqrt(dispersion_angle_squared_central(q, ctx));
}

double dispersion_p_kinetic(const CoherentFamily& family) {
  const double eps = family.spec().epsilon, d = family.spec().delta;
  const double c = family.table.c_const;
  const double e2 = scaled_moment_e(2.0 * eps, family.cfg);
  const double integral = integrate_split(
      [eps](double x) {
        const double r = 1.0 - x * x;
        if (r <= 0.0) return 0.0;
        const double w = scaled_bump(x, 2.0 * eps);
        if (w == 0.0) return 0.0;
        return w * (2.0 * (1.0 + 3.0 * x * x) / (r * r * r) - eps * 4.0 * x * x / (r * r * r * r));
      },
      -1.0, 1.0, bump_breakpoints(2.0 * eps), family.cfg);
  return c * c * eps / (d * d) * integral / e2;
}

double kinetic_energy_integral(const CoherentFamily& family) {
  const Window w = family.eta.support();
  const double c = family.table.c_const;
  const double integral = integrate_window(
      [&](double a) {
        const double v = family.eta.derivative(a, 1);
        return v * v;
      },
      w, family.cfg);
  return c * c * integral;
}

double dispersion_p_operator(const CoherentFamily& family) {
  require_lambda_zero(family, "dispersion_p_operator");
  const BCoefficients b = b_coefficients(family);
  const Window w = family.eta.support();
  // <eta|eta''> = -int eta'^2; <eta|eta'> = 0 for real eta, so <A_p> = 0.
  const double grad2 = integrate_window(
      [&](double a) {
        const double v = family.eta.derivative(a, 1);
        return v * v;
      },
      w, family.cfg);
  return (-b.b1 * grad2 + b.b3).real();
}

double dispersion_p_squared(double p, const CoherentFamily& family) {
  const auto& t = family.table;
  const double kc = t.kappa * t.c_const;
  const double spread = t.c(-2.0) - t.c(-1.0) * t.c(-1.0);
  return clip_variance(dispersion_p_kinetic(family) + spread * kc * kc * p * p, "dispersion_p");
}

double dispersion_p(double p, const CoherentFamily& family) {
  return std::sqrt(dispersion_p_squared(p, family));
}

double heisenberg_rhs(double q, const AngleContext& ctx) {
  require_lambda_zero(ctx.family, "heisenberg_rhs");
  const double conv = kernel_convolve(ctx.kernel, ctx.density, q, ctx.family.cfg);
  return 0.5 * ctx.family.table.c_const * std::abs(1.0 - two_pi * conv);
}

double heisenberg_rhs_expectation(double q, const AngleContext& ctx) {
  const PeriodicProfile comm = commutator_profile(ctx.family);
  const Window w = *ctx.kernel.support();
  auto breaks = detail::convolution_breaks({}, comm.discontinuities(), q, w.lo, w.hi);
  breaks.insert(breaks.end(), w.interior.begin(), w.interior.end());
  const double expectation = integrate_split(
      [&](double s) { return ctx.kernel(s) * comm(q - s); }, w.lo, w.hi, breaks, ctx.family.cfg);
  return 0.5 * std::abs(expectation);
}

std::vector<UncertaintyPoint> uncertainty_grid(const AngleContext& ctx,
                                               const std::vector<double>& p_values,
                                               const std::vector<double>& q_values) {
  std::vector<double> dp(p_values.size());
  for (std::size_t i = 0; i < p_values.size(); ++i) dp[i] = dispersion_p(p_values[i], ctx.family);
  std::vector<double> da(q_values.size()), rhs(q_values.size());
  for (std::size_t j = 0; j < q_values.size(); ++j) {
    da[j] = dispersion_angle(q_values[j], ctx);
    rhs[j] = heisenberg_rhs(q_values[j], ctx);
  }
  std::vector<UncertaintyPoint> out;
  out.reserve(p_values.size() * q_values.size());
  for (std::size_t i = 0; i < p_values.size(); ++i)
    for (std::size_t j = 0; j < q_values.size(); ++j)
      out.push_back({p_values[i], q_values[j], da[j], dp[i], rhs[j], da[j] * dp[i]});
  return out;
}

FourierEigenstateRow fourier_eigenstate_row(const CoherentFamily& family) {
  const PeriodicProfile m = angle_multiplier(family);
  // the multiplier bends on the scale of the peak of E near 0 and 2 pi
  const double d = family.spec().delta;
  std::vector<double> breaks{d, two_pi - d};
  for (double b : family.eta.support().interior) breaks.push_back(b < 0.0 ? b + two_pi : b);
  const double s1 = integrate_split([&](double a) { return m(a); }, 0.0, two_pi, breaks, family.cfg);
  const double s2 = integrate_split(
      [&](double a) {
        const double v = m(a);
        return v * v;
      },
      0.0, two_pi, breaks, family.cfg);
  FourierEigenstateRow row;
  row.epsilon = family.spec().epsilon;
  row.mean = s1 / two_pi;
  row.mean_square = s2 / two_pi;
  row.dispersion =
      std::sqrt(clip_variance(row.mean_square - row.mean * row.mean, "fourier_eigenstate_table"));
  row.dispersion_p = 0.0;
  return row;
}

std::vector<FourierEigenstateRow> fourier_eigenstate_table(const std::vector<double>& epsilons,
                                                           double delta,
                                                           const QuadratureConfig& cfg) {
  std::vector<FourierEigenstateRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    FiducialSpec spec;
    spec.epsilon = eps;
    spec.delta = delta;
    rows.push_back(fourier_eigenstate_row(make_family(spec, cfg)));
  }
  return rows;
}

double uniform_angle_dispersion() { return pi / std::sqrt(3.0); }

}  // namespace circq
