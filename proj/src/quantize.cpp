#include "circq/quantize.hpp"

#include <cmath>

namespace circq {

namespace {

constexpr cplx I{0.0, 1.0};

cplx ipow(cplx base, int k) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

// (u * B)(alpha) for a kernel B supported on `support`.
cplx convolve_kernel(const ComplexFunction& kernel, const Window& support,
                     const PeriodicProfile& u, double alpha, const QuadratureConfig& cfg) {
  return convolve_supported(kernel, support, {}, u, alpha, cfg);
}

}  // namespace

Coefficient Coefficient::constant(cplx value) {
  Coefficient c;
  c.constant_ = value;
  return c;
}

Coefficient Coefficient::function(ComplexFunction f) {
  Coefficient c;
  c.f_ = std::move(f);
  return c;
}

cplx Coefficient::operator()(double alpha) const {
  if (constant_) return *constant_;
  if (f_) return f_(alpha);
  return {};
}

DiffOperator::DiffOperator(std::vector<Coefficient> coefficients)
    : coeff_(std::move(coefficients)) {
  if (coeff_.size() > 3) throw ConfigError("DiffOperator: order above 2 is not supported");
}

int DiffOperator::order() const {
  for (int k = static_cast<int>(coeff_.size()) - 1; k >= 0; --k)
    if (!coeff_[static_cast<std::size_t>(k)].is_zero()) return k;
  return 0;
}

const Coefficient& DiffOperator::coefficient(int k) const {
  static const Coefficient zero = Coefficient::zero();
  if (k < 0) throw ConfigError("DiffOperator::coefficient: negative order");
  return k < static_cast<int>(coeff_.size()) ? coeff_[static_cast<std::size_t>(k)] : zero;
}

cplx DiffOperator::symbol(int n, double alpha) const {
  cplx s{};
  for (std::size_t k = 0; k < coeff_.size(); ++k) {
    if (coeff_[k].is_zero()) continue;
    s += coeff_[k](alpha) * ipow(I * static_cast<double>(n), static_cast<int>(k));
  }
  return s;
}

cplx DiffOperator::apply_exponential(int n, double alpha) const {
  return symbol(n, alpha) * std::exp(I * (n * alpha));
}

double DiffOperator::max_imaginary_coefficient(int samples) const {
  double worst = 0.0;
  for (const auto& c : coeff_) {
    if (c.is_zero()) continue;
    if (c.constant_value()) {
      worst = std::max(worst, std::abs(c.constant_value()->imag()));
      continue;
    }
    for (int i = 0; i < samples; ++i)
      worst = std::max(worst, std::abs(c(two_pi * i / samples).imag()));
  }
  return worst;
}

Eigen::MatrixXcd fourier_matrix(const DiffOperator& op, int n_max, int grid) {
  if (n_max < 0) throw ConfigError("fourier_matrix: n_max must be >= 0");
  if (grid < 4 * n_max + 2) throw ConfigError("fourier_matrix: grid too coarse for n_max");
  const int dim = 2 * n_max + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 0; k <= 2; ++k) {
    const Coefficient& c = op.coefficient(k);
    if (c.is_zero()) continue;
    // hat c_k(j) for j = -2 n_max .. 2 n_max
    std::vector<cplx> hat(static_cast<std::size_t>(2 * dim - 1));
    if (c.constant_value()) {
      hat[static_cast<std::size_t>(dim - 1)] = *c.constant_value();
    } else {
      std::vector<cplx> samples(static_cast<std::size_t>(grid));
      for (int g = 0; g < grid; ++g) samples[static_cast<std::size_t>(g)] = c(two_pi * g / grid);
      for (int j = -(dim - 1); j <= dim - 1; ++j) {
        cplx acc{};
        for (int g = 0; g < grid; ++g)
          acc += samples[static_cast<std::size_t>(g)] * std::exp(-I * (two_pi * j * g / grid));
        hat[static_cast<std::size_t>(j + dim - 1)] = acc / static_cast<double>(grid);
      }
    }
    for (int r = 0; r < dim; ++r) {
      for (int col = 0; col < dim; ++col) {
        const int n = col - n_max;
        const int j = r - col;
        m(r, col) += ipow(I * static_cast<double>(n), k) * hat[static_cast<std::size_t>(j + dim - 1)];
      }
    }
  }
  return m;
}

PeriodicProfile density_E(const CoherentFamily& family) {
  const double gamma = family.spec().gamma;
  const double scale = two_pi / (family.table.kappa * family.table.c_eta);
  const Fiducial eta = family.eta;
  return PeriodicProfile(
      [eta, gamma, scale](double alpha) {
        const double d = eta.density(alpha);
        return d == 0.0 ? 0.0 : scale * d / std::sin(gamma - reduce_signed(alpha));
      },
      eta.support());
}

PeriodicProfile quantize_multiplication(const PeriodicProfile& u, const CoherentFamily& family) {
  const PeriodicProfile e = density_E(family);
  const QuadratureConfig cfg = family.cfg;
  return PeriodicProfile([e, u, cfg](double alpha) { return periodic_convolve(e, u, alpha, cfg); });
}

cplx fourier_exponential_constant(int n, const CoherentFamily& family) {
  const PeriodicProfile e = density_E(family);
  const auto w = *e.support();
  return integrate_window([&](double q) { return e(q) * std::exp(-I * (n * q)); }, w, family.cfg);
}

DiffOperator quantize_p(const CoherentFamily& family) {
  const auto& t = family.table;
  return DiffOperator({Coefficient::constant(-t.momentum_shift()),
                       Coefficient::constant(-I * t.c_const)});
}

BCoefficients b_coefficients(const CoherentFamily& family) {
  const Fiducial eta = family.eta;
  const FiducialSpec& s = family.spec();
  const double gamma = s.gamma, zeta = s.zeta, lambda = s.lambda;
  const double kappa = family.table.kappa;
  const double c1 = family.table.c(1.0), c2 = family.table.c(2.0);
  const double k2c1 = kappa * kappa * c1;

  BCoefficients b;
  b.support = eta.support();
  b.lambda_zero = lambda == 0.0;
  auto f = [eta](int j, int m, double q) { return f_jm(q, j, m, eta); };

  b.B[0] = [=](double q) -> cplx { return -f(0, 3, q) / k2c1; };
  b.B[1] = [=](double q) -> cplx {
    return I * (2.0 * lambda / k2c1) * f(0, 3, q) * std::sin(zeta - q);
  };
  b.B[2] = [=](double q) -> cplx {
    const double cg = std::cos(gamma - q), sz = std::sin(zeta - q), cz = std::cos(zeta - q);
    const double f03 = f(0, 3, q);
    cplx acc = -f(2, 3, q) - 3.0 * f(1, 4, q) * cg - 3.0 * f(0, 5, q) * cg * cg - f03;
    if (lambda != 0.0) {
      acc += lambda * lambda * f03 * sz * sz + I * 2.0 * lambda * f(1, 3, q) * sz -
             I * lambda * f03 * cz + I * lambda * 3.0 * f(0, 4, q) * sz * cg;
    }
    return acc / k2c1;
  };
  b.B[3] = [=](double q) -> cplx { return c2 / (kappa * c1) * f(0, 2, q); };
  b.B[4] = [=](double q) -> cplx {
    return lambda / (kappa * c1) * std::sin(zeta - q) * f(0, 2, q);
  };

  const auto w = b.support;
  b.b1 = integrate_window(b.B[0], w, family.cfg);
  b.b2 = b.lambda_zero ? cplx{} : integrate_window(b.B[1], w, family.cfg);
  b.b3 = integrate_window(b.B[2], w, family.cfg);
  return b;
}

DiffOperator quantize_p2(const BCoefficients& b) {
  return DiffOperator({Coefficient::constant(b.b3),
                       b.lambda_zero ? Coefficient::zero() : Coefficient::constant(b.b2),
                       Coefficient::constant(b.b1)});
}

DiffOperator quantize_p2(const CoherentFamily& family) {
  return quantize_p2(b_coefficients(family));
}

DiffOperator quantize_pu(const PeriodicProfile& u, const BCoefficients& b,
                         const QuadratureConfig& cfg) {
  const ComplexFunction b4 = b.B[3], b5 = b.B[4];
  const Window w = b.support;
  auto m1 = Coefficient::function(
      [=](double a) { return -I * convolve_kernel(b4, w, u, a, cfg); });
  auto m0 = b.lambda_zero ? Coefficient::zero()
                          : Coefficient::function(
                                [=](double a) { return -convolve_kernel(b5, w, u, a, cfg); });
  return DiffOperator({m0, m1});
}

DiffOperator quantize_pu(const PeriodicProfile& u, const CoherentFamily& family) {
  return quantize_pu(u, b_coefficients(family), family.cfg);
}

DiffOperator quantize_p2u(const PeriodicProfile& u, const BCoefficients& b,
                          const QuadratureConfig& cfg) {
  const ComplexFunction b1 = b.B[0], b2 = b.B[1], b3 = b.B[2];
  const Window w = b.support;
  auto m2 = Coefficient::function([=](double a) { return convolve_kernel(b1, w, u, a, cfg); });
  auto m1 = b.lambda_zero
                ? Coefficient::zero()
                : Coefficient::function([=](double a) { return convolve_kernel(b2, w, u, a, cfg); });
  auto m0 = Coefficient::function([=](double a) { return convolve_kernel(b3, w, u, a, cfg); });
  return DiffOperator({m0, m1, m2});
}

DiffOperator quantize_p2u(const PeriodicProfile& u, const CoherentFamily& family) {
  return quantize_p2u(u, b_coefficients(family), family.cfg);
}

double imaginary_bracket(const CoherentFamily& family) {
  const auto w = family.eta.support();
  const double gamma = family.spec().gamma;
  return integrate_window(
      [&](double q) {
        return std::cos(gamma - q) * f_jm(q, 0, 3, family.eta) + f_jm(q, 1, 2, family.eta);
      },
      w, family.cfg);
}

std::vector<cplx> cs_fourier_coefficients(double p, double q, int n_lo, int n_hi,
                                          const CoherentFamily& family) {
  if (n_hi < n_lo) throw ConfigError("cs_fourier_coefficients: empty n range");
  const auto& s = family.spec();
  const double kappa = family.table.kappa;
  const auto w = family.eta.support();
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    const cplx integral = integrate_window(
        [&](double a) {
          const double phase =
              -n * a + kappa * p * std::cos(a - s.gamma) + s.lambda * std::cos(a - s.zeta);
          return std::exp(I * phase) * family.eta(a);
        },
        w, family.cfg);
    out.push_back(std::exp(-I * (n * q)) * integral / two_pi);
  }
  return out;
}

double shift_violation(const CoherentFamily& family, int n_max, std::span<const double> p_grid) {
  double worst = 0.0;
  for (double p : p_grid) {
    const auto cn = cs_fourier_coefficients(p, 0.0, -n_max, n_max, family);
    for (int n = -n_max; n <= n_max; ++n) {
      const cplx c0 = cs_fourier_coefficients(p - n, 0.0, 0, 0, family).front();
      worst = std::max(worst, std::abs(std::abs(cn[static_cast<std::size_t>(n + n_max)]) - std::abs(c0)));
    }
  }
  return worst;
}

}  // namespace circq
