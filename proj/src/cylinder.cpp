#include "circq/cylinder.hpp"

#include <cmath>
#include <string>

namespace circq {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// Gaussian tails are negligible beyond this many sigma.
constexpr double kSupportSigmas = 40.0;

OperatorMatrix build(int n_max, const std::function<cplx(int, int)>& entry) {
  const int dim = 2 * n_max + 1;
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = entry(r - n_max, c - n_max);
  return make_operator(std::move(m), n_max);
}

}  // namespace

void CylinderModel::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("cylinder: sigma must be positive");
  if (n_max < 0) throw ConfigError("cylinder: n_max must be >= 0");
  if (lattice_cutoff < 0) throw ConfigError("cylinder: lattice_cutoff must be >= 0");
}

double CylinderModel::w(double p) const {
  return std::exp(-p * p / (2.0 * sigma * sigma)) / std::sqrt(two_pi * sigma * sigma);
}

int CylinderModel::resolved_cutoff() const {
  if (lattice_cutoff > 0) return lattice_cutoff;
  return static_cast<int>(std::ceil(sigma * std::sqrt(2.0 * std::log(1e17)))) + 2;
}

double CylinderModel::tail_bound() const {
  const double edge = resolved_cutoff() + 0.5;
  return 2.0 * w(edge) + std::erfc(edge / (sigma * std::sqrt(2.0)));
}

namespace {

void require_lattice(const CylinderModel& model, const char* operation) {
  model.validate();
  const double tail = model.tail_bound();
  if (tail > 1e-12) {
    throw TruncationError(operation, "lattice cutoff " + std::to_string(model.resolved_cutoff()) +
                                         " leaves a tail of " + std::to_string(tail));
  }
}

}  // namespace

double normalization_N(double p, const CylinderModel& model) {
  require_lattice(model, "normalization_N");
  const int centre = static_cast<int>(std::lround(p));
  const int cut = model.resolved_cutoff();
  double sum = 0.0;
  for (int n = centre - cut; n <= centre + cut; ++n) sum += model.w(p - n);
  return sum;
}

double normalization_N_poisson(double p, const CylinderModel& model) {
  model.validate();
  const double s2 = model.sigma * model.sigma;
  double sum = 1.0;
  for (int n = 1;; ++n) {
    const double damp = std::exp(-2.0 * pi * pi * s2 * n * n);
    if (damp < 1e-18) break;
    sum += 2.0 * std::cos(two_pi * n * p) * damp;
  }
  return sum;
}

double overlap(int n, int n2, const CylinderModel& model) {
  const double d = n - n2;
  return std::exp(-d * d / (8.0 * model.sigma * model.sigma));
}

double overlap_quadrature(int n, int n2, const CylinderModel& model, const QuadratureConfig& cfg) {
  model.validate();
  const double mid = 0.5 * (n + n2);
  const double half = 0.5 * std::abs(n - n2) + kSupportSigmas * model.sigma;
  return integrate([&](double p) { return std::sqrt(model.w(n, p) * model.w(n2, p)); }, mid - half,
                   mid + half, cfg);
}

OperatorMatrix OperatorMatrix::crop(int inner) const {
  if (inner < 0 || inner > n_max) throw ConfigError("OperatorMatrix::crop: inner out of range");
  const int off = n_max - inner;
  return make_operator(entries.block(off, off, 2 * inner + 1, 2 * inner + 1), inner);
}

OperatorMatrix make_operator(Eigen::MatrixXcd entries, int n_max) {
  OperatorMatrix m;
  m.hermitian = (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-12;
  m.entries = std::move(entries);
  m.n_max = n_max;
  return m;
}

OperatorMatrix overlap_matrix(const CylinderModel& model) {
  model.validate();
  return build(model.n_max, [&](int n, int n2) { return cplx(overlap(n, n2, model)); });
}

OperatorMatrix overlap_matrix_quadrature(const CylinderModel& model, const QuadratureConfig& cfg) {
  model.validate();
  // depends on n - n' only
  std::vector<double> by_gap(static_cast<std::size_t>(2 * model.n_max + 1));
  for (int g = 0; g <= 2 * model.n_max; ++g)
    by_gap[static_cast<std::size_t>(g)] = overlap_quadrature(0, g, model, cfg);
  return build(model.n_max,
               [&](int n, int n2) { return cplx(by_gap[static_cast<std::size_t>(std::abs(n - n2))]); });
}

OperatorMatrix op_momentum(const CylinderModel& model) {
  model.validate();
  return build(model.n_max, [](int n, int n2) { return n == n2 ? cplx(n) : cplx{}; });
}

OperatorMatrix op_angle(const CylinderModel& model) {
  model.validate();
  return build(model.n_max, [&](int n, int n2) {
    return n == n2 ? cplx(pi) : I * overlap(n, n2, model) / static_cast<double>(n - n2);
  });
}

OperatorMatrix op_fourier_exp(const CylinderModel& model, int sign) {
  model.validate();
  if (sign != 1 && sign != -1) throw ConfigError("op_fourier_exp: sign must be +1 or -1");
  const double w10 = overlap(1, 0, model);
  return build(model.n_max, [&](int n, int n2) { return n == n2 + sign ? cplx(w10) : cplx{}; });
}

OperatorMatrix op_general_q(const FourierCoefficients& c, const CylinderModel& model) {
  model.validate();
  std::vector<cplx> coeff(static_cast<std::size_t>(4 * model.n_max + 1));
  for (int m = -2 * model.n_max; m <= 2 * model.n_max; ++m)
    coeff[static_cast<std::size_t>(m + 2 * model.n_max)] = c(m);
  return build(model.n_max, [&](int n, int n2) {
    return overlap(n, n2, model) * coeff[static_cast<std::size_t>(n - n2 + 2 * model.n_max)];
  });
}

OperatorMatrix op_general_q(const PeriodicProfile& u, const CylinderModel& model,
                            const QuadratureConfig& cfg) {
  return op_general_q([&](int m) { return fourier_coefficient(u, m, cfg); }, model);
}

OperatorMatrix op_general_p(const std::function<double(double)>& v, const CylinderModel& model,
                            const QuadratureConfig& cfg) {
  model.validate();
  const double half = kSupportSigmas * model.sigma;
  return build(model.n_max, [&](int n, int n2) {
    if (n != n2) return cplx{};
    return cplx(integrate([&](double p) { return model.w(n, p) * v(p); }, n - half, n + half, cfg));
  });
}

cplx fourier_coefficient(const PeriodicProfile& u, int m, const QuadratureConfig& cfg) {
  const auto& jumps = u.discontinuities();
  return integrate_split([&](double q) { return u(q) * std::exp(-I * (m * q)); }, 0.0, two_pi,
                         jumps, cfg) /
         two_pi;
}

cplx angle_fourier_coefficient(int m) { return m == 0 ? cplx(pi) : I / static_cast<double>(m); }

OperatorMatrix commutator_matrix(const CylinderModel& model) {
  model.validate();
  constexpr int buffer = 8;
  CylinderModel wide = model;
  wide.n_max = model.n_max + buffer;
  const Eigen::MatrixXcd p = op_momentum(wide).entries;
  const Eigen::MatrixXcd a = op_angle(wide).entries;
  return make_operator(p * a - a * p, wide.n_max).crop(model.n_max);
}

OperatorMatrix commutator_matrix_closed(const CylinderModel& model) {
  model.validate();
  return build(model.n_max,
               [&](int n, int n2) { return n == n2 ? cplx{} : I * overlap(n, n2, model); });
}

Eigen::MatrixXcd rotation(double theta, int n_max) {
  Eigen::VectorXcd phases(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) phases(n + n_max) = std::exp(I * (n * theta));
  return phases.asDiagonal();
}

double d_m(int m, double p, const CylinderModel& model) {
  require_lattice(model, "d_m");
  const int centre = static_cast<int>(std::lround(p - 0.5 * m));
  const int cut = model.resolved_cutoff();
  double sum = 0.0;
  for (int r = centre - cut; r <= centre + cut; ++r)
    sum += std::sqrt(model.w(r, p) * model.w(m + r, p));
  return sum / normalization_N(p, model);
}

int significant_modes(const CylinderModel& model) {
  model.validate();
  return static_cast<int>(std::ceil(model.sigma * std::sqrt(8.0 * std::log(1e17))));
}

cplx lower_symbol_cylinder(const FourierCoefficients& c, double p0, double q0,
                           const CylinderModel& model) {
  const int modes = significant_modes(model);
  cplx sum = c(0);
  for (int m = 1; m <= modes; ++m) {
    for (int s : {m, -m}) {
      sum += d_m(s, p0, model) * overlap(0, s, model) * c(s) * std::exp(I * (s * q0));
    }
  }
  return sum;
}

cplx lower_symbol_commutator(double p0, double q0, const CylinderModel& model) {
  const int modes = significant_modes(model);
  cplx sum{};
  for (int m = 1; m <= modes; ++m) {
    for (int s : {m, -m}) sum += d_m(s, p0, model) * overlap(0, s, model) * std::exp(I * (s * q0));
  }
  return I * sum;
}

}  // namespace circq
