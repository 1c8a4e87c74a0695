#pragma once

// Coherent-state quantisation of classical observables: functions of the
// angle become multiplication operators, p, p^2, p u(q) and p^2 u(q) become
// differential operators with periodic coefficients.

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "circq/fiducial.hpp"
#include "circq/quadrature.hpp"

namespace circq {

using cplx = std::complex<double>;
using ComplexFunction = std::function<cplx(double)>;

/// One periodic coefficient m_k(alpha) of a differential operator.
class Coefficient {
 public:
  static Coefficient zero() { return Coefficient(); }
  static Coefficient constant(cplx value);
  static Coefficient function(ComplexFunction f);

  cplx operator()(double alpha) const;
  bool is_zero() const { return !constant_ && !f_; }
  const std::optional<cplx>& constant_value() const { return constant_; }

 private:
  std::optional<cplx> constant_;
  ComplexFunction f_;
};

/// sum_k m_k(alpha) d^k / dalpha^k, k <= 2.
class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(std::vector<Coefficient> coefficients);

  /// Highest k whose coefficient is not identically zero (0 for the zero operator).
  int order() const;
  const Coefficient& coefficient(int k) const;
  const std::vector<Coefficient>& coefficients() const { return coeff_; }

  /// (A e_n)(alpha) / e_n(alpha) = sum_k m_k(alpha) (i n)^k for e_n = exp(i n alpha).
  cplx symbol(int n, double alpha) const;
  /// (A e_n)(alpha).
  cplx apply_exponential(int n, double alpha) const;
  /// Largest |Im m_k| over `samples` uniform points of a period.
  double max_imaginary_coefficient(int samples = 64) const;

 private:
  std::vector<Coefficient> coeff_;
};

/// Matrix view <e_m| A |e_n> on the normalised Fourier basis, |m|, |n| <= n_max.
/// Non-constant coefficients are expanded with a `grid`-point trapezoid rule.
Eigen::MatrixXcd fourier_matrix(const DiffOperator& op, int n_max, int grid = 1024);

/// E_{eta;gamma}(alpha) = (2 pi / (kappa c_eta)) |eta(alpha)|^2 / sin(gamma - alpha).
/// A probability density supported on supp eta.
PeriodicProfile density_E(const CoherentFamily& family);

/// Multiplier (E * u)(alpha) of the operator A_u; evaluated lazily by quadrature.
PeriodicProfile quantize_multiplication(const PeriodicProfile& u, const CoherentFamily& family);

/// K_n = int E(q) e^{-i n q} dq, so that E * e_n = K_n e_n.
cplx fourier_exponential_constant(int n, const CoherentFamily& family);

/// A_p = -i c d/dalpha - lambda a.
DiffOperator quantize_p(const CoherentFamily& family);

/// The periodic functions B_1..B_5 and their integrals b_1..b_3.
struct BCoefficients {
  std::array<ComplexFunction, 5> B;  ///< B[j-1] is B_j
  cplx b1, b2, b3;
  Window support;
  bool lambda_zero = true;  ///< B_2 and B_5 vanish identically
};

BCoefficients b_coefficients(const CoherentFamily& family);

/// A_{p^2} = b_1 d^2 + b_2 d + b_3.
DiffOperator quantize_p2(const CoherentFamily& family);
DiffOperator quantize_p2(const BCoefficients& b);

/// A_{p u} = -i (u * B_4) d - (u * B_5).
DiffOperator quantize_pu(const PeriodicProfile& u, const CoherentFamily& family);
DiffOperator quantize_pu(const PeriodicProfile& u, const BCoefficients& b,
                         const QuadratureConfig& cfg);

/// A_{p^2 u} = (u * B_1) d^2 + (u * B_2) d + (u * B_3).
DiffOperator quantize_p2u(const PeriodicProfile& u, const CoherentFamily& family);
DiffOperator quantize_p2u(const PeriodicProfile& u, const BCoefficients& b,
                          const QuadratureConfig& cfg);

/// int [cos(gamma - q) f_{0;3} + f_{1;2}] dq, which must vanish for real eta.
double imaginary_bracket(const CoherentFamily& family);

/// Fourier coefficients c_n(eta_{p,q}) for n = n_lo .. n_hi.
std::vector<cplx> cs_fourier_coefficients(double p, double q, int n_lo, int n_hi,
                                          const CoherentFamily& family);

/// max over n in [-n_max, n_max] and p in `p_grid` of
/// | |c_n(eta_{p,0})| - |c_0(eta_{p-n,0})| |; zero iff the coefficients obey the
/// integer-shift relation of the cylinder weights.
double shift_violation(const CoherentFamily& family, int n_max, std::span<const double> p_grid);

}  // namespace circq
