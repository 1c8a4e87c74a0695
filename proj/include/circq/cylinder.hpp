#pragma once

// Coherent-state quantisation on the cylinder R x S^1 with a Gaussian weight
// w^sigma: the lattice normalisation, the overlap matrix w_{n,n'} and the
// matrices of quantised observables on the truncated basis |e_n>, |n| <= n_max.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "circq/quadrature.hpp"

namespace circq {

enum class Weight { Gaussian };

struct CylinderModel {
  double sigma = 1.0;
  int n_max = 16;
  Weight weight = Weight::Gaussian;
  /// Half-width of the lattice sums over r in N(p) and d_m(p); 0 picks one
  /// from sigma so the neglected tail is below 1e-15.
  int lattice_cutoff = 0;

  void validate() const;
  /// w^sigma(p) = exp(-p^2 / 2 sigma^2) / sqrt(2 pi sigma^2).
  double w(double p) const;
  /// w_n(p) = w^sigma(p - n).
  double w(int n, double p) const { return w(p - n); }
  int resolved_cutoff() const;
  /// Upper bound on the part of a lattice sum of w beyond the cutoff.
  double tail_bound() const;
};

/// N(p) = sum_n w^sigma(p - n). TruncationError when tail_bound() > 1e-12.
double normalization_N(double p, const CylinderModel& model);
/// N(p) = sum_n cos(2 pi n p) exp(-2 pi^2 sigma^2 n^2), the Poisson-summed form.
double normalization_N_poisson(double p, const CylinderModel& model);

/// w_{n,n'} = exp(-(n - n')^2 / (8 sigma^2)).
double overlap(int n, int n2, const CylinderModel& model);
/// int sqrt(w_n(p) w_{n'}(p)) dp by quadrature.
double overlap_quadrature(int n, int n2, const CylinderModel& model,
                          const QuadratureConfig& cfg = precise_quadrature);

/// A matrix on span{e_n : |n| <= n_max}; row/column k holds n = k - n_max.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  int n_max = 0;
  bool hermitian = false;

  int dim() const { return 2 * n_max + 1; }
  std::complex<double> at(int n, int n2) const { return entries(n + n_max, n2 + n_max); }
  /// Central block |n|, |n'| <= inner.
  OperatorMatrix crop(int inner) const;
};

/// Wraps a matrix and sets `hermitian` by comparing with its adjoint (1e-12).
OperatorMatrix make_operator(Eigen::MatrixXcd entries, int n_max);

OperatorMatrix overlap_matrix(const CylinderModel& model);
OperatorMatrix overlap_matrix_quadrature(const CylinderModel& model,
                                         const QuadratureConfig& cfg = precise_quadrature);

/// A_p = sum n |e_n><e_n|.
OperatorMatrix op_momentum(const CylinderModel& model);
/// A_a = pi I + i sum_{n != n'} w_{n,n'} / (n - n') |e_n><e_n'|.
OperatorMatrix op_angle(const CylinderModel& model);
/// A_{exp(+- i q)} = w_{1,0} sum |e_{n +- 1}><e_n|; sign is +1 or -1.
OperatorMatrix op_fourier_exp(const CylinderModel& model, int sign);

using FourierCoefficients = std::function<std::complex<double>(int)>;

/// A_{u(q)} with entries w_{n,n'} c_{n - n'}(u).
OperatorMatrix op_general_q(const FourierCoefficients& c, const CylinderModel& model);
OperatorMatrix op_general_q(const PeriodicProfile& u, const CylinderModel& model,
                            const QuadratureConfig& cfg = precise_quadrature);
/// A_{v(p)} = diag(<v>_{w_n}).
OperatorMatrix op_general_p(const std::function<double(double)>& v, const CylinderModel& model,
                            const QuadratureConfig& cfg = precise_quadrature);

/// c_m(u) = (1/2 pi) int_0^{2 pi} u(q) e^{-i m q} dq, splitting at the jumps of u.
std::complex<double> fourier_coefficient(const PeriodicProfile& u, int m,
                                         const QuadratureConfig& cfg = precise_quadrature);
/// c_m of the sawtooth: pi for m = 0, i/m otherwise.
std::complex<double> angle_fourier_coefficient(int m);

/// [A_p, A_a] from the matrix product, assembled on n_max + 8 and cropped.
OperatorMatrix commutator_matrix(const CylinderModel& model);
/// [A_p, A_a] = i sum_{n != n'} w_{n,n'} |e_n><e_n'|.
OperatorMatrix commutator_matrix_closed(const CylinderModel& model);

/// U(theta) = diag(e^{i n theta}).
Eigen::MatrixXcd rotation(double theta, int n_max);

/// d_m(p) = (1/N(p)) sum_r sqrt(w_r(p) w_{m+r}(p)).
double d_m(int m, double p, const CylinderModel& model);

/// Number of Fourier modes beyond which w_{0,m} < 1e-17.
int significant_modes(const CylinderModel& model);

/// <p0,q0| A_u |p0,q0> = c_0 + sum_{m != 0} d_m(p0) w_{0,m} c_m e^{i m q0}.
std::complex<double> lower_symbol_cylinder(const FourierCoefficients& c, double p0, double q0,
                                           const CylinderModel& model);
/// <p0,q0| [A_p, A_a] |p0,q0> = i sum_{m != 0} d_m(p0) w_{0,m} e^{i m q0}.
std::complex<double> lower_symbol_commutator(double p0, double q0, const CylinderModel& model);

}  // namespace circq
