#include <doctest.h>

#include "circq/cylinder.hpp"
#include "oracles.hpp"

using namespace circq;
using cplx = std::complex<double>;

TEST_CASE("Gaussian weight") {
  CylinderModel m;
  m.sigma = 1.3;
  CHECK(oracle::trapezoid([&](double p) { return m.w(p); }, -40, 40, 200'000) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.w(0.7) == m.w(-0.7));
  CHECK(m.w(2, 2.5) == m.w(0.5));
  m.sigma = 0.0;
  CHECK_THROWS_AS(m.validate(), ConfigError);
}

TEST_CASE("lattice normalisation") {
  CylinderModel m;
  CHECK(std::abs(normalization_N(0.37, m) - normalization_N_poisson(0.37, m)) <= 1e-10);
  for (double p : {-1.2, 0.0, 0.37, 0.5, 3.9}) {
    CHECK(normalization_N(p, m) > 0.0);
    CHECK(std::abs(normalization_N(p + 1.0, m) - normalization_N(p, m)) <= 1e-14);
  }
  m.sigma = 0.2;
  CHECK(std::abs(normalization_N(0.37, m) - normalization_N_poisson(0.37, m)) <= 1e-10);
  m.sigma = 10.0;
  for (int i = 0; i < 20; ++i) CHECK(std::abs(normalization_N(i / 20.0, m) - 1.0) <= 1e-12);
  m.lattice_cutoff = 5;  // far too short for sigma = 10
  CHECK_THROWS_AS(normalization_N(0.1, m), TruncationError);
  CHECK_THROWS_AS(d_m(1, 0.1, m), TruncationError);
}

TEST_CASE("overlap matrix") {
  CylinderModel m;
  m.n_max = 5;
  CHECK(overlap(1, 0, m) == doctest::Approx(std::exp(-1.0 / 8.0)).epsilon(1e-15));
  const OperatorMatrix closed = overlap_matrix(m);
  const OperatorMatrix quad = overlap_matrix_quadrature(m);
  CHECK((closed.entries - quad.entries).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(closed.hermitian);
  for (int n = -5; n <= 5; ++n) {
    CHECK(closed.at(n, n) == cplx(1.0));
    for (int k = -5; k <= 5; ++k) {
      CHECK(closed.at(n, k).real() > 0.0);
      CHECK(closed.at(n, k).real() <= 1.0);
      CHECK(closed.at(n, k) == closed.at(k, n));
      CHECK(closed.at(n, k) == cplx(overlap(0, k - n, m)));
    }
  }
  m.sigma = 100.0;
  for (int g = 0; g <= 2; ++g) CHECK(std::abs(overlap(0, g, m) - 1.0) <= 1e-4);
  // 1 - exp(-9/(8 sigma^2)) = 1.1249e-4 sits just outside 1e-4 at a gap of 3
  CHECK(1.0 - overlap(0, 3, m) == doctest::Approx(-std::expm1(-9.0 / 80000.0)).epsilon(1e-12));
  CHECK(1.0 - overlap(0, 3, m) <= 1.2e-4);
}

TEST_CASE("basic operator matrices") {
  CylinderModel m;
  m.sigma = 1.5;
  m.n_max = 6;
  const OperatorMatrix p = op_momentum(m);
  const OperatorMatrix a = op_angle(m);
  for (int n = -6; n <= 6; ++n) {
    CHECK(p.at(n, n) == cplx(n));
    CHECK(a.at(n, n) == cplx(pi));
  }
  CHECK(p.hermitian);
  CHECK(a.hermitian);
  CHECK(p.dim() == 13);

  const OperatorMatrix up = op_fourier_exp(m, 1), down = op_fourier_exp(m, -1);
  CHECK((up.entries.adjoint() - down.entries).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXcd prod = up.entries * up.entries.adjoint();
  const double w10 = overlap(1, 0, m);
  for (int k = 1; k < prod.rows(); ++k) CHECK(std::abs(prod(k, k) - w10 * w10) <= 1e-15);
  CHECK_THROWS_AS(op_fourier_exp(m, 2), ConfigError);
}

TEST_CASE("general operators") {
  CylinderModel m;
  m.sigma = 0.8;
  m.n_max = 5;
  const PeriodicProfile saw([](double q) { return reduce_positive(q); }, std::nullopt, {0.0});
  for (int k : {-3, 0, 1, 4}) CHECK(std::abs(fourier_coefficient(saw, k) - angle_fourier_coefficient(k)) <= 1e-12);
  const OperatorMatrix from_profile = op_general_q(saw, m);
  const OperatorMatrix from_series = op_general_q(angle_fourier_coefficient, m);
  const OperatorMatrix a = op_angle(m);
  CHECK((from_profile.entries - a.entries).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((from_series.entries - a.entries).cwiseAbs().maxCoeff() <= 1e-15);

  const OperatorMatrix p2 = op_general_p([](double p) { return p * p; }, m);
  const OperatorMatrix one = op_general_p([](double) { return 1.0; }, m);
  for (int n = -5; n <= 5; ++n) {
    CHECK(std::abs(p2.at(n, n).real() - (n * n + m.sigma * m.sigma)) <= 1e-10);
    CHECK(std::abs(one.at(n, n) - 1.0) <= 1e-12);
  }
  CHECK((one.entries - Eigen::MatrixXcd::Identity(11, 11)).cwiseAbs().maxCoeff() <= 1e-12);

  const PeriodicProfile real_u([](double q) { return std::exp(std::cos(q)) + std::sin(2 * q); });
  CHECK(op_general_q(real_u, m).hermitian);
}

TEST_CASE("rotation covariance") {
  CylinderModel m;
  m.sigma = 1.1;
  m.n_max = 6;
  const double theta = 0.9;
  const Eigen::MatrixXcd u = rotation(theta, m.n_max);
  const Eigen::MatrixXcd conj = u * op_angle(m).entries * u.adjoint();
  // U A_u U^dagger = A_{u(. + theta)}
  const PeriodicProfile shifted([theta](double q) { return reduce_positive(q + theta); },
                                std::nullopt, {two_pi - theta});
  const OperatorMatrix expected = op_general_q(shifted, m);
  CHECK((conj - expected.entries).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("commutator matrix") {
  CylinderModel m;
  m.sigma = 2.0;
  m.n_max = 10;
  const OperatorMatrix bracket = commutator_matrix(m);
  const OperatorMatrix closed = commutator_matrix_closed(m);
  CHECK(bracket.n_max == 10);
  CHECK((bracket.entries - closed.entries).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK_FALSE(closed.hermitian);
  CHECK((closed.entries + closed.entries.adjoint()).cwiseAbs().maxCoeff() <= 1e-15);
  const OperatorMatrix inner = closed.crop(3);
  CHECK(inner.at(-3, 3) == closed.at(-3, 3));
  CHECK_THROWS_AS(closed.crop(11), ConfigError);
}

TEST_CASE("d_m and lower symbols") {
  CylinderModel m;
  for (double sigma : {0.5, 1.0, 4.0}) {
    m.sigma = sigma;
    for (double p : {-0.4, 0.0, 0.3, 0.5})
      for (int k : {-5, -1, 0, 1, 2, 7}) {
        const double d = d_m(k, p, m);
        CHECK(d > 0.0);
        CHECK(d <= 1.0 + 1e-15);
        // sqrt(w_r w_{m+r}) = w_{0,m} w(p - r - m/2)
        const double closed = overlap(0, k, m) * normalization_N(p - 0.5 * k, m) / normalization_N(p, m);
        CHECK(std::abs(d - closed) <= 1e-12);
      }
    CHECK(d_m(0, 0.3, m) == doctest::Approx(1.0).epsilon(1e-15));
  }

  m.sigma = 50.0;
  const cplx c = lower_symbol_commutator(0.3, pi, m);
  CHECK(std::abs(c - cplx(0.0, -1.0)) <= 5e-3);

  // the lower symbol of cos q tends to cos q as sigma grows
  const FourierCoefficients cos_c = [](int k) { return std::abs(k) == 1 ? cplx(0.5) : cplx{}; };
  double prev = 1.0;
  for (double sigma : {1.0, 10.0, 50.0}) {
    m.sigma = sigma;
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
      const double q = two_pi * i / 32;
      worst = std::max(worst, std::abs(lower_symbol_cylinder(cos_c, 0.2, q, m) - std::cos(q)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
}
