#include <doctest.h>

#include "circq/angle.hpp"
#include "circq/quantize.hpp"
#include "oracles.hpp"

using namespace circq;

namespace {

CoherentFamily standard(double eps = 1.0, double delta = 0.3) {
  FiducialSpec s;
  s.epsilon = eps;
  s.delta = delta;
  return make_family(s);
}

}  // namespace

TEST_CASE("angle function") {
  CHECK(angle_function(pi) == doctest::Approx(pi));
  CHECK(angle_function(-pi / 2) == doctest::Approx(1.5 * pi));
  CHECK(angle_function(two_pi) == 0.0);
  CHECK(angle_function(0.0) == 0.0);
  CHECK(angle_function_profile().discontinuities() == std::vector<double>{0.0});
}

TEST_CASE("F: branches, jump and derivative") {
  const CoherentFamily fam = standard();
  const PeriodicProfile f = F_profile(fam);
  const PeriodicProfile e = density_E(fam);
  const double d = fam.spec().delta, g = fam.spec().gamma;
  for (double a : {g, 2.0, pi, pi + g}) CHECK(f(a) == 0.0);
  CHECK(f(0.0) - f(-1e-15) == doctest::Approx(two_pi).epsilon(1e-9));
  CHECK(f(0.0) == doctest::Approx(pi).epsilon(1e-10));
  CHECK(f(two_pi - 1e-14) == doctest::Approx(-pi).epsilon(1e-9));
  auto fx = [&](double a) { return f(a); };
  const double x = d / 2;
  const double fd = oracle::derivative(fx, x, 1e-3);
  CHECK(oracle::close_rel(fd, -two_pi * e(x), 1e-6));
  CHECK(oracle::close_rel(oracle::derivative(fx, two_pi - x, 1e-3), -two_pi * e(-x), 1e-6));
}

TEST_CASE("angle multiplier structure for even eta, gamma = pi/2") {
  for (double eps : {1.0, 2.0, 100.0}) {
    const CoherentFamily fam = standard(eps);
    const AngleProfile ap = angle_operator(fam);
    const PeriodicProfile& m = ap.multiplier;
    const double d = fam.spec().delta;
    CHECK(std::abs(ap.mean_q) <= 1e-10);
    CHECK(m(pi) == doctest::Approx(pi).epsilon(1e-14));
    for (int i = 0; i <= 200; ++i) {
      const double a = d + (two_pi - 2 * d) * i / 200;
      CHECK(std::abs(m(a) - angle_function(a)) <= 1e-9);
    }
    CHECK(std::abs(m(1e-13) - m(-1e-13)) <= 1e-7);
    CHECK(std::abs(m(0.0) - pi) <= 1e-9);
    const double mean = integrate_split([&](double a) { return m(a); }, 0.0, two_pi,
                                        std::vector<double>{d, two_pi - d}, fam.cfg) /
                        two_pi;
    CHECK(std::abs(mean - pi) <= 1e-8);
    CHECK(std::abs(ap.spectrum_lo - (pi - ap.m_value)) <= 1e-7);
    CHECK(std::abs(ap.spectrum_hi - (pi + ap.m_value)) <= 1e-7);
    CHECK(ap.m_value > 0.0);
    CHECK(ap.m_value < pi);
  }
}

TEST_CASE("multiplier derivative is 1 - 2 pi E") {
  const CoherentFamily fam = standard(2.0);
  const PeriodicProfile m = angle_multiplier(fam);
  const PeriodicProfile e = density_E(fam);
  auto mx = [&](double a) { return m(a); };
  const double d = fam.spec().delta;
  for (int i = 1; i < 40; ++i) {
    const double a = -d + 2 * d * i / 40;
    if (std::abs(a) < 1e-3) continue;
    const double expected = 1.0 - two_pi * e(a);
    const double fd = oracle::derivative(mx, a, 1e-4);
    CHECK(std::abs(fd - expected) <= 1e-6 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("spectrum root and half-width") {
  const double eps = 1.0, d = 0.3;
  const double root = spectrum_extremum(eps, d);
  // dense scan of omega_{2 eps}(a / d) - (d e_{2 eps}(d, 1) / 2 pi) cos a
  const double e1 = oracle::trapezoid(
      [&](double x) { return oracle::scaled_bump(x, 2 * eps) / std::cos(d * x); }, -1.0, 1.0,
      1'000'000);
  auto g = [&](double a) { return oracle::scaled_bump(a / d, 2 * eps) - d * e1 / (2 * pi) * std::cos(a); };
  const long n = 1'000'000;
  double scan = -1.0;
  for (long i = 0; i < n; ++i) {
    const double a0 = d * i / n, a1 = d * (i + 1) / n;
    if ((g(a0) > 0) != (g(a1) > 0)) {
      scan = a0 - g(a0) * (a1 - a0) / (g(a1) - g(a0));
      break;
    }
  }
  CHECK(std::abs(root - scan) <= 1e-7);

  const AngleProfile ap = angle_operator(standard(eps, d));
  CHECK(std::abs(ap.argmin - root) <= 1e-7);
  CHECK(std::abs(spectrum_halfwidth(eps, d) - ap.m_value) <= 1e-6);

  for (double e : {1.0, 10.0, 100.0})
    for (double dd : {0.01, 0.1, 0.3, 1.0}) {
      const double m = spectrum_halfwidth(e, dd);
      CHECK(m > pi - dd);
      CHECK(m < pi);
    }
  CHECK(spectrum_halfwidth(1.0, 0.3) < spectrum_halfwidth(100.0, 0.3));
  double prev = 0.0;
  for (double dd : {0.3, 0.1, 0.03, 0.01}) {
    const double m = spectrum_halfwidth(1.0, dd);
    CHECK(m > prev);
    prev = m;
  }
  CHECK_THROWS_AS(spectrum_halfwidth(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(spectrum_extremum(-1.0, 0.3), DomainError);
}

TEST_CASE("general gamma keeps continuity and the derivative identity") {
  FiducialSpec s;
  s.gamma = 1.2;
  const CoherentFamily fam = make_family(s);
  const AngleProfile ap = angle_operator(fam);
  CHECK(std::abs(ap.mean_q) > 1e-6);
  const PeriodicProfile& m = ap.multiplier;
  CHECK(std::abs(m(1e-13) - m(-1e-13)) <= 1e-7);
  const PeriodicProfile e = density_E(fam);
  auto mx = [&](double a) { return m(a); };
  for (double a : {-0.2, -0.1, 0.15, 0.25}) {
    const double expected = 1.0 - two_pi * e(a);
    CHECK(std::abs(oracle::derivative(mx, a, 1e-4) - expected) <= 1e-6 * std::max(1.0, std::abs(expected)));
  }
  CHECK(ap.spectrum_lo < ap.spectrum_hi);
  CHECK_THROWS_AS(angle_operator(fam, 8), ConfigError);
}

TEST_CASE("spectrum at large epsilon") {
  for (double eps : {1e4, 1e8}) {
    const AngleProfile ap = angle_operator(standard(eps));
    CHECK(std::abs(ap.spectrum_lo + ap.spectrum_hi - two_pi) <= 1e-7);
    CHECK(std::abs(ap.m_value - spectrum_halfwidth(eps, 0.3)) <= 1e-6);
    CHECK(std::abs(ap.argmin - spectrum_extremum(eps, 0.3)) <= 1e-7);
  }
  CHECK(spectrum_halfwidth(1e8, 0.3) > spectrum_halfwidth(1e4, 0.3));
  CHECK_THROWS_AS(spectrum_halfwidth(1e20, 0.3), DomainError);
}
