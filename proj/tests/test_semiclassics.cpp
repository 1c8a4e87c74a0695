#include <doctest.h>

#include "circq/quantize.hpp"
#include "circq/semiclassics.hpp"
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

TEST_CASE("lower symbol of a generic u") {
  const CoherentFamily fam = standard();
  const PeriodicProfile c([](double) { return -1.75; });
  for (double q : {0.0, 1.0, 6.0}) CHECK(lower_symbol_u(c, q, fam) == doctest::Approx(-1.75).epsilon(1e-10));

  const PeriodicProfile saw = angle_function_profile();
  const PeriodicProfile wave([](double a) { return std::cos(a) + 0.3 * std::sin(4 * a); });
  for (double q : {0.05, 0.4, 2.0, 6.1}) {
    CHECK(std::abs(lower_symbol_u(saw, q, fam) - lower_symbol_u_direct(saw, q, fam)) <= 1e-7);
    CHECK(std::abs(lower_symbol_u(wave, q, fam) - lower_symbol_u_direct(wave, q, fam)) <= 1e-7);
  }
}

TEST_CASE("q-check approaches the sawtooth as delta shrinks") {
  // K * E has support [-2 delta, 2 delta]: away from the jump the symbol is exact
  for (double delta : {0.3, 0.03}) {
    const AngleContext ctx = make_angle_context(standard(1.0, delta));
    double interior = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double q = 2 * delta + (two_pi - 4 * delta) * i / 64;
      interior = std::max(interior, std::abs(lower_symbol_angle(q, ctx) - angle_function(q)));
    }
    CHECK(interior <= 1e-10);
  }
  const AngleContext wide = make_angle_context(standard(1.0, 0.3));
  const AngleContext narrow = make_angle_context(standard(1.0, 0.03));
  CHECK(std::abs(lower_symbol_angle(0.1, wide) - 0.1) > 1e-3);
  CHECK(std::abs(lower_symbol_angle(0.1, narrow) - 0.1) <= 1e-10);
}

TEST_CASE("lower symbol of p") {
  const CoherentFamily fam = standard();
  CHECK(lower_symbol_p(0.0, fam) == 0.0);
  CHECK(lower_symbol_p(2.6, fam) == doctest::Approx(2.0 * lower_symbol_p(1.3, fam)).epsilon(1e-15));
  const oracle::EtaSquared e2(1.0, 0.3);
  const double slope = oracle::c_nu(e2, 2.0) / oracle::c_nu(e2, 1.0) * oracle::c_nu(e2, -1.0);
  CHECK(std::abs(lower_symbol_p(1.0, fam) - slope) <= 1e-8);

  FiducialSpec s;
  s.lambda = 0.6;
  s.zeta = 1.1;
  const CoherentFamily sh = make_family(s);
  const auto& t = sh.table;
  const double cm1 = moment_c(sh.eta, -1.0, s.zeta);
  const double expected = t.c(2.0) / t.c(1.0) * t.c(-1.0) * 0.5 + 0.6 * t.c_const * cm1 - 0.6 * t.a_const;
  CHECK(lower_symbol_p(0.5, sh) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("q-check: split-window form, symmetry, centre value") {
  const AngleContext ctx = make_angle_context(standard());
  CHECK(std::abs(lower_symbol_angle(pi, ctx) - pi) <= 1e-8);
  double worst = 0.0, mirror = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double q = two_pi * i / 100;
    const double v = lower_symbol_angle(q, ctx);
    worst = std::max(worst, std::abs(v - lower_symbol_angle_convolution(q, ctx)));
    if (i > 0) mirror = std::max(mirror, std::abs(v + lower_symbol_angle(two_pi - q, ctx) - two_pi));
  }
  CHECK(worst <= 1e-7);
  CHECK(mirror <= 1e-7);
}

TEST_CASE("commutator profile") {
  const CoherentFamily fam = standard(2.0);
  const PeriodicProfile comm = commutator_profile(fam);
  const double c = fam.table.c_const, d = fam.spec().delta;
  for (double a : {d + 1e-6, 1.0, pi, two_pi - d - 1e-6}) CHECK(comm(a) == doctest::Approx(c));
  CHECK(comm(0.0) == 0.0);
  CHECK(comm(two_pi) == 0.0);
  const PeriodicProfile m = angle_multiplier(fam);
  auto mx = [&](double a) { return m(a); };
  for (double a : {-0.25, -0.1, 0.05, 0.2})
    CHECK(std::abs(c * oracle::derivative(mx, a, 1e-4) - comm(a)) <= 1e-6 * std::max(1.0, std::abs(comm(a))));

  FiducialSpec s;
  s.lambda = 1.0;
  CHECK_THROWS_AS(commutator_profile(make_family(s)), ConfigError);
}

TEST_CASE("angle dispersion") {
  const AngleContext ctx = make_angle_context(standard(2.0));
  const double centre = dispersion_angle(pi, ctx);
  const double edge = dispersion_angle(0.0, ctx);
  CHECK(centre < 0.1);
  CHECK(edge > 1.0);
  for (double q : {0.0, 0.1, 0.35, 1.0, pi}) {
    CHECK(std::abs(dispersion_angle_squared(q, ctx) - dispersion_angle_squared_central(q, ctx)) <= 1e-8);
    CHECK(std::abs(dispersion_angle_squared(q, ctx) - dispersion_angle_squared(two_pi - q, ctx)) <= 1e-7);
  }
  const AngleContext narrow = make_angle_context(standard(2.0, 0.05));
  CHECK(dispersion_angle(pi, narrow) < centre);

  // a kernel with negative mass makes the variance formula negative
  AngleContext bad = ctx;
  bad.kernel = PeriodicProfile([](double) { return -1.0; }, Window{-0.3, 0.3});
  CHECK_THROWS_AS(dispersion_angle_squared(1.0, bad), NegativeVarianceError);
}

TEST_CASE("momentum dispersion") {
  const CoherentFamily fam = standard(2.0);
  const auto& t = fam.table;
  CHECK(dispersion_p_squared(0.0, fam) == doctest::Approx(dispersion_p_kinetic(fam)).epsilon(1e-15));
  CHECK(t.c(-2.0) - t.c(-1.0) * t.c(-1.0) >= 0.0);

  const double eps = 2.0, d = 0.3;
  const double clip = 1.0 - 1e-8;
  auto integrand = [eps](double x) {
    const double r = 1.0 - x * x;
    return oracle::scaled_bump(x, 2 * eps) *
           (2.0 * (1.0 + 3.0 * x * x) / (r * r * r) - eps * 4.0 * x * x / (r * r * r * r));
  };
  const double integral = oracle::trapezoid(integrand, -clip, clip, 1'000'000);
  const double e2 = oracle::trapezoid([eps](double x) { return oracle::scaled_bump(x, 2 * eps); }, -1.0, 1.0, 1'000'000);
  CHECK(oracle::close_rel(dispersion_p_kinetic(fam), t.c_const * t.c_const * eps / (d * d) * integral / e2, 1e-6));
  CHECK(oracle::close_rel(dispersion_p_kinetic(fam), kinetic_energy_integral(fam), 1e-9));

  double prev = -1.0;
  for (double p : {0.0, 0.5, 1.0, 3.0, 10.0}) {
    const double v = dispersion_p(p, fam);
    CHECK(v == doctest::Approx(dispersion_p(-p, fam)).epsilon(1e-15));
    CHECK(v > prev);
    prev = v;
  }
  const double op = dispersion_p_operator(fam);
  MESSAGE("(Delta A_p)^2 at p = 0: formula " << dispersion_p_squared(0.0, fam)
                                             << ", <A_{p^2}> - <A_p>^2 " << op);
  CHECK(op > 0.0);
}

TEST_CASE("Heisenberg right-hand side and inequality") {
  const AngleContext ctx = make_angle_context(standard(2.0));
  const double c = ctx.family.table.c_const;
  CHECK(heisenberg_rhs(pi, ctx) == doctest::Approx(0.5 * c).epsilon(1e-14));
  for (double q : {0.0, 0.1, 0.3, 0.5, 3.0, 6.0})
    CHECK(std::abs(heisenberg_rhs(q, ctx) - heisenberg_rhs_expectation(q, ctx)) <= 1e-8);

  std::vector<double> ps, qs;
  for (int i = 0; i < 16; ++i) {
    ps.push_back(-5.0 + 10.0 * i / 15);
    qs.push_back(two_pi * i / 16);
  }
  for (const auto& pt : uncertainty_grid(ctx, ps, qs)) {
    CHECK(pt.product >= pt.rhs - 1e-8);
    CHECK(pt.product == doctest::Approx(pt.delta_a * pt.delta_p));
  }
}

TEST_CASE("Fourier eigenstate table") {
  const auto rows = fourier_eigenstate_table({1.0, 2.0, 10.0, 100.0}, 0.3);
  const double published[] = {1.7143, 1.7333, 1.7720, 1.8009};
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(rows[i].mean - pi) <= 1e-8);
    CHECK(std::abs(rows[i].dispersion - published[i]) <= 2e-3);
    CHECK(rows[i].dispersion_p == 0.0);
    if (i > 0) CHECK(rows[i].dispersion > rows[i - 1].dispersion);
  }
  CHECK(std::abs(uniform_angle_dispersion() - 1.8138) <= 5e-5);
}

TEST_CASE("a cached multiplier stays close to the exact one") {
  const CoherentFamily fam = standard(100.0);
  const AngleContext exact = make_angle_context(fam);
  const AngleContext cached = make_angle_context(fam, 8192);
  CHECK(cached.multiplier.is_cached());
  for (double q : {0.0, 0.05, 1.0, pi})
    CHECK(std::abs(dispersion_angle(q, exact) - dispersion_angle(q, cached)) <= 1e-6);
}

TEST_CASE("large epsilon: kinetic term, dispersions and the inequality") {
  const CoherentFamily fam = standard(1e8);
  CHECK(oracle::close_rel(dispersion_p_kinetic(fam), kinetic_energy_integral(fam), 1e-8));
  const AngleContext ctx = make_angle_context(fam);
  const double dp = dispersion_p(0.0, fam);
  for (double q : {0.0, 1e-4, 0.2, 1.0, pi, 5.0}) {
    const double da = dispersion_angle(q, ctx);
    CHECK(da * dp >= heisenberg_rhs(q, ctx) - 1e-8);
  }
  // on the interior the multiplier is linear and Delta A_a is the width of the kernel
  const Window k = fam.eta.support();
  const double width2 = integrate_window([&](double s) { return s * s * fam.eta.density(s); }, k, fam.cfg);
  CHECK(oracle::close_rel(dispersion_angle(pi, ctx), std::sqrt(width2), 1e-7));
  // the gap to pi / sqrt(3) is of the order of the peak width
  const double gap = uniform_angle_dispersion() - fourier_eigenstate_row(fam).dispersion;
  CHECK(gap > 0.0);
  CHECK(gap < 1e-4);
  CHECK(gap < uniform_angle_dispersion() - fourier_eigenstate_row(standard(1e4)).dispersion);
}
