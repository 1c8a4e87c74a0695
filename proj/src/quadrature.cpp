#include "circq/quadrature.hpp"

#include <cmath>

namespace circq {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw ConfigError("QuadratureConfig: tolerances must be positive");
  if (max_subdivisions < 1) throw ConfigError("QuadratureConfig: max_subdivisions must be >= 1");
}

double reduce_signed(double alpha) {
  double r = alpha - two_pi * std::floor((alpha + pi) / two_pi);
  // floor rounding can land exactly on the excluded endpoint
  if (r >= pi) r -= two_pi;
  if (r < -pi) r += two_pi;
  return r;
}

double reduce_positive(double alpha) {
  double r = alpha - two_pi * std::floor(alpha / two_pi);
  if (r >= two_pi) r -= two_pi;
  if (r < 0.0) r += two_pi;
  return r;
}

PeriodicProfile::PeriodicProfile(Evaluator f, std::optional<Window> support,
                                 std::vector<double> discontinuities)
    : f_(std::make_shared<const Evaluator>(std::move(f))),
      support_(support),
      jumps_(std::move(discontinuities)) {
  if (support_ && !(support_->lo <= support_->hi && support_->hi - support_->lo < two_pi))
    throw ConfigError("PeriodicProfile: support window must satisfy lo <= hi < lo + 2 pi");
  for (double& j : jumps_) j = reduce_positive(j);
  std::sort(jumps_.begin(), jumps_.end());
}

double PeriodicProfile::exact(double alpha) const {
  if (!f_) throw ConfigError("PeriodicProfile: empty profile");
  return (*f_)(alpha);
}

double PeriodicProfile::operator()(double alpha) const {
  if (!samples_) return exact(alpha);
  const auto& s = *samples_;
  const int n = static_cast<int>(s.size());
  const double h = two_pi / n;
  const double t = reduce_positive(alpha) / h;
  int i = static_cast<int>(std::floor(t));
  const double x = t - i;
  auto at = [&](int k) { return s[static_cast<std::size_t>(((k % n) + n) % n)]; };
  // cubic Lagrange through samples i-1 .. i+2
  const double p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
  return -p0 * x * (x - 1.0) * (x - 2.0) / 6.0 + p1 * (x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0 -
         p2 * (x + 1.0) * x * (x - 2.0) / 2.0 + p3 * (x + 1.0) * x * (x - 1.0) / 6.0;
}

PeriodicProfile PeriodicProfile::cached(int grid_size) const {
  if (grid_size < 16) throw ConfigError("PeriodicProfile::cached: grid_size must be >= 16");
  if (!jumps_.empty())
    throw ConfigError("PeriodicProfile::cached: cannot interpolate across discontinuities");
  auto samples = std::make_shared<std::vector<double>>(static_cast<std::size_t>(grid_size));
  const double h = two_pi / grid_size;
  for (int i = 0; i < grid_size; ++i) (*samples)[static_cast<std::size_t>(i)] = exact(i * h);
  PeriodicProfile copy = *this;
  copy.samples_ = std::move(samples);
  return copy;
}

namespace detail {

std::vector<double> convolution_breaks(const std::vector<double>& kernel_jumps,
                                       const std::vector<double>& u_jumps, double alpha,
                                       double lo, double hi) {
  std::vector<double> out;
  auto add_images = [&](double base) {
    // all base + 2 pi k inside (lo, hi)
    double first = base + two_pi * std::ceil((lo - base) / two_pi);
    for (double s = first; s < hi; s += two_pi)
      if (s > lo) out.push_back(s);
  };
  for (double j : kernel_jumps) add_images(j);
  for (double j : u_jumps) add_images(alpha - j);
  return out;
}

}  // namespace detail

double periodic_convolve(const PeriodicProfile& kernel, const PeriodicProfile& u, double alpha,
                         const QuadratureConfig& cfg) {
  if (kernel.support()) {
    return convolve_supported([&kernel](double s) { return kernel(s); }, *kernel.support(),
                              kernel.discontinuities(), u, alpha, cfg);
  }
  if (u.support()) {
    // integrate over q in supp u instead: int E(alpha - q) u(q) dq
    const auto w = *u.support();
    auto breaks = detail::convolution_breaks(u.discontinuities(), kernel.discontinuities(),
                                             alpha, w.lo, w.hi);
    breaks.insert(breaks.end(), w.interior.begin(), w.interior.end());
    auto integrand = [&](double q) { return kernel(alpha - q) * u(q); };
    return integrate_split(integrand, w.lo, w.hi, breaks, cfg);
  }
  return convolve_supported([&kernel](double s) { return kernel(s); }, Window{-pi, pi},
                            kernel.discontinuities(), u, alpha, cfg);
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw ConfigError("find_root: require lo < hi");
  if (!(tol > 0.0)) throw ConfigError("find_root: tol must be positive");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb) || !std::isfinite(fa) || !std::isfinite(fb))
    throw BracketError("find_root", "no sign change on [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]");
  int side = 0;
  double width = b - a;
  for (int iter = 0; iter < 500 && (b - a) > tol; ++iter) {
    double x = (a * fb - b * fa) / (fb - fa);
    // fall back to bisection when false position stalls or leaves the bracket
    if (!(x > a && x < b) || (b - a) > 0.5 * width) x = 0.5 * (a + b);
    width = b - a;
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
  }
  return std::abs(fa) < std::abs(fb) ? a : b;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double ridders_derivative(const std::function<double(double)>& f, double x, double h,
                          double* error) {
  constexpr int ntab = 10;
  constexpr double con = 1.4, con2 = con * con;
  double a[ntab][ntab];
  double hh = h;
  double best = 0.0, err = std::numeric_limits<double>::max();
  a[0][0] = central_difference(f, x, hh);
  for (int i = 1; i < ntab; ++i) {
    hh /= con;
    a[0][i] = central_difference(f, x, hh);
    double fac = con2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= con2;
      const double errt =
          std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        best = a[j][i];
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err) break;
  }
  if (error) *error = err;
  return best;
}

}  // namespace circq
