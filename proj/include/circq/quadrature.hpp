#pragma once

// Shared numerical engine: adaptive Gauss-Kronrod quadrature, 2 pi-periodic
// profiles and their convolution on the circle, bracketed root finding and
// finite-difference derivative oracles.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "circq/errors.hpp"

namespace circq {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 200;

  void validate() const;
};

/// Tolerances used internally where results feed tight cross-checks.
inline constexpr QuadratureConfig precise_quadrature{1e-13, 1e-12, 2000};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int subdivisions = 0;
};

/// Reduce to the principal branch [-pi, pi).
double reduce_signed(double alpha);
/// Reduce to [0, 2 pi).
double reduce_positive(double alpha);

namespace detail {

// 15-point Kronrod abscissae / weights with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kronrod_x{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_w{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class T>
struct Segment {
  double lo;
  double hi;
  T value;
  double error;
};

template <class F, class T>
Segment<T> gauss_kronrod_15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const T f_center = f(center);
  T kronrod = f_center * kronrod_w[7];
  T gauss = f_center * gauss_w[3];
  double abs_sum = magnitude(f_center) * kronrod_w[7];
  std::array<T, 7> lower{};
  std::array<T, 7> upper{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_x[j];
    lower[j] = f(center - dx);
    upper[j] = f(center + dx);
    kronrod += (lower[j] + upper[j]) * kronrod_w[j];
    abs_sum += (magnitude(lower[j]) + magnitude(upper[j])) * kronrod_w[j];
    if (j % 2 == 1) gauss += (lower[j] + upper[j]) * gauss_w[j / 2];
  }
  const T mean = kronrod * 0.5;
  double asc = kronrod_w[7] * magnitude(f_center - mean);
  for (int j = 0; j < 7; ++j)
    asc += kronrod_w[j] * (magnitude(lower[j] - mean) + magnitude(upper[j] - mean));

  const double width = std::abs(half);
  asc *= width;
  abs_sum *= width;
  double err = magnitude((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * abs_sum, err);
  return {lo, hi, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive GK15 over the pieces [points[i], points[i+1]].
/// Throws ConvergenceError when the subdivision budget runs out first.
template <class F>
auto integrate_detailed(F&& f, std::span<const double> points, const QuadratureConfig& cfg = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  using Seg = detail::Segment<T>;
  if (points.size() < 2) throw ConfigError("integrate: need at least two points");

  std::vector<Seg> segs;
  segs.reserve(static_cast<std::size_t>(cfg.max_subdivisions) + points.size());
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] < points[i]) throw ConfigError("integrate: points must be ordered");
    if (points[i + 1] == points[i]) continue;
    segs.push_back(detail::gauss_kronrod_15<F, T>(f, points[i], points[i + 1]));
  }
  if (segs.empty()) return {T{}, 0.0, 0};

  auto by_error = [](const Seg& a, const Seg& b) { return a.error < b.error; };
  std::make_heap(segs.begin(), segs.end(), by_error);

  auto totals = [&segs] {
    T v{};
    double e = 0.0;
    for (const auto& s : segs) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  while (error > std::max(cfg.abs_tol, cfg.rel_tol * detail::magnitude(value))) {
    if (static_cast<int>(segs.size()) >= cfg.max_subdivisions) {
      throw ConvergenceError("integrate", "subdivision budget of " +
                                              std::to_string(cfg.max_subdivisions) +
                                              " exhausted (error estimate " +
                                              std::to_string(error) + ")");
    }
    std::pop_heap(segs.begin(), segs.end(), by_error);
    const Seg worst = segs.back();
    segs.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw ConvergenceError("integrate", "interval collapsed to machine precision");
    }
    const Seg left = detail::gauss_kronrod_15<F, T>(f, worst.lo, mid);
    const Seg right = detail::gauss_kronrod_15<F, T>(f, mid, worst.hi);
    segs.push_back(left);
    std::push_heap(segs.begin(), segs.end(), by_error);
    segs.push_back(right);
    std::push_heap(segs.begin(), segs.end(), by_error);
    if (segs.size() % 64 == 0) {
      std::tie(value, error) = totals();
    } else {
      value += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
    }
  }
  std::tie(value, error) = totals();
  return {value, error, static_cast<int>(segs.size())};
}

template <class F>
auto integrate(F&& f, double lo, double hi, const QuadratureConfig& cfg = {}) {
  if (hi < lo) throw ConfigError("integrate: require lo <= hi");
  const std::array<double, 2> pts{lo, hi};
  return integrate_detailed(std::forward<F>(f), pts, cfg).value;
}

/// Integrate with interior breakpoints (e.g. jump locations); `breaks` need
/// not be sorted and entries outside (lo, hi) are ignored.
template <class F>
auto integrate_split(F&& f, double lo, double hi, std::span<const double> breaks,
                     const QuadratureConfig& cfg = {}) {
  if (hi < lo) throw ConfigError("integrate: require lo <= hi");
  std::vector<double> pts{lo};
  for (double b : breaks)
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  return integrate_detailed(std::forward<F>(f), pts, cfg).value;
}

/// Closed interval outside of which (mod 2 pi) a profile vanishes, with
/// optional interior breakpoints marking the scale of a narrow peak.
struct Window {
  double lo;
  double hi;
  std::vector<double> interior{};

  /// interior + shift
  std::vector<double> breaks(double shift = 0.0) const {
    std::vector<double> out(interior);
    for (double& b : out) b += shift;
    return out;
  }
};

/// Integrate over [lo, hi] split at the interior points of `w` shifted by `shift`.
template <class F>
auto integrate_window(F&& f, const Window& w, double lo, double hi, double shift,
                      const QuadratureConfig& cfg) {
  return integrate_split(std::forward<F>(f), lo, hi, w.breaks(shift), cfg);
}

template <class F>
auto integrate_window(F&& f, const Window& w, const QuadratureConfig& cfg) {
  return integrate_split(std::forward<F>(f), w.lo, w.hi, w.interior, cfg);
}

/// A 2 pi-periodic real function. Immutable; copies share the evaluator and
/// any cached samples.
class PeriodicProfile {
 public:
  using Evaluator = std::function<double(double)>;

  PeriodicProfile() = default;
  explicit PeriodicProfile(Evaluator f, std::optional<Window> support = std::nullopt,
                           std::vector<double> discontinuities = {});

  /// Evaluate, through the sample cache when one is attached.
  double operator()(double alpha) const;
  /// Evaluate through the underlying evaluator.
  double exact(double alpha) const;

  /// Copy backed by `grid_size` uniform samples and 4-point cubic
  /// interpolation. Profiles with jumps cannot be cached.
  PeriodicProfile cached(int grid_size = 4096) const;

  bool is_cached() const { return samples_ != nullptr; }
  int grid_size() const { return samples_ ? static_cast<int>(samples_->size()) : 0; }
  const std::optional<Window>& support() const { return support_; }
  /// Jump locations reduced to [0, 2 pi).
  const std::vector<double>& discontinuities() const { return jumps_; }

 private:
  std::shared_ptr<const Evaluator> f_;
  std::optional<Window> support_;
  std::vector<double> jumps_;
  std::shared_ptr<const std::vector<double>> samples_;
};

namespace detail {

// Breakpoints for the integration variable s of int k(s) u(alpha - s) ds on
// [lo, hi]: jumps of the kernel at s and of u at alpha - s.
std::vector<double> convolution_breaks(const std::vector<double>& kernel_jumps,
                                       const std::vector<double>& u_jumps, double alpha,
                                       double lo, double hi);

}  // namespace detail

/// (k * u)(alpha) = int_0^{2 pi} k(alpha - q) u(q) dq for a kernel supported on
/// `kernel_support`; the integration runs over the support only.
template <class Kernel>
auto convolve_supported(Kernel&& kernel, const Window& kernel_support,
                        const std::vector<double>& kernel_jumps, const PeriodicProfile& u,
                        double alpha, const QuadratureConfig& cfg = {}) {
  auto breaks = detail::convolution_breaks(kernel_jumps, u.discontinuities(), alpha,
                                           kernel_support.lo, kernel_support.hi);
  breaks.insert(breaks.end(), kernel_support.interior.begin(), kernel_support.interior.end());
  auto integrand = [&](double s) { return kernel(s) * u(alpha - s); };
  return integrate_split(integrand, kernel_support.lo, kernel_support.hi, breaks, cfg);
}

/// (E * u)(alpha) = int_0^{2 pi} E(alpha - q) u(q) dq.
double periodic_convolve(const PeriodicProfile& kernel, const PeriodicProfile& u, double alpha,
                         const QuadratureConfig& cfg = {});

/// Bracketed root of f on [lo, hi]: Illinois false position with bisection
/// fallback. Terminates when the bracket is narrower than `tol`.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

/// Second-order central difference.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Ridders' extrapolated central difference. `error` receives the estimate.
double ridders_derivative(const std::function<double(double)>& f, double x, double h,
                          double* error = nullptr);

}  // namespace circq
