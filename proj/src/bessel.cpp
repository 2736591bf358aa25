#include "geod/bessel.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geod/gamma.hpp"

namespace geod::restriction {

namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid rule on the doubly-infinite-decay integrand of
//   e^{pi t/2} K_{it}(x) = int_0^inf exp(pi t/2 - x cosh u) cos(t u) du.
// The integrand extends to a strip of half-width d, so the error is about
// exp(t d + x (1 - cos d) - 2 pi d / h) relative to the e^{-x} scale.
double trapezoid(double t, double x, double h) {
  const double shift = 0.5 * kPi * t;
  const double floor_exp = 46.0 + t * t / (2.0 * x);
  const double u_max = std::acosh(1.0 + floor_exp / x) + 0.5;
  double sum = 0.5 * std::exp(shift - x);
  for (int j = 1;; ++j) {
    double u = j * h;
    if (u > u_max) break;
    sum += std::exp(shift - x * std::cosh(u)) * std::cos(t * u);
  }
  return h * sum;
}

double default_step(double t, double x) {
  const double d = 1.0;
  double denom = t * d + x * (1.0 - std::cos(d)) + 46.0 + t * t / (2.0 * x);
  if (x < 1.0) denom += std::log(2.0 / x);
  return 2.0 * kPi * d / denom;
}

// Power series of I_{it}, combined as K = -pi Im I_{it} / sinh(pi t).
double series(double t, double x) {
  using L = long double;
  const L tl = t;
  const L q = static_cast<L>(x) * static_cast<L>(x) / 4.0L;
  std::complex<L> term = 1.0L;
  std::complex<L> sum = 1.0L;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (static_cast<L>(k) * std::complex<L>(static_cast<L>(k), tl));
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum) && static_cast<L>(k) * k > q) break;
  }
  const L arg_gamma = special::log_gamma(special::lcplx(1.0L, tl)).imag();
  const L phase = tl * std::log(static_cast<L>(x) / 2.0L) - arg_gamma;
  const L im = std::sin(phase) * sum.real() + std::cos(phase) * sum.imag();
  const L pref = std::sqrt(std::numbers::pi_v<L> / tl) *
                 std::sqrt(2.0L / (1.0L - std::exp(-2.0L * std::numbers::pi_v<L> * tl)));
  return static_cast<double>(-pref * im);
}

bool use_series(double t, double x) { return t >= 0.5 && x < 1.26 * t; }

}  // namespace

double bessel_K_imag_scaled(double t, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_K_imag: x must be positive");
  if (t < 0.0) t = -t;
  if (use_series(t, x)) return series(t, x);
  return trapezoid(t, x, default_step(t, x));
}

double bessel_K_imag_scaled_integral(double t, double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_K_imag: x must be positive");
  if (t < 0.0) t = -t;
  double h = default_step(t, x);
  double prev = trapezoid(t, x, h);
  for (int it = 0; it < 8; ++it) {
    h *= 0.5;
    double cur = trapezoid(t, x, h);
    if (std::abs(cur - prev) <= 1e-15 * std::abs(cur) + 1e-300) return cur;
    prev = cur;
  }
  return prev;
}

BesselValue bessel_K_imag(double t, double x) {
  if (t < 0.0) t = -t;
  // Beyond this K_{it}(x) < e^{-x} < DBL_MIN for every t >= 0.
  if (x > 745.0) return {0.0, true};
  double v = bessel_K_imag_scaled(t, x) * std::exp(-0.5 * kPi * t);
  if (v != 0.0 && std::abs(v) < DBL_MIN) return {0.0, true};
  return {v, false};
}

}  // namespace geod::restriction
