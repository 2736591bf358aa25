#include "geod/special_functions.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace geod::special {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr double kTruncLog = 36.8413614879047;  // 16 log 10

}  // namespace

GammaFactorParams GammaFactorParams::make(double t, const quadfield::QuadField& K, double x) {
  return GammaFactorParams{t, K.D(), x, K.unit().log_eps_d};
}

double GammaFactorParams::r() const {
  if (!(log_eps > 0)) throw std::invalid_argument("GammaFactorParams: log_eps not set");
  return M_PI * x / log_eps;
}

lcplx log_gamma_s_f_x(lcplx s, const GammaFactorParams& p) {
  const long double r = p.r();
  const long double t = p.t;
  lcplx out = -2.0L * s * std::log(kPiL);
  for (long double tr : {t + r, t - r}) {
    const lcplx a = lcplx(0.0L, tr);
    out += log_gamma((s + a) / 2.0L) + log_gamma((s - a) / 2.0L);
  }
  return out;
}

cplx gamma_s_f_x(cplx s, const GammaFactorParams& p) {
  lcplx v = std::exp(log_gamma_s_f_x(lcplx(s.real(), s.imag()), p));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double log_gamma_adjoint_1(double t) {
  const double a = M_PI * std::abs(t);
  // log cosh a without overflow
  const double log_cosh = a + std::log1p(std::exp(-2 * a)) - M_LN2;
  return -std::log(M_PI) - log_cosh;
}

double gamma_adjoint_1(double t) { return std::exp(log_gamma_adjoint_1(t)); }

double analytic_conductor(double /*s*/, double t, double r) {
  return (1 + (t + r) * (t + r)) * (1 + (t - r) * (t - r));
}

double log_G_ratio(std::int64_t n, double t, double log_eps) {
  GammaFactorParams p{t, 0, static_cast<double>(n), log_eps};
  const double lg = static_cast<double>(log_gamma_s_f_x(lcplx(0.5L, 0.0L), p).real());
  return lg - log_gamma_adjoint_1(t);
}

double G_ratio(std::int64_t n, double t, double log_eps) { return std::exp(log_G_ratio(n, t, log_eps)); }

double G_ratio(std::int64_t n, double t, std::int64_t D) {
  quadfield::QuadField K(D);
  return G_ratio(n, t, K.unit().log_eps_d);
}

double V_balance_point(const GammaFactorParams& p) {
  const long double h = 1e-4L;
  const long double up = log_gamma_s_f_x(lcplx(0.5L + h, 0.0L), p).real();
  const long double dn = log_gamma_s_f_x(lcplx(0.5L - h, 0.0L), p).real();
  return static_cast<double>(std::exp((up - dn) / (2 * h)));
}

namespace {

struct Integrand {
  const GammaFactorParams& p;
  long double sigma;
  long double log_y;
  long double base;  // log gamma(1/2, f, x)
  mutable int count = 0;

  double operator()(double v) const {
    ++count;
    const lcplx u(sigma, v);
    const lcplx e = log_gamma_s_f_x(0.5L + u, p) - base - u * log_y + u * u;
    return static_cast<double>((std::exp(e) / u).real());
  }
};

}  // namespace

VResult V(double y, const GammaFactorParams& p, const VConfig& cfg, VRule rule) {
  if (!(y > 0)) throw std::invalid_argument("V: y must be positive");
  VResult res;
  double sigma = cfg.sigma;
  if (cfg.mode == VConfig::Sigma::automatic) {
    const double s_star = 0.5 * std::log(y / V_balance_point(p));
    sigma = s_star >= 0 ? std::clamp(s_star, 0.5, std::max(0.5, cfg.sigma)) : -0.25;
  }
  if (sigma == 0.0 || sigma <= -0.5) throw std::invalid_argument("V: contour hits a pole (sigma must be > -1/2, != 0)");
  res.sigma = sigma;
  res.residue_added = sigma < 0;

  Integrand f{p, sigma, std::log(static_cast<long double>(y)), log_gamma_s_f_x(lcplx(0.5L, 0.0L), p).real()};

  double Y = cfg.Y > 0 ? cfg.Y : std::sqrt(sigma * sigma + kTruncLog + 1.0);
  const double d = std::min(std::abs(sigma), sigma + 0.5);
  double h = cfg.step > 0 ? cfg.step : std::min(0.25, 2 * M_PI * d / 40);

  double integral = 0.0;
  for (int grow = 0;; ++grow) {
    if (rule == VRule::trapezoid) {
      // trapezoid on the even extension, halving until stable
      double hh = h;
      long double sum = 0.5L * f(0.0);
      for (double v = hh; v <= Y; v += hh) sum += f(v);
      long double prev = hh * sum;
      res.quad_error = INFINITY;
      for (int k = 0; k < 10; ++k) {
        long double mid = 0;
        for (double v = hh / 2; v <= Y; v += hh) mid += f(v);
        sum += mid;
        hh /= 2;
        long double cur = hh * sum;
        res.quad_error = static_cast<double>(std::abs(cur - prev)) / M_PI;
        prev = cur;
        if (res.quad_error < cfg.tol * 1e-2 * std::max(1.0L, std::abs(cur) / kPiL) && k >= 1) break;
      }
      integral = static_cast<double>(prev);
    } else {
      double err = 0;
      integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, Y, 12, std::max(cfg.tol * 0.1, 1e-14), &err);
      res.quad_error = err / M_PI;
    }
    const double tail = std::abs(f(Y));
    if (cfg.Y > 0 || tail * 4 < 1e-16 * std::max(1.0, std::abs(integral)) || grow >= 8) break;
    Y *= 1.25;
  }
  res.Y = Y;
  res.value = integral / M_PI + (res.residue_added ? 1.0 : 0.0);
  res.evaluations = f.count;
  return res;
}

VDerivativeReport V_derivative_check(double y, const GammaFactorParams& p, int j, double T, double C, double eps,
                                     const VConfig& cfg) {
  if (j < 0 || j > 4) throw std::invalid_argument("V_derivative_check: j must be in 0..4");
  if (!(T >= 1)) throw std::invalid_argument("V_derivative_check: T must be >= 1");
  const double cD = p.log_eps / M_PI;
  const double dist = std::abs(cD * p.t - p.x);
  if (dist < T / 2 || dist > 2 * T) throw std::invalid_argument("V_derivative_check: need T/2 <= |c_D t - x| <= 2T");

  auto Vx = [&](double x) {
    GammaFactorParams q = p;
    q.x = x;
    return V(y, q, cfg).value;
  };
  // binomial central difference of order j, then one Richardson step
  auto diff = [&](double h) {
    if (j == 0) return Vx(p.x);
    double s = 0;
    double binom = 1;
    for (int k = 0; k <= j; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      s += sign * binom * Vx(p.x + (0.5 * j - k) * h);
      binom = binom * (j - k) / (k + 1);
    }
    return s / std::pow(h, j);
  };
  const double h = T / 8;
  const double d1 = diff(h);
  const double d2 = diff(h / 2);
  VDerivativeReport rep;
  rep.derivative = j == 0 ? d1 : (4 * d2 - d1) / 3;
  if (!std::isfinite(rep.derivative)) throw std::runtime_error("V_derivative_check: step underflow");
  rep.bound = std::pow(y, -eps / 4) * std::pow(p.t, eps) * std::pow(T, -j);
  rep.ratio = std::abs(rep.derivative) / rep.bound;
  rep.pass = rep.ratio <= C;
  return rep;
}

}  // namespace geod::special
