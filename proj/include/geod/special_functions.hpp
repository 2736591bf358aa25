#pragma once

#include <complex>

#include "geod/gamma.hpp"
#include "geod/quadfield.hpp"

namespace geod::special {

struct GammaFactorParams {
  double t = 0.0;       // spectral parameter of f
  std::int64_t D = 5;
  double x = 0.0;       // theta frequency
  double log_eps = 0.0;  // log of the totally positive fundamental unit

  static GammaFactorParams make(double t, const quadfield::QuadField& K, double x);
  double r() const;  // pi x / log eps
};

lcplx log_gamma_s_f_x(lcplx s, const GammaFactorParams& p);
cplx gamma_s_f_x(cplx s, const GammaFactorParams& p);

// Gamma_R(2) Gamma_R(1+2it) Gamma_R(1-2it) = 1/(pi cosh(pi t)).
double gamma_adjoint_1(double t);
double log_gamma_adjoint_1(double t);

double analytic_conductor(double s, double t, double r);

// gamma(1/2, f, n) / gamma(1, Ad f), via logs.
double log_G_ratio(std::int64_t n, double t, double log_eps);
double G_ratio(std::int64_t n, double t, double log_eps);
double G_ratio(std::int64_t n, double t, std::int64_t D);

struct VConfig {
  enum class Sigma { automatic, fixed };
  Sigma mode = Sigma::automatic;
  double sigma = 3.0;  // used when mode == fixed; also the automatic upper clamp
  double Y = 0.0;      // truncation height, 0 = choose from e^{sigma^2 - Y^2} < 1e-16
  double step = 0.0;   // trapezoid step, 0 = choose from the pole distance
  double tol = 1e-12;

  static VConfig line_at_3() { return VConfig{Sigma::fixed, 3.0}; }
  static VConfig shifted(double eps) { return VConfig{Sigma::fixed, eps / 4}; }
};

enum class VRule { trapezoid, gauss_kronrod };

struct VResult {
  double value = 0.0;  // V is real for real y, x, t
  double quad_error = 0.0;
  double sigma = 0.0;
  double Y = 0.0;
  bool residue_added = false;
  int evaluations = 0;
};

// (2 pi i)^{-1} int_{(sigma)} gamma(1/2+u,f,x)/gamma(1/2,f,x) y^{-u} e^{u^2} du/u.
// A contour left of 0 adds the residue 1.
VResult V(double y, const GammaFactorParams& p, const VConfig& cfg = {}, VRule rule = VRule::trapezoid);

// y at which the integrand is balanced: exp of d/ds log gamma(s,f,x) at 1/2.
double V_balance_point(const GammaFactorParams& p);

struct VDerivativeReport {
  double derivative = 0.0;
  double bound = 0.0;  // y^{-eps/4} t^eps T^{-j}
  double ratio = 0.0;  // |derivative| / bound
  bool pass = false;   // ratio <= C
};

// Finite-difference j-th x-derivative of V; requires T/2 <= |c_D t - x| <= 2T.
VDerivativeReport V_derivative_check(double y, const GammaFactorParams& p, int j, double T, double C,
                                     double eps = 0.5, const VConfig& cfg = {});

}  // namespace geod::special
