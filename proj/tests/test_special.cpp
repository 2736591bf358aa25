#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "geod/bessel.hpp"
#include "geod/special_functions.hpp"

using namespace geod;
using namespace geod::special;

// Oracle values below come from an independent 40-digit evaluation
// (mpmath loggamma, besselk and quad along Re u = 3).

TEST_SUITE("special_functions") {

TEST_CASE("log gamma") {
  CHECK(std::abs(log_gamma(cplx(0.5, 0)) - cplx(0.5723649429247001, 0)) < 1e-15);
  CHECK(std::abs(log_gamma(cplx(1, 0))) < 1e-16);
  const cplx v = log_gamma(cplx(3, 4));
  CHECK(std::abs(v - cplx(-1.7566267846037841, 4.7426644380346579)) < 1e-14);
  const lcplx w = log_gamma(lcplx(3, 4));
  CHECK(std::abs(w - lcplx(-1.756626784603784110530604L, 4.742664438034657928194889L)) < 1e-17L);
  CHECK_THROWS_AS(log_gamma(cplx(0, 0)), std::domain_error);
  CHECK_THROWS_AS(log_gamma(cplx(-2, 0)), std::domain_error);
}

TEST_CASE("gamma factor at s = 1/2") {
  const quadfield::QuadField K(5);
  const auto p = GammaFactorParams::make(10, K, 3);
  const cplx g = gamma_s_f_x(cplx(0.5, 0), p);
  CHECK(g.real() == doctest::Approx(2.2146945772378441e-13).epsilon(1e-12));
  CHECK(std::abs(g.imag()) < 1e-28);
  const auto q = GammaFactorParams::make(10, K, -3);
  CHECK(std::abs(gamma_s_f_x(cplx(0.5, 0), q) - g) < 1e-27);
  const cplx s(0.7, 2.5);
  CHECK(std::abs(gamma_s_f_x(std::conj(s), p) - std::conj(gamma_s_f_x(s, p))) < 1e-12 * std::abs(gamma_s_f_x(s, p)));
}

TEST_CASE("adjoint gamma factor") {
  CHECK(gamma_adjoint_1(0) == doctest::Approx(1 / M_PI).epsilon(1e-15));
  CHECK(gamma_adjoint_1(10) > 0);
  CHECK(std::isfinite(log_gamma_adjoint_1(1000)));
  double prev = gamma_adjoint_1(2);
  for (double t = 3; t <= 50; t += 1) {
    const double v = gamma_adjoint_1(t);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("analytic conductor") {
  CHECK(analytic_conductor(0.5, 10, 0) == 10201);
  CHECK(analytic_conductor(0.5, 7, 7) == doctest::Approx(1 + 4 * 49.0));
  CHECK(analytic_conductor(0.5, 7, 3) == analytic_conductor(0.5, 7, -3));
}

TEST_CASE("G ratio") {
  const double le = quadfield::QuadField(5).unit().log_eps_d;
  for (int n = 0; n <= 40; n += 2) {
    CHECK(G_ratio(n, 13.78, le) == doctest::Approx(G_ratio(-n, 13.78, le)).epsilon(1e-14));
    CHECK(G_ratio(n, 13.78, le) >= 0);
  }
  CHECK(std::isfinite(log_G_ratio(1000000, 1000, le)));
  CHECK(G_ratio(4, 10.0, static_cast<std::int64_t>(5)) == doctest::Approx(G_ratio(4, 10.0, le)).epsilon(1e-15));
}

TEST_CASE("V against a quadrature oracle") {
  const quadfield::QuadField K(5);
  const auto p = GammaFactorParams::make(10, K, 3);
  struct Pt {
    double y, v;
  };
  for (const Pt& pt : {Pt{1e-6, 0.99921092990323299}, Pt{1, 0.071884320180213631}, Pt{10, 0.0039150049424699886},
                       Pt{100, 3.6231119945336063e-05}, Pt{1000, 4.3761521205034084e-08}}) {
    CAPTURE(pt.y);
    const auto r = V(pt.y, p);
    CHECK(std::abs(r.value - pt.v) < 1e-10);
    CHECK(r.quad_error < 1e-10);
    CHECK(std::abs(V(pt.y, p, {}, VRule::gauss_kronrod).value - pt.v) < 1e-9);
  }
}

TEST_CASE("V derivative check validates its window") {
  const quadfield::QuadField K(5);
  const auto p = GammaFactorParams::make(40, K, 0);  // |c_D t - x| is about 12.3
  CHECK_THROWS(V_derivative_check(1, p, 1, 1, 1));
  const auto r = V_derivative_check(1, p, 0, 8, 1e6);
  CHECK(std::isfinite(r.ratio));
}

TEST_CASE("Bessel K of imaginary order") {
  CHECK(restriction::bessel_K_imag(0, 1).value == doctest::Approx(0.42102443824070833).epsilon(1e-14));
  struct Pt {
    double t, x, scaled;
  };
  for (const Pt& pt : {Pt{5, 2, -0.89215616281185402}, Pt{10, 3, -0.42308698672505583},
                       Pt{13.5, 20, 0.0091702408888381351}}) {
    CAPTURE(pt.t);
    CHECK(std::abs(restriction::bessel_K_imag_scaled(pt.t, pt.x) - pt.scaled) < 1e-13);
  }
  CHECK(restriction::bessel_K_imag(10, 3).value == doctest::Approx(-6.3759939798738607e-08).epsilon(1e-10));
  CHECK(restriction::bessel_K_imag(0, 800).underflow);
}

}  // TEST_SUITE
