#pragma once

namespace geod::restriction {

struct BesselValue {
  double value = 0.0;
  bool underflow = false;  // value is exactly 0 because K_{it}(x) < DBL_MIN
};

// K_{it}(x) for t >= 0, x > 0.
BesselValue bessel_K_imag(double t, double x);

// e^{pi t/2} K_{it}(x); stays O(1) in the oscillatory range x < t, which is
// the form used by the Maass expansions.
double bessel_K_imag_scaled(double t, double x);

// Plain trapezoid evaluation of the integral representation, exposed for
// cross-checking the series branch.
double bessel_K_imag_scaled_integral(double t, double x);

}  // namespace geod::restriction
