#include "geod/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace geod::special {

namespace {

// B_{2k} / (2k (2k-1)) for k = 1..12
constexpr long double kStirling[] = {
    1.0L / 12.0L,
    -1.0L / 360.0L,
    1.0L / 1260.0L,
    -1.0L / 1680.0L,
    1.0L / 1188.0L,
    -691.0L / 360360.0L,
    1.0L / 156.0L,
    -3617.0L / 122400.0L,
    43867.0L / 244188.0L,
    -174611.0L / 125400.0L,
    77683.0L / 5796.0L,
    -236364091.0L / 1506960.0L,
};

constexpr long double kHalfLog2Pi = 0.918938533204672741780329736405617639861L;
constexpr long double kLargeModulus = 16.0L;

lcplx stirling(lcplx z) {
  lcplx w = 1.0L / z;
  lcplx w2 = w * w;
  lcplx series = 0.0L;
  for (int k = 11; k >= 0; --k) series = series * w2 + kStirling[k];
  return (z - 0.5L) * std::log(z) - z + kHalfLog2Pi + series * w;
}

}  // namespace

lcplx log_gamma(lcplx z) {
  if (z.imag() == 0.0L && z.real() <= 0.0L && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole at non-positive integer");
  if (std::abs(z) >= kLargeModulus && z.real() > 0.0L) return stirling(z);
  // Shift upward; principal logs of z+k never cross the cut when Im z != 0,
  // so the accumulated sum stays on the analytic branch.
  lcplx shift = 0.0L;
  while (!(std::abs(z) >= kLargeModulus && z.real() > 0.0L)) {
    shift += std::log(z);
    z += 1.0L;
  }
  return stirling(z) - shift;
}

cplx log_gamma(cplx z) {
  lcplx r = log_gamma(lcplx(z.real(), z.imag()));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

}  // namespace geod::special
