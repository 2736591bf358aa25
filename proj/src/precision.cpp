#include "geod/precision.hpp"

#include <stdexcept>

namespace geod {

namespace {

const bool kDefaultPrecisionSet = [] {
  Real::default_precision(50);
  return true;
}();

}  // namespace

void set_working_precision(unsigned digits10) {
  if (digits10 < 20) throw std::invalid_argument("working precision must be at least 20 digits");
  Real::default_precision(digits10);
}

unsigned working_precision() {
  (void)kDefaultPrecisionSet;
  return Real::default_precision();
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

}  // namespace geod
