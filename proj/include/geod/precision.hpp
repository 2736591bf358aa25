#pragma once

#include <boost/multiprecision/mpfr.hpp>

namespace geod {

using Real = boost::multiprecision::mpfr_float;

// Decimal digits used for every Real created afterwards. Process-wide;
// set it before spawning workers.
void set_working_precision(unsigned digits10);
unsigned working_precision();

Real real_pi();

}  // namespace geod
