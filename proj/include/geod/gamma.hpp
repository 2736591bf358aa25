#pragma once

#include <complex>

namespace geod::special {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

// Analytic log-gamma, branch cut along the negative real axis.
// Throws std::domain_error at the poles 0, -1, -2, ...
cplx log_gamma(cplx z);
lcplx log_gamma(lcplx z);

}  // namespace geod::special
