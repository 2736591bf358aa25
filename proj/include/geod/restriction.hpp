#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "geod/bessel.hpp"
#include "geod/geodesics.hpp"
#include "geod/lfunctions.hpp"

namespace geod::restriction {

using cplx = std::complex<double>;
using quadfield::i64;

// g on C_D: value at parameter x in [0,1) of the geodesic of class cls.
struct GeodesicFunction {
  std::function<cplx(int cls, double x)> eval;
  std::string smoothness = "smooth";
};

struct QuadratureConfig {
  int nodes = 64;             // initial node count per geodesic, power of 2
  int max_nodes = 1 << 16;
  double tol = 1e-12;         // successive doublings agree to this (relative to max(1, |value|))
  double y_floor = 0.5;       // Maass series refuses below this height
  bool reduce = true;         // map to the standard fundamental domain first
  double series_tol = 1e-16;  // stop the Fourier series once terms drop below this
  int jobs = 1;
};

struct MaassValue {
  double value = 0.0;
  double tail = 0.0;  // size of the first omitted term
  int terms = 0;
};

// Fourier expansion with the scaled Bessel kernel e^{pi t/2} K_{it}, so values
// are O(1); the scale is a constant factor.
MaassValue maass_value(const lfunc::MaassForm& f, cplx z, const QuadratureConfig& cfg = {});
cplx reduce_to_fundamental_domain(cplx z);

// f and geos are captured by reference and must outlive the result.
GeodesicFunction restrict_form(const lfunc::MaassForm& f, const std::vector<geodesics::ClosedGeodesic>& geos,
                               const QuadratureConfig& cfg = {});

struct PeriodIntegral {
  cplx sum;          // sum over classes of psi^{-1} times the period
  double I = 0.0;    // |sum|^2
  int nodes = 0;     // per geodesic, at convergence
  double change = 0.0;  // last doubling difference
  bool converged = false;
};

// log(eps^2) int_0^1 g(x) e(-n x) dx per class, combined with psi^{-1}.
PeriodIntegral geodesic_integral_I(const GeodesicFunction& g, const hecke::HeckeField& F,
                                   const hecke::ClassCharacter& psi, i64 n, const QuadratureConfig& cfg = {});
// Same in the y-chart, int_1^{eps^2} g(kappa^{-1} i y) y^{-pi i n / log eps} dy / y; g given on the upper half plane.
PeriodIntegral geodesic_integral_I_ychart(const std::function<cplx(cplx)>& g_on_H,
                                          const std::vector<geodesics::ClosedGeodesic>& geos,
                                          const hecke::HeckeField& F, const hecke::ClassCharacter& psi, i64 n,
                                          const QuadratureConfig& cfg = {});

double total_length(const hecke::HeckeField& F);  // h+ log eps^2

struct RestrictionNorm {
  double spectral = 0.0;    // |C|^{-1} sum I
  double normalized = 0.0;  // spectral / |C|; equals 1 for g = 1
  std::vector<double> partial;  // normalized partial sums in n_max
  double tail_last = 0.0;   // normalized contribution of |n| = n_max
  bool converged = true;
};

RestrictionNorm restriction_norm(const GeodesicFunction& g, const hecke::HeckeField& F, int n_max,
                                 const QuadratureConfig& cfg = {});

// int |g|^2 ds over C_D divided by |C|, comparable with RestrictionNorm::normalized.
double direct_norm(const GeodesicFunction& g, const hecke::HeckeField& F, const QuadratureConfig& cfg = {});

// <g1, g2> over C_D by direct quadrature, and |C| <Xi* g1, Xi* g2> with
// Xi* the pullback to R/Z x H+ carrying the probability measure.
cplx inner_product(const GeodesicFunction& g1, const GeodesicFunction& g2, const hecke::HeckeField& F,
                   const QuadratureConfig& cfg = {});
cplx inner_product_pullback(const GeodesicFunction& g1, const GeodesicFunction& g2, const hecke::HeckeField& F,
                            const QuadratureConfig& cfg = {});

struct WaldspurgerEntry {
  int psi_index = 0;
  i64 n = 0;
  double I = 0.0;
  double L_side = 0.0;  // completed ratio
  double L_error = 0.0;
  double ratio = 0.0;
  bool skipped = false;
  std::string reason;
};

struct WaldspurgerConfig {
  QuadratureConfig quad;
  lfunc::AFEConfig afe;
  double noise_factor = 10.0;  // skip when |L_side| < noise_factor * error
};

std::vector<WaldspurgerEntry> waldspurger_ratio(const lfunc::MaassForm& f, const hecke::HeckeField& F,
                                                const std::vector<i64>& ns, const WaldspurgerConfig& cfg = {},
                                                hecke::ThetaCache* cache = nullptr);

// (max - min) / mean over the non-skipped ratios of one psi
double relative_spread(const std::vector<WaldspurgerEntry>& rows, int psi_index = 0);

std::string waldspurger_csv(i64 D, const std::vector<WaldspurgerEntry>& rows);

}  // namespace geod::restriction
